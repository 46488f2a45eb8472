// Experiment driver: single runs and strategy/parameter sweeps over the
// virtual-network embedding simulator.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vne/config.hpp"
#include "vne/experiment.hpp"
#include "vne/simulator.hpp"

int main(int argc, char** argv) {
    CLI::App app{"virtual-network embedding simulator"};

    std::string config_path, sweep_path, out_dir;
    std::string strategy;
    long long seed = -1, requests = -1, batch_n = -1;
    bool trace = false, weights_dump = false;

    app.add_option("--config", config_path, "run config (INI); built-in defaults when omitted");
    app.add_option("--sweep", sweep_path, "sweep spec (INI)");
    app.add_option("--out", out_dir, "output directory (default: stdout for single runs)");
    app.add_option("--seed", seed, "override sim.seed");
    app.add_option("--strategy", strategy, "override sim.strategy (proposed|sdnvn|sspsm)");
    app.add_option("--requests", requests, "override workload.count");
    app.add_option("--batch-n", batch_n, "override sim.batch_n");
    app.add_flag("--trace", trace, "log events and write transactions to stderr");
    app.add_flag("--weights-dump", weights_dump, "dump link weight tables per trigger to stderr");

    CLI11_PARSE(app, argc, argv);

    if (!sweep_path.empty()) {
        auto spec = vne::parse_sweep(sweep_path);
        if (!spec) {
            std::cerr << "config error: " << spec.rejection().detail << '\n';
            return 2;
        }
        return vne::run_sweep(*spec, std::cerr, out_dir);
    }

    vne::Result<vne::SimConfig> cfg{vne::SimConfig{}};
    if (!config_path.empty()) {
        cfg = vne::load_config(config_path);
        if (!cfg) {
            std::cerr << "config error: " << cfg.rejection().detail << '\n';
            return 2;
        }
    }
    if (seed >= 0) cfg->seed = static_cast<uint64_t>(seed);
    if (requests >= 0) cfg->workload.count = static_cast<int>(requests);
    if (batch_n >= 0) cfg->batch_n = static_cast<int>(batch_n);
    if (!strategy.empty()) {
        auto sk = vne::parse_strategy(strategy);
        if (!sk) {
            std::cerr << "config error: unknown strategy " << strategy << '\n';
            return 2;
        }
        cfg->strategy = *sk;
    }
    if (trace) cfg->trace = &std::cerr;
    if (weights_dump) cfg->weights_dump = &std::cerr;

    vne::RunSummary summary;
    try {
        summary = vne::run(*cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    std::ostringstream csv;
    vne::write_csv(summary, csv);
    if (out_dir.empty()) {
        std::cout << csv.str();
        return 0;
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "io error: cannot create " << out_dir << '\n';
        return 3;
    }
    std::ostringstream name;
    name << summary.strategy << "_n" << summary.batch_n << "_seed" << summary.seed << ".csv";
    std::ofstream f(std::filesystem::path(out_dir) / name.str(), std::ios::binary);
    if (!f) {
        std::cerr << "io error: cannot write output file\n";
        return 3;
    }
    f << csv.str();
    return 0;
}
