#ifndef VNE_EXPERIMENT_HPP_
#define VNE_EXPERIMENT_HPP_

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "vne/config.hpp"
#include "vne/metrics.hpp"
#include "vne/simulator.hpp"

namespace vne {

struct SweepSpec {
    std::string base_config;
    std::vector<std::pair<std::string, std::vector<std::string>>> axes;
    std::string out_dir = "results";
};

inline Result<SweepSpec> parse_sweep(const std::string& path) {
    auto ini = parse_ini_file(path);
    if (!ini) return ini.rejection();
    SweepSpec spec;
    detail::IniReader r{*ini, {}};
    spec.base_config = r.get("sweep", "base", "");
    spec.out_dir = r.get("sweep", "out", "results");
    if (spec.base_config.empty())
        return Rejection{Rejection::Kind::InvalidSpec, -1, "sweep.base is required"};
    auto axes_it = ini->find("axes");
    if (axes_it != ini->end()) {
        SimConfig probe;
        for (const auto& [key, value] : axes_it->second) {
            std::vector<std::string> values;
            std::istringstream is(value);
            std::string tok;
            while (std::getline(is, tok, ',')) {
                tok = detail::trim(tok);
                if (!tok.empty()) values.push_back(tok);
            }
            if (values.empty())
                return Rejection{Rejection::Kind::InvalidSpec, -1, "empty axis " + key};
            for (const auto& v : values)
                if (!apply_override(probe, key, v))
                    return Rejection{Rejection::Kind::InvalidSpec, -1,
                                     "invalid axis value " + key + "=" + v};
            spec.axes.emplace_back(key, values);
        }
    }
    return spec;
}

namespace detail {

inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << content;
    }
    std::filesystem::rename(tmp, path);
}

inline double stddev_of(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double m = mean_of(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size()));
}

}  // namespace detail

// Final-row metrics of one run, used for aggregation across seeds.
struct RunPoint {
    std::string label;       // non-seed coordinates
    uint64_t seed = 0;
    std::string strategy;
    int batch_n = 1;
    long long arrived = 0, accepted = 0;
    double acceptance = 1.0, link_util = 0.0, switch_util = 0.0;
    double cost = 0.0, latency = 0.0;
    long long write_txns = 0;
};

inline RunPoint run_point(const RunSummary& s, const std::string& label) {
    RunPoint p;
    p.label = label;
    p.seed = s.seed;
    p.strategy = s.strategy;
    p.batch_n = s.batch_n;
    if (!s.series.empty()) {
        const auto& last = s.series.back();
        p.arrived = last.arrived;
        p.accepted = last.accepted;
        p.link_util = last.avg_link_utilization;
        p.switch_util = last.avg_switch_utilization;
    }
    p.acceptance = s.final_acceptance;
    p.cost = s.final_cost;
    p.latency = s.final_latency;
    p.write_txns = s.total_write_transactions;
    return p;
}

// Cross-product of the axes over the base config. One CSV per run plus
// aggregate.csv with per-point means over seeds. Returns a process exit
// code: 0 ok, 2 config error, 3 IO error.
inline int run_sweep(const SweepSpec& spec, std::ostream& log, const std::string& out_override = "") {
    auto base = load_config(spec.base_config);
    if (!base) {
        log << "config error: " << base.rejection().detail << '\n';
        return 2;
    }
    std::string out_dir = out_override.empty() ? spec.out_dir : out_override;

    std::vector<size_t> index(spec.axes.size(), 0);
    size_t total = 1;
    for (const auto& [key, values] : spec.axes) {
        (void)key;
        total *= values.size();
    }
    log << "sweep: " << total << " run(s) -> " << out_dir << '\n';

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        log << "io error: cannot create " << out_dir << '\n';
        return 3;
    }

    std::vector<RunPoint> points;
    try {
        for (size_t run_idx = 0; run_idx < total; ++run_idx) {
            SimConfig cfg = *base;
            std::string label, name;
            for (size_t a = 0; a < spec.axes.size(); ++a) {
                const auto& [key, values] = spec.axes[a];
                const std::string& v = values[index[a]];
                if (!apply_override(cfg, key, v)) {
                    log << "config error: bad axis value " << key << "=" << v << '\n';
                    return 2;
                }
                std::string part = key + "=" + v;
                name += (name.empty() ? "" : "_") + part;
                if (key != "seed") label += (label.empty() ? "" : "_") + part;
            }
            if (name.empty()) name = "run";
            RunSummary summary = run(cfg);
            std::ostringstream csv;
            write_csv(summary, csv);
            detail::write_file_atomic(std::filesystem::path(out_dir) / (name + ".csv"),
                                      csv.str());
            points.push_back(run_point(summary, label));

            for (size_t a = spec.axes.size(); a-- > 0;) {
                if (++index[a] < spec.axes[a].second.size()) break;
                index[a] = 0;
            }
        }

        // mean over seeds per non-seed point
        std::map<std::string, std::vector<RunPoint>> groups;
        for (const auto& p : points) groups[p.label].push_back(p);
        std::ostringstream agg;
        agg << "point,strategy,n,seed_count,arrived,accepted,acceptance_rate,link_util,"
               "switch_util,cost,latency,write_txns,acceptance_rate_stddev,link_util_stddev,"
               "switch_util_stddev,cost_stddev,latency_stddev\n";
        for (const auto& [label, group] : groups) {
            auto col = [&](auto getter) {
                std::vector<double> xs;
                for (const auto& p : group) xs.push_back(getter(p));
                return xs;
            };
            auto acc = col([](const RunPoint& p) { return p.acceptance; });
            auto lu = col([](const RunPoint& p) { return p.link_util; });
            auto su = col([](const RunPoint& p) { return p.switch_util; });
            auto cost = col([](const RunPoint& p) { return p.cost; });
            auto lat = col([](const RunPoint& p) { return p.latency; });
            auto arr = col([](const RunPoint& p) { return static_cast<double>(p.arrived); });
            auto accn = col([](const RunPoint& p) { return static_cast<double>(p.accepted); });
            auto wt = col([](const RunPoint& p) { return static_cast<double>(p.write_txns); });
            agg << (label.empty() ? "base" : label) << ',' << group.front().strategy << ','
                << group.front().batch_n << ',' << group.size() << ',' << std::fixed
                << std::setprecision(6) << mean_of(arr) << ',' << mean_of(accn) << ','
                << mean_of(acc) << ',' << mean_of(lu) << ',' << mean_of(su) << ','
                << mean_of(cost) << ',' << mean_of(lat) << ',' << mean_of(wt) << ','
                << detail::stddev_of(acc) << ',' << detail::stddev_of(lu) << ','
                << detail::stddev_of(su) << ',' << detail::stddev_of(cost) << ','
                << detail::stddev_of(lat) << '\n';
            agg.unsetf(std::ios::fixed);
        }
        detail::write_file_atomic(std::filesystem::path(out_dir) / "aggregate.csv", agg.str());
    } catch (const std::exception& e) {
        log << "io error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

}  // namespace vne

#endif
