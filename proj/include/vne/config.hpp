#ifndef VNE_CONFIG_HPP_
#define VNE_CONFIG_HPP_

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "vne/result.hpp"
#include "vne/simulator.hpp"

namespace vne {

// Section -> key -> value, from a small INI dialect:
//   [section]
//   key = value   ; '#' and ';' start comments
using IniData = std::map<std::string, std::map<std::string, std::string>>;

namespace detail {

inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

inline Result<IniData> parse_ini(std::istream& is) {
    IniData data;
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                return Rejection{Rejection::Kind::InvalidSpec, lineno, "unterminated section"};
            section = detail::trim(line.substr(1, line.size() - 2));
            data[section];
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            return Rejection{Rejection::Kind::InvalidSpec, lineno, "missing '=' on line " +
                                                                       std::to_string(lineno)};
        data[section][detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
    }
    return data;
}

inline Result<IniData> parse_ini_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) return Rejection{Rejection::Kind::InvalidSpec, -1, "cannot open " + path};
    return parse_ini(f);
}

namespace detail {

struct IniReader {
    const IniData& data;
    std::string error;

    std::string get(const std::string& sec, const std::string& key, const std::string& dflt) {
        auto s = data.find(sec);
        if (s == data.end()) return dflt;
        auto k = s->second.find(key);
        return k == s->second.end() ? dflt : k->second;
    }
    long long get_int(const std::string& sec, const std::string& key, long long dflt) {
        std::string v = get(sec, key, "");
        if (v.empty()) return dflt;
        try {
            size_t pos = 0;
            long long x = std::stoll(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (...) {
            if (error.empty()) error = sec + "." + key + ": not an integer: " + v;
            return dflt;
        }
    }
    double get_double(const std::string& sec, const std::string& key, double dflt) {
        std::string v = get(sec, key, "");
        if (v.empty()) return dflt;
        try {
            size_t pos = 0;
            double x = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (...) {
            if (error.empty()) error = sec + "." + key + ": not a number: " + v;
            return dflt;
        }
    }
    bool get_bool(const std::string& sec, const std::string& key, bool dflt) {
        std::string v = get(sec, key, "");
        if (v.empty()) return dflt;
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        if (error.empty()) error = sec + "." + key + ": not a boolean: " + v;
        return dflt;
    }
};

// edges value: "0-1:250,1-2:200" (capacity optional)
inline bool parse_edges(const std::string& v, std::vector<std::tuple<int, int, int>>& out) {
    std::istringstream is(v);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        int a, b, cap = 0;
        if (std::sscanf(tok.c_str(), "%d-%d:%d", &a, &b, &cap) >= 2)
            out.emplace_back(a, b, cap);
        else
            return false;
    }
    return true;
}

inline bool parse_int_list(const std::string& v, std::vector<int>& out) {
    std::istringstream is(v);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            out.push_back(std::stoi(tok));
        } catch (...) {
            return false;
        }
    }
    return true;
}

}  // namespace detail

inline Result<SimConfig> config_from_ini(const IniData& ini) {
    detail::IniReader r{ini, {}};
    SimConfig cfg;

    std::string gen = r.get("topology", "generator", "waxman");
    if (gen == "waxman")
        cfg.topology.generator = TopologySpec::Generator::Waxman;
    else if (gen == "dumbbell")
        cfg.topology.generator = TopologySpec::Generator::Dumbbell;
    else if (gen == "explicit")
        cfg.topology.generator = TopologySpec::Generator::Explicit;
    else
        return Rejection{Rejection::Kind::InvalidSpec, -1, "unknown generator " + gen};
    cfg.topology.node_count = static_cast<int>(r.get_int("topology", "nodes", 14));
    cfg.topology.capacity_min = static_cast<int>(r.get_int("topology", "capacity_min", 100));
    cfg.topology.capacity_max = static_cast<int>(r.get_int("topology", "capacity_max", 250));
    cfg.topology.waxman_alpha = r.get_double("topology", "waxman_alpha", 0.5);
    cfg.topology.waxman_beta = r.get_double("topology", "waxman_beta", 0.5);
    if (!detail::parse_edges(r.get("topology", "edges", ""), cfg.topology.edges))
        return Rejection{Rejection::Kind::InvalidSpec, -1, "bad topology.edges"};
    if (!detail::parse_int_list(r.get("topology", "memories", ""), cfg.topology.memories))
        return Rejection{Rejection::Kind::InvalidSpec, -1, "bad topology.memories"};

    cfg.workload.count = static_cast<int>(r.get_int("workload", "count", 1500));
    cfg.workload.arrival_rate = r.get_double("workload", "arrival_rate", 0.05);
    cfg.workload.mean_lifetime = r.get_double("workload", "mean_lifetime", 500.0);
    cfg.workload.node_min = static_cast<int>(r.get_int("workload", "node_min", 2));
    cfg.workload.node_max = static_cast<int>(r.get_int("workload", "node_max", 5));
    cfg.workload.link_prob = r.get_double("workload", "link_prob", 0.5);
    cfg.workload.demand_min = static_cast<int>(r.get_int("workload", "demand_min", 10));
    cfg.workload.demand_max = static_cast<int>(r.get_int("workload", "demand_max", 50));
    cfg.workload.rule_demand = static_cast<int>(r.get_int("workload", "rule_demand", 1));

    std::string strat = r.get("sim", "strategy", "proposed");
    auto sk = parse_strategy(strat);
    if (!sk) return Rejection{Rejection::Kind::InvalidSpec, -1, "unknown strategy " + strat};
    cfg.strategy = *sk;
    cfg.batch_n = static_cast<int>(r.get_int("sim", "batch_n", 10));
    cfg.remap_budget = static_cast<int>(r.get_int("sim", "remap_budget", -1));
    cfg.batch_timeout = r.get_int("sim", "batch_timeout", 0);
    cfg.t_write = r.get_double("sim", "t_write", 1.0);
    cfg.checkpoint_every = static_cast<int>(r.get_int("sim", "checkpoint_every", 100));
    cfg.sspsm_window = r.get_int("sim", "sspsm_window", 50);
    cfg.sspsm_migration = r.get_bool("sim", "sspsm_migration", true);
    cfg.split_k_max = static_cast<int>(r.get_int("sim", "split_k_max", 2));
    cfg.seed = static_cast<uint64_t>(r.get_int("sim", "seed", 1));

    if (!r.error.empty()) return Rejection{Rejection::Kind::InvalidSpec, -1, r.error};
    if (cfg.batch_n < 1) return Rejection{Rejection::Kind::InvalidSpec, -1, "batch_n must be >= 1"};
    if (cfg.checkpoint_every < 1)
        return Rejection{Rejection::Kind::InvalidSpec, -1, "checkpoint_every must be >= 1"};
    return cfg;
}

inline Result<SimConfig> load_config(const std::string& path) {
    auto ini = parse_ini_file(path);
    if (!ini) return ini.rejection();
    return config_from_ini(*ini);
}

// Single override point shared by CLI flags and sweep axes.
inline bool apply_override(SimConfig& cfg, const std::string& key, const std::string& value) {
    try {
        if (key == "strategy") {
            auto sk = parse_strategy(value);
            if (!sk) return false;
            cfg.strategy = *sk;
        } else if (key == "requests" || key == "count") {
            cfg.workload.count = std::stoi(value);
        } else if (key == "batch_n") {
            cfg.batch_n = std::stoi(value);
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
        } else if (key == "remap_budget") {
            cfg.remap_budget = std::stoi(value);
        } else if (key == "nodes") {
            cfg.topology.node_count = std::stoi(value);
        } else if (key == "arrival_rate") {
            cfg.workload.arrival_rate = std::stod(value);
        } else if (key == "mean_lifetime") {
            cfg.workload.mean_lifetime = std::stod(value);
        } else if (key == "t_write") {
            cfg.t_write = std::stod(value);
        } else if (key == "batch_timeout") {
            cfg.batch_timeout = std::stoll(value);
        } else if (key == "sspsm_window") {
            cfg.sspsm_window = std::stoll(value);
        } else {
            return false;
        }
    } catch (...) {
        return false;
    }
    return true;
}

}  // namespace vne

#endif
