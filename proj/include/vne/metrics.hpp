#ifndef VNE_METRICS_HPP_
#define VNE_METRICS_HPP_

#include <cstdint>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "vne/substrate.hpp"

namespace vne {

struct MetricsSnapshot {
    Time time = 0;
    long long arrived = 0;
    long long accepted = 0;
    double avg_link_utilization = 0.0;
    double avg_switch_utilization = 0.0;
    long long cumulative_used = 0;   // running sum of per-mapping used resources
    long long mapping_count = 0;     // every performed mapping event, remaps included
    long long write_transactions = 0;
    double mean_latency = 0.0;
};

struct RunSummary {
    std::string strategy;
    int batch_n = 1;
    uint64_t seed = 0;
    std::vector<MetricsSnapshot> series;
    double final_acceptance = 1.0;
    double final_cost = 0.0;
    double final_latency = 0.0;
    long long total_write_transactions = 0;
    long long remap_count = 0;  // adopted remappings (and SSPSM migrations)
    // verification counters, populated when the matching checks are enabled
    long long conservation_violations = 0;
    long long early_write_violations = 0;
    long long remap_violations = 0;
};

inline double acceptance_rate(long long accepted, long long arrived) {
    if (arrived < accepted || accepted < 0) throw std::invalid_argument("bad counts");
    return arrived == 0 ? 1.0 : static_cast<double>(accepted) / static_cast<double>(arrived);
}

// (mean link allocated/capacity, mean switch used/capacity)
inline std::pair<double, double> snapshot_utilization(const SubstrateNetwork& net) {
    double link = 0.0, sw = 0.0;
    for (int i = 0; i < net.link_count(); ++i) {
        const auto& l = net.link_at(i);
        if (l.bandwidth_capacity > 0)
            link += static_cast<double>(l.bandwidth_allocated) / l.bandwidth_capacity;
    }
    for (int i = 0; i < net.switch_count(); ++i) {
        const auto& s = net.switch_at(i);
        if (s.memory_capacity > 0) sw += static_cast<double>(s.memory_used) / s.memory_capacity;
    }
    if (net.link_count() > 0) link /= net.link_count();
    if (net.switch_count() > 0) sw /= net.switch_count();
    return {link, sw};
}

inline double compute_cost(long long cumulative_used, long long mapping_count) {
    if (mapping_count < 0) throw std::invalid_argument("negative mapping count");
    return mapping_count == 0
               ? 0.0
               : static_cast<double>(cumulative_used) / static_cast<double>(mapping_count);
}

inline double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Fixed CSV schema shared by every run.
inline const char* csv_header() {
    return "strategy,n,seed,arrived,accepted,acceptance_rate,link_util,switch_util,cost,latency,"
           "write_txns";
}

inline void write_csv(const RunSummary& s, std::ostream& os) {
    os << csv_header() << '\n';
    for (const auto& snap : s.series) {
        os << s.strategy << ',' << s.batch_n << ',' << s.seed << ',' << snap.arrived << ','
           << snap.accepted << ',' << std::fixed << std::setprecision(6)
           << acceptance_rate(snap.accepted, snap.arrived) << ',' << snap.avg_link_utilization
           << ',' << snap.avg_switch_utilization << ','
           << compute_cost(snap.cumulative_used, snap.mapping_count) << ',' << snap.mean_latency
           << ',' << snap.write_transactions << '\n';
        os.unsetf(std::ios::fixed);
    }
}

}  // namespace vne

#endif
