#ifndef VNE_LINK_WEIGHTS_HPP_
#define VNE_LINK_WEIGHTS_HPP_

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "vne/embedder.hpp"
#include "vne/substrate.hpp"

namespace vne {

struct LinkWeightRecord {
    int request_id = -1;
    int virtual_link_id = -1;
    long long used = 0;         // R: bandwidth on the hosting path + rule units
    long long unallocated = 0;  // A: free bandwidth + free memory along the path
    long long weight = 0;       // W = R - A, may be negative
};

// R: per member path, the routed share on every path link plus one rule
// unit per on-path switch.
inline long long compute_used_resources(const Embedding& emb, int vlink) {
    auto it = emb.link_map.find(vlink);
    if (it == emb.link_map.end() || it->second.empty())
        throw std::logic_error("virtual link not mapped");
    long long r = 0;
    for (const auto& pa : it->second)
        r += static_cast<long long>(pa.share) * pa.hops() + static_cast<long long>(pa.switches.size());
    return r;
}

inline long long path_used_resources(const std::vector<int>& path, int demand) {
    return static_cast<long long>(demand) * (static_cast<long long>(path.size()) - 1) +
           static_cast<long long>(path.size());
}

// A: current residual bandwidth of every path link plus current residual
// memory of every on-path switch, all tenants included.
inline long long compute_unallocated_resources(const SubstrateNetwork& net, const Embedding& emb,
                                               int vlink) {
    auto it = emb.link_map.find(vlink);
    if (it == emb.link_map.end() || it->second.empty())
        throw std::logic_error("virtual link not mapped");
    long long a = 0;
    for (const auto& pa : it->second) {
        for (size_t i = 0; i + 1 < pa.switches.size(); ++i)
            a += net.residual_bandwidth(net.link_between(pa.switches[i], pa.switches[i + 1]));
        for (int sw : pa.switches) a += net.residual_memory(sw);
    }
    return a;
}

inline long long compute_weight(long long used, long long unallocated) {
    return used - unallocated;
}

// One record per live virtual link, weight descending; ties by
// (request id, virtual link id) ascending.
inline std::vector<LinkWeightRecord> rank_mapped_links(const SubstrateNetwork& net,
                                                       const std::map<int, Embedding>& live) {
    std::vector<LinkWeightRecord> out;
    for (const auto& [rid, emb] : live) {
        if (!emb.live) continue;
        for (const auto& [vlink, paths] : emb.link_map) {
            (void)paths;
            LinkWeightRecord rec;
            rec.request_id = rid;
            rec.virtual_link_id = vlink;
            rec.used = compute_used_resources(emb, vlink);
            rec.unallocated = compute_unallocated_resources(net, emb, vlink);
            rec.weight = compute_weight(rec.used, rec.unallocated);
            out.push_back(rec);
        }
    }
    std::sort(out.begin(), out.end(), [](const LinkWeightRecord& x, const LinkWeightRecord& y) {
        if (x.weight != y.weight) return x.weight > y.weight;
        if (x.request_id != y.request_id) return x.request_id < y.request_id;
        return x.virtual_link_id < y.virtual_link_id;
    });
    return out;
}

}  // namespace vne

#endif
