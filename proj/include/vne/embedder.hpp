#ifndef VNE_EMBEDDER_HPP_
#define VNE_EMBEDDER_HPP_

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "vne/result.hpp"
#include "vne/substrate.hpp"
#include "vne/workload.hpp"

namespace vne {

enum class EmbedVariant { Unsplittable, Splittable };

// Tentative debits accumulated while a single request is being mapped,
// before its allocations are applied.
struct DebitOverlay {
    std::map<int, int> link_extra;
    std::map<int, int> switch_extra;

    int residual_bandwidth(const SubstrateNetwork& net, int link) const {
        auto it = link_extra.find(link);
        return net.residual_bandwidth(link) - (it == link_extra.end() ? 0 : it->second);
    }
    int residual_memory(const SubstrateNetwork& net, int sw) const {
        auto it = switch_extra.find(sw);
        return net.residual_memory(sw) - (it == switch_extra.end() ? 0 : it->second);
    }
};

struct NodeMapping {
    std::map<int, int> pairs;  // virtual node id -> substrate switch id
};

struct PathAssignment {
    std::vector<int> switches;  // ordered switch sequence, front=src back=dst
    int share = 0;              // bandwidth routed over this path

    int hops() const { return static_cast<int>(switches.size()) - 1; }
};

struct Embedding {
    int request_id = -1;
    std::map<int, int> node_map;                         // vnode -> switch
    std::map<int, std::vector<PathAssignment>> link_map; // vlink -> 1+ paths
    int node_alloc = -1;
    std::map<int, int> link_allocs;  // vlink -> allocation handle
    bool live = false;
    Time map_time = 0;
};

// rank(switch) = residual memory x sum of adjacent residual bandwidth
inline long long switch_rank(const SubstrateNetwork& net, int sw, const DebitOverlay* ov) {
    long long mem = ov ? ov->residual_memory(net, sw) : net.residual_memory(sw);
    long long bw = 0;
    for (auto [nb, lid] : net.neighbors(sw)) {
        (void)nb;
        bw += ov ? ov->residual_bandwidth(net, lid) : net.residual_bandwidth(lid);
    }
    return mem * bw;
}

// Virtual nodes in descending rule_demand order (then ascending id) are
// placed on the feasible switch with the largest rank; ties go to the
// smallest switch id. Injective within the request.
inline Result<NodeMapping> greedy_node_map(const SubstrateNetwork& net,
                                           const VirtualNetworkRequest& req,
                                           const DebitOverlay* ov = nullptr) {
    std::vector<const VirtualNode*> order;
    for (const auto& n : req.nodes) order.push_back(&n);
    std::sort(order.begin(), order.end(), [](const VirtualNode* x, const VirtualNode* y) {
        if (x->rule_demand != y->rule_demand) return x->rule_demand > y->rule_demand;
        return x->id < y->id;
    });

    NodeMapping map;
    std::vector<char> taken(net.switch_count(), 0);
    for (const VirtualNode* vn : order) {
        int best = -1;
        long long best_rank = -1;
        for (int sw = 0; sw < net.switch_count(); ++sw) {
            if (taken[sw]) continue;
            int mem = ov ? ov->residual_memory(net, sw) : net.residual_memory(sw);
            if (mem < vn->rule_demand) continue;
            long long r = switch_rank(net, sw, ov);
            if (r > best_rank) {
                best_rank = r;
                best = sw;
            }
        }
        if (best < 0)
            return Rejection{Rejection::Kind::NodeUnmappable, vn->id,
                             "virtual node " + std::to_string(vn->id)};
        taken[best] = 1;
        map.pairs[vn->id] = best;
    }
    return map;
}

namespace detail {

// BFS hop distances from src over links with residual bandwidth >= demand
inline std::vector<int> feasible_hops(const SubstrateNetwork& net, int src, int demand,
                                      const DebitOverlay* ov) {
    std::vector<int> dist(net.switch_count(), -1);
    std::vector<int> queue{src};
    dist[src] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (auto [v, lid] : net.neighbors(u)) {
            int res = ov ? ov->residual_bandwidth(net, lid) : net.residual_bandwidth(lid);
            if (res < demand || dist[v] != -1) continue;
            dist[v] = dist[u] + 1;
            queue.push_back(v);
        }
    }
    return dist;
}

}  // namespace detail

// Minimum-hop simple path whose every link has residual bandwidth >= demand.
// Among min-hop paths, the lexicographically smallest switch-id sequence.
inline Result<std::vector<int>> find_unsplittable_path(const SubstrateNetwork& net, int src,
                                                       int dst, int demand,
                                                       const DebitOverlay* ov = nullptr) {
    if (src == dst) throw std::invalid_argument("src == dst");
    if (demand < 1) throw std::invalid_argument("demand must be >= 1");
    auto dist_to_dst = detail::feasible_hops(net, dst, demand, ov);
    if (dist_to_dst[src] < 0)
        return Rejection{Rejection::Kind::NoFeasiblePath, dst,
                         "no feasible path " + std::to_string(src) + "->" + std::to_string(dst)};
    // walk toward dst, always taking the smallest-id neighbor that stays
    // on a shortest feasible route; neighbors() is id-sorted
    std::vector<int> path{src};
    int cur = src;
    while (cur != dst) {
        for (auto [v, lid] : net.neighbors(cur)) {
            int res = ov ? ov->residual_bandwidth(net, lid) : net.residual_bandwidth(lid);
            if (res < demand) continue;
            if (dist_to_dst[v] == dist_to_dst[cur] - 1) {
                path.push_back(v);
                cur = v;
                break;
            }
        }
    }
    return path;
}

// Greedy decomposition: route the largest feasible share over the current
// shortest feasible path, up to k_max paths.
inline Result<std::vector<PathAssignment>> find_split_paths(const SubstrateNetwork& net, int src,
                                                            int dst, int demand, int k_max,
                                                            const DebitOverlay* ov = nullptr) {
    if (k_max < 2) throw std::invalid_argument("k_max must be >= 2");
    DebitOverlay local = ov ? *ov : DebitOverlay{};
    std::vector<PathAssignment> paths;
    int remaining = demand;
    while (remaining > 0 && static_cast<int>(paths.size()) < k_max) {
        auto p = find_unsplittable_path(net, src, dst, 1, &local);
        if (!p) break;
        int share = remaining;
        for (size_t i = 0; i + 1 < p->size(); ++i) {
            int lid = net.link_between((*p)[i], (*p)[i + 1]);
            share = std::min(share, local.residual_bandwidth(net, lid));
        }
        PathAssignment pa{*p, share};
        for (size_t i = 0; i + 1 < p->size(); ++i) {
            int lid = net.link_between((*p)[i], (*p)[i + 1]);
            local.link_extra[lid] += share;
        }
        paths.push_back(std::move(pa));
        remaining -= share;
    }
    if (remaining > 0)
        return Rejection{Rejection::Kind::InsufficientAggregateBandwidth, dst,
                         "cannot place " + std::to_string(demand) + " units"};
    return paths;
}

// Bandwidth debits for every path link plus one rule unit per on-path
// switch per member path.
inline Allocation path_allocation(const SubstrateNetwork& net, int request_id,
                                  const std::vector<PathAssignment>& paths) {
    Allocation alloc;
    alloc.request_id = request_id;
    for (const auto& pa : paths) {
        for (size_t i = 0; i + 1 < pa.switches.size(); ++i)
            alloc.link_debits.emplace_back(net.link_between(pa.switches[i], pa.switches[i + 1]),
                                           pa.share);
        for (int sw : pa.switches) alloc.switch_debits.emplace_back(sw, 1);
    }
    return alloc;
}

// Greedy node map, then links in descending demand order via the chosen
// path finder. On any failure the substrate is untouched.
inline Result<Embedding> embed_request(SubstrateNetwork& net, const VirtualNetworkRequest& req,
                                       EmbedVariant variant, int split_k_max = 2) {
    auto nm = greedy_node_map(net, req);
    if (!nm) return nm.rejection();

    Embedding emb;
    emb.request_id = req.id;
    emb.node_map = nm->pairs;

    DebitOverlay ov;
    Allocation node_alloc;
    node_alloc.request_id = req.id;
    for (const auto& n : req.nodes) {
        int sw = emb.node_map.at(n.id);
        node_alloc.switch_debits.emplace_back(sw, n.rule_demand);
        ov.switch_extra[sw] += n.rule_demand;
    }

    std::vector<const VirtualLink*> order;
    for (const auto& l : req.links) order.push_back(&l);
    std::sort(order.begin(), order.end(), [](const VirtualLink* x, const VirtualLink* y) {
        if (x->bandwidth_demand != y->bandwidth_demand)
            return x->bandwidth_demand > y->bandwidth_demand;
        return x->id < y->id;
    });

    std::map<int, Allocation> link_allocs;
    for (const VirtualLink* vl : order) {
        int src = emb.node_map.at(vl->a), dst = emb.node_map.at(vl->b);
        std::vector<PathAssignment> paths;
        if (variant == EmbedVariant::Unsplittable) {
            auto p = find_unsplittable_path(net, src, dst, vl->bandwidth_demand, &ov);
            if (!p)
                return Rejection{Rejection::Kind::LinkUnmappable, vl->id,
                                 "virtual link " + std::to_string(vl->id)};
            paths.push_back({*p, vl->bandwidth_demand});
        } else {
            auto ps = find_split_paths(net, src, dst, vl->bandwidth_demand, split_k_max, &ov);
            if (!ps)
                return Rejection{Rejection::Kind::LinkUnmappable, vl->id,
                                 "virtual link " + std::to_string(vl->id)};
            paths = *ps;
        }
        Allocation alloc = path_allocation(net, req.id, paths);
        for (const auto& [lid, amount] : alloc.link_debits) ov.link_extra[lid] += amount;
        for (const auto& [sw, amount] : alloc.switch_debits) ov.switch_extra[sw] += amount;
        emb.link_map[vl->id] = std::move(paths);
        link_allocs[vl->id] = std::move(alloc);
    }

    // combined feasibility check, then apply the pieces (cannot fail after)
    Allocation combined = node_alloc;
    for (const auto& [vlink, alloc] : link_allocs) {
        (void)vlink;
        combined.link_debits.insert(combined.link_debits.end(), alloc.link_debits.begin(),
                                    alloc.link_debits.end());
        combined.switch_debits.insert(combined.switch_debits.end(), alloc.switch_debits.begin(),
                                      alloc.switch_debits.end());
    }
    Rejection why;
    if (!net.can_apply(combined, &why)) return why;

    emb.node_alloc = *net.allocate(std::move(node_alloc));
    for (auto& [vlink, alloc] : link_allocs)
        emb.link_allocs[vlink] = *net.allocate(std::move(alloc));
    emb.live = true;
    return emb;
}

inline void tear_down(SubstrateNetwork& net, Embedding& emb) {
    if (!emb.live) throw std::logic_error("embedding already torn down");
    net.release(emb.node_alloc);
    for (auto [vlink, handle] : emb.link_allocs) {
        (void)vlink;
        net.release(handle);
    }
    emb.live = false;
}

}  // namespace vne

#endif
