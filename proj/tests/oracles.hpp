// Independent brute-force oracles used by the unit and acceptance suites.
// Nothing here may call the implementation paths it checks.

#ifndef VNE_TESTS_ORACLES_HPP_
#define VNE_TESTS_ORACLES_HPP_

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "vne/embedder.hpp"
#include "vne/substrate.hpp"
#include "vne/workload.hpp"

namespace oracles {

// every simple path src -> dst as a switch sequence, DFS order
inline std::vector<std::vector<int>> all_simple_paths(const vne::SubstrateNetwork& net, int src,
                                                      int dst) {
    std::vector<std::vector<int>> out;
    std::vector<int> path{src};
    std::vector<char> used(net.switch_count(), 0);
    used[src] = 1;
    auto dfs = [&](auto&& self, int u) -> void {
        if (u == dst) {
            out.push_back(path);
            return;
        }
        for (auto [v, lid] : net.neighbors(u)) {
            (void)lid;
            if (used[v]) continue;
            used[v] = 1;
            path.push_back(v);
            self(self, v);
            path.pop_back();
            used[v] = 0;
        }
    };
    dfs(dfs, src);
    return out;
}

// minimum-hop path among paths whose every link has residual >= demand;
// ties by lexicographically smallest sequence
inline std::optional<std::vector<int>> brute_min_hop_feasible(const vne::SubstrateNetwork& net,
                                                              int src, int dst, int demand) {
    std::optional<std::vector<int>> best;
    for (const auto& p : all_simple_paths(net, src, dst)) {
        bool feasible = true;
        for (size_t i = 0; i + 1 < p.size(); ++i)
            if (net.residual_bandwidth(net.link_between(p[i], p[i + 1])) < demand) {
                feasible = false;
                break;
            }
        if (!feasible) continue;
        if (!best || p.size() < best->size() || (p.size() == best->size() && p < *best)) best = p;
    }
    return best;
}

// naive per-element evaluation of the used-resource total for one
// mapped virtual link
inline long long brute_used(const vne::Embedding& emb, int vlink) {
    long long r = 0;
    for (const auto& pa : emb.link_map.at(vlink)) {
        for (size_t i = 0; i + 1 < pa.switches.size(); ++i) r += pa.share;
        for (size_t i = 0; i < pa.switches.size(); ++i) r += 1;
    }
    return r;
}

// naive per-element evaluation of the unallocated-resource total
inline long long brute_unallocated(const vne::SubstrateNetwork& net, const vne::Embedding& emb,
                                   int vlink) {
    long long a = 0;
    for (const auto& pa : emb.link_map.at(vlink)) {
        for (size_t i = 0; i + 1 < pa.switches.size(); ++i) {
            const auto& l = net.link_at(net.link_between(pa.switches[i], pa.switches[i + 1]));
            a += l.bandwidth_capacity - l.bandwidth_allocated;
        }
        for (int sw : pa.switches) {
            const auto& s = net.switch_at(sw);
            a += s.memory_capacity - s.memory_used;
        }
    }
    return a;
}

// Edmonds-Karp on residual bandwidth (undirected links)
inline long long max_flow(const vne::SubstrateNetwork& net, int src, int dst) {
    int n = net.switch_count();
    std::vector<std::vector<long long>> cap(n, std::vector<long long>(n, 0));
    for (int i = 0; i < net.link_count(); ++i) {
        const auto& l = net.link_at(i);
        long long r = net.residual_bandwidth(i);
        cap[l.a][l.b] += r;
        cap[l.b][l.a] += r;
    }
    long long flow = 0;
    while (true) {
        std::vector<int> prev(n, -1);
        prev[src] = src;
        std::queue<int> q;
        q.push(src);
        while (!q.empty() && prev[dst] == -1) {
            int u = q.front();
            q.pop();
            for (int v = 0; v < n; ++v)
                if (prev[v] == -1 && cap[u][v] > 0) {
                    prev[v] = u;
                    q.push(v);
                }
        }
        if (prev[dst] == -1) break;
        long long aug = LLONG_MAX;
        for (int v = dst; v != src; v = prev[v]) aug = std::min(aug, cap[prev[v]][v]);
        for (int v = dst; v != src; v = prev[v]) {
            cap[prev[v]][v] -= aug;
            cap[v][prev[v]] += aug;
        }
        flow += aug;
    }
    return flow;
}

// Exhaustive feasibility: does ANY injective node map plus any choice of
// single simple path per virtual link fit the current residuals?
inline bool exhaustive_embedding_exists(const vne::SubstrateNetwork& net,
                                        const vne::VirtualNetworkRequest& req) {
    int n = net.switch_count();
    int k = static_cast<int>(req.nodes.size());
    std::vector<int> switches(n);
    for (int i = 0; i < n; ++i) switches[i] = i;
    std::vector<int> assign(k, -1);
    std::vector<char> taken(n, 0);

    auto links_feasible = [&](auto&& self, size_t li, vne::Allocation acc) -> bool {
        if (li == req.links.size()) {
            acc.request_id = req.id;
            return net.can_apply(acc);
        }
        const auto& vl = req.links[li];
        int src = assign[vl.a], dst = assign[vl.b];
        for (const auto& p : all_simple_paths(net, src, dst)) {
            vne::Allocation next = acc;
            for (size_t i = 0; i + 1 < p.size(); ++i)
                next.link_debits.emplace_back(net.link_between(p[i], p[i + 1]),
                                              vl.bandwidth_demand);
            for (int sw : p) next.switch_debits.emplace_back(sw, 1);
            if (self(self, li + 1, std::move(next))) return true;
        }
        return false;
    };

    auto place = [&](auto&& self, int vi) -> bool {
        if (vi == k) {
            vne::Allocation acc;
            acc.request_id = req.id;
            for (int i = 0; i < k; ++i)
                acc.switch_debits.emplace_back(assign[i], req.nodes[i].rule_demand);
            return links_feasible(links_feasible, 0, std::move(acc));
        }
        for (int sw = 0; sw < n; ++sw) {
            if (taken[sw]) continue;
            taken[sw] = 1;
            assign[vi] = sw;
            if (self(self, vi + 1)) {
                taken[sw] = 0;
                return true;
            }
            taken[sw] = 0;
        }
        return false;
    };
    return place(place, 0);
}

}  // namespace oracles

#endif
