#ifndef VNE_SUBSTRATE_HPP_
#define VNE_SUBSTRATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "vne/result.hpp"
#include "vne/rng.hpp"

namespace vne {

using Time = long long;  // simulation tick

struct SubstrateSwitch {
    int id = -1;
    int memory_capacity = 0;  // flow-table size in rule units
    int memory_used = 0;
};

struct SubstrateLink {
    int id = -1;
    int a = -1, b = -1;  // endpoint switch ids, a < b
    int bandwidth_capacity = 0;
    int bandwidth_allocated = 0;
};

// Multi-resource debit set applied and released as a unit.
struct Allocation {
    int request_id = -1;
    std::vector<std::pair<int, int>> link_debits;    // (link id, bandwidth units)
    std::vector<std::pair<int, int>> switch_debits;  // (switch id, rule units)

    bool empty() const { return link_debits.empty() && switch_debits.empty(); }
};

// Undirected simple graph of switches and links with residual tracking.
// Live allocations are registered so residuals can be recomputed from
// scratch and checked against the incremental counters.
class SubstrateNetwork {
public:
    int add_switch(int memory_capacity) {
        int id = static_cast<int>(switches_.size());
        switches_.push_back({id, memory_capacity, 0});
        adjacency_.emplace_back();
        return id;
    }

    // false on self-loop or duplicate pair
    bool add_link(int a, int b, int bandwidth_capacity) {
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        check_switch(a);
        check_switch(b);
        if (link_index_.count({a, b})) return false;
        int id = static_cast<int>(links_.size());
        links_.push_back({id, a, b, bandwidth_capacity, 0});
        link_index_[{a, b}] = id;
        adjacency_[a].push_back({b, id});
        adjacency_[b].push_back({a, id});
        std::sort(adjacency_[a].begin(), adjacency_[a].end());
        std::sort(adjacency_[b].begin(), adjacency_[b].end());
        return true;
    }

    int switch_count() const { return static_cast<int>(switches_.size()); }
    int link_count() const { return static_cast<int>(links_.size()); }

    const SubstrateSwitch& switch_at(int id) const {
        check_switch(id);
        return switches_[id];
    }
    const SubstrateLink& link_at(int id) const {
        check_link(id);
        return links_[id];
    }
    int link_between(int a, int b) const {
        if (a > b) std::swap(a, b);
        auto it = link_index_.find({a, b});
        return it == link_index_.end() ? -1 : it->second;
    }
    // sorted (neighbor id, link id) pairs
    const std::vector<std::pair<int, int>>& neighbors(int sw) const {
        check_switch(sw);
        return adjacency_[sw];
    }

    int residual_bandwidth(int link_id) const {
        check_link(link_id);
        return links_[link_id].bandwidth_capacity - links_[link_id].bandwidth_allocated;
    }
    int residual_memory(int sw) const {
        check_switch(sw);
        return switches_[sw].memory_capacity - switches_[sw].memory_used;
    }

    // All-or-nothing feasibility check against current residuals.
    // Aggregates repeated debits; reports the first element whose running
    // total exceeds its residual.
    bool can_apply(const Allocation& alloc, Rejection* why = nullptr) const {
        std::map<int, int> link_sum, switch_sum;
        for (const auto& [id, amount] : alloc.link_debits) {
            check_link(id);
            if (amount <= 0) throw std::invalid_argument("non-positive link debit");
            link_sum[id] += amount;
            if (link_sum[id] > residual_bandwidth(id)) {
                if (why) *why = {Rejection::Kind::InsufficientBandwidth, id,
                                 "link " + std::to_string(id)};
                return false;
            }
        }
        for (const auto& [id, amount] : alloc.switch_debits) {
            check_switch(id);
            if (amount <= 0) throw std::invalid_argument("non-positive switch debit");
            switch_sum[id] += amount;
            if (switch_sum[id] > residual_memory(id)) {
                if (why) *why = {Rejection::Kind::InsufficientMemory, id,
                                 "switch " + std::to_string(id)};
                return false;
            }
        }
        return true;
    }

    // Returns the allocation handle used for release.
    Result<int> allocate(Allocation alloc) {
        Rejection why;
        if (!can_apply(alloc, &why)) return why;
        for (const auto& [id, amount] : alloc.link_debits)
            links_[id].bandwidth_allocated += amount;
        for (const auto& [id, amount] : alloc.switch_debits)
            switches_[id].memory_used += amount;
        int handle = next_alloc_id_++;
        live_.emplace(handle, std::move(alloc));
        return handle;
    }

    void release(int handle) {
        auto it = live_.find(handle);
        if (it == live_.end())
            throw std::invalid_argument("unknown or already-released allocation " +
                                        std::to_string(handle));
        for (const auto& [id, amount] : it->second.link_debits)
            links_[id].bandwidth_allocated -= amount;
        for (const auto& [id, amount] : it->second.switch_debits)
            switches_[id].memory_used -= amount;
        live_.erase(it);
    }

    const std::map<int, Allocation>& live_allocations() const { return live_; }
    const Allocation& allocation_at(int handle) const {
        auto it = live_.find(handle);
        if (it == live_.end())
            throw std::invalid_argument("unknown allocation " + std::to_string(handle));
        return it->second;
    }

    // Incremental counters vs. full recomputation over live allocations.
    bool residuals_consistent() const {
        std::vector<long long> bw(links_.size(), 0), mem(switches_.size(), 0);
        for (const auto& [h, alloc] : live_) {
            (void)h;
            for (const auto& [id, amount] : alloc.link_debits) bw[id] += amount;
            for (const auto& [id, amount] : alloc.switch_debits) mem[id] += amount;
        }
        for (const auto& l : links_)
            if (bw[l.id] != l.bandwidth_allocated) return false;
        for (const auto& s : switches_)
            if (mem[s.id] != s.memory_used) return false;
        return true;
    }

    bool connected() const {
        if (switches_.empty()) return true;
        std::vector<char> seen(switches_.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [v, lid] : adjacency_[u]) {
                (void)lid;
                if (!seen[v]) {
                    seen[v] = 1;
                    ++count;
                    stack.push_back(v);
                }
            }
        }
        return count == switch_count();
    }

    // switch table `u memory_capacity` then edge list `u v capacity`
    std::string to_edge_list() const {
        std::ostringstream os;
        for (const auto& s : switches_) os << "switch " << s.id << ' ' << s.memory_capacity << '\n';
        for (const auto& l : links_)
            os << "link " << l.a << ' ' << l.b << ' ' << l.bandwidth_capacity << '\n';
        return os.str();
    }

    static Result<SubstrateNetwork> from_edge_list(const std::string& text) {
        SubstrateNetwork net;
        std::istringstream is(text);
        std::string kind;
        std::map<int, int> memories;
        std::vector<std::tuple<int, int, int>> edges;
        int max_id = -1;
        while (is >> kind) {
            if (kind == "switch") {
                int id, mem;
                if (!(is >> id >> mem))
                    return Rejection{Rejection::Kind::InvalidSpec, -1, "bad switch line"};
                memories[id] = mem;
                max_id = std::max(max_id, id);
            } else if (kind == "link") {
                int a, b, cap;
                if (!(is >> a >> b >> cap))
                    return Rejection{Rejection::Kind::InvalidSpec, -1, "bad link line"};
                edges.emplace_back(a, b, cap);
                max_id = std::max({max_id, a, b});
            } else {
                return Rejection{Rejection::Kind::InvalidSpec, -1, "unknown record " + kind};
            }
        }
        for (int i = 0; i <= max_id; ++i) {
            auto it = memories.find(i);
            net.add_switch(it == memories.end() ? 0 : it->second);
        }
        for (auto [a, b, cap] : edges)
            if (!net.add_link(a, b, cap))
                return Rejection{Rejection::Kind::InvalidSpec, -1, "duplicate or self link"};
        return net;
    }

    std::string to_dot() const {
        std::ostringstream os;
        os << "graph substrate {\n";
        for (const auto& s : switches_)
            os << "  s" << s.id << " [label=\"" << s.id << " M=" << s.memory_capacity << "\"];\n";
        for (const auto& l : links_)
            os << "  s" << l.a << " -- s" << l.b << " [label=\"" << l.bandwidth_capacity
               << "\"];\n";
        os << "}\n";
        return os.str();
    }

private:
    void check_switch(int id) const {
        if (id < 0 || id >= switch_count())
            throw std::out_of_range("unknown switch " + std::to_string(id));
    }
    void check_link(int id) const {
        if (id < 0 || id >= link_count())
            throw std::out_of_range("unknown link " + std::to_string(id));
    }

    std::vector<SubstrateSwitch> switches_;
    std::vector<SubstrateLink> links_;
    std::map<std::pair<int, int>, int> link_index_;
    std::vector<std::vector<std::pair<int, int>>> adjacency_;
    std::map<int, Allocation> live_;
    int next_alloc_id_ = 0;
};

struct TopologySpec {
    enum class Generator { Waxman, Dumbbell, Explicit };

    Generator generator = Generator::Waxman;
    int node_count = 14;
    int capacity_min = 100;
    int capacity_max = 250;
    double waxman_alpha = 0.5;
    double waxman_beta = 0.5;
    // explicit generator: (u, v, capacity); capacity <= 0 means draw from range
    std::vector<std::tuple<int, int, int>> edges;
    // explicit per-switch memory; empty means draw from range
    std::vector<int> memories;
};

inline Result<SubstrateNetwork> build_topology(const TopologySpec& spec, uint64_t seed) {
    if (spec.node_count < 2)
        return Rejection{Rejection::Kind::InvalidSpec, -1, "node count must be >= 2"};
    if (spec.capacity_min < 1 || spec.capacity_max < spec.capacity_min)
        return Rejection{Rejection::Kind::InvalidSpec, -1, "bad capacity range"};

    Rng rng(seed);
    SubstrateNetwork net;
    auto draw_cap = [&] { return rng.uniform_int(spec.capacity_min, spec.capacity_max); };

    switch (spec.generator) {
        case TopologySpec::Generator::Explicit: {
            for (int i = 0; i < spec.node_count; ++i) {
                int mem = i < static_cast<int>(spec.memories.size()) ? spec.memories[i]
                                                                    : draw_cap();
                net.add_switch(mem);
            }
            for (auto [u, v, cap] : spec.edges) {
                if (u < 0 || u >= spec.node_count || v < 0 || v >= spec.node_count)
                    return Rejection{Rejection::Kind::InvalidSpec, -1, "edge endpoint out of range"};
                if (!net.add_link(u, v, cap > 0 ? cap : draw_cap()))
                    return Rejection{Rejection::Kind::InvalidSpec, -1, "duplicate or self edge"};
            }
            if (!net.connected())
                return Rejection{Rejection::Kind::InvalidSpec, -1, "explicit edge list disconnected"};
            return net;
        }
        case TopologySpec::Generator::Dumbbell: {
            for (int i = 0; i < spec.node_count; ++i) net.add_switch(draw_cap());
            net.add_link(0, 1, draw_cap());  // bottleneck
            for (int i = 2; i < spec.node_count; ++i) net.add_link(i % 2, i, draw_cap());
            return net;
        }
        case TopologySpec::Generator::Waxman: {
            int n = spec.node_count;
            for (int i = 0; i < n; ++i) net.add_switch(draw_cap());
            std::vector<std::pair<double, double>> pos(n);
            for (auto& p : pos) {
                p.first = rng.uniform01();
                p.second = rng.uniform01();
            }
            double scale = std::sqrt(2.0);  // max distance in the unit square
            auto dist = [&](int i, int j) {
                double dx = pos[i].first - pos[j].first;
                double dy = pos[i].second - pos[j].second;
                return std::sqrt(dx * dx + dy * dy);
            };
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    double p = spec.waxman_alpha *
                               std::exp(-dist(i, j) / (spec.waxman_beta * scale));
                    if (rng.bernoulli(p)) net.add_link(i, j, draw_cap());
                }
            // stitch components together via closest cross-component pairs
            while (!net.connected()) {
                std::vector<int> comp(n, -1);
                int ncomp = 0;
                for (int i = 0; i < n; ++i) {
                    if (comp[i] != -1) continue;
                    std::vector<int> stack{i};
                    comp[i] = ncomp;
                    while (!stack.empty()) {
                        int u = stack.back();
                        stack.pop_back();
                        for (auto [v, lid] : net.neighbors(u)) {
                            (void)lid;
                            if (comp[v] == -1) {
                                comp[v] = ncomp;
                                stack.push_back(v);
                            }
                        }
                    }
                    ++ncomp;
                }
                double best = 1e18;
                int bu = -1, bv = -1;
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        if (comp[i] != comp[j] && dist(i, j) < best) {
                            best = dist(i, j);
                            bu = i;
                            bv = j;
                        }
                net.add_link(bu, bv, draw_cap());
            }
            return net;
        }
    }
    return Rejection{Rejection::Kind::InvalidSpec, -1, "unknown generator"};
}

}  // namespace vne

#endif
