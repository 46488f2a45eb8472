#ifndef VNE_WORKLOAD_HPP_
#define VNE_WORKLOAD_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vne/result.hpp"
#include "vne/rng.hpp"
#include "vne/substrate.hpp"

namespace vne {

struct VirtualNode {
    int id = -1;
    int rule_demand = 1;  // rule units reserved at the hosting switch
};

struct VirtualLink {
    int id = -1;
    int a = -1, b = -1;  // virtual node ids, a < b
    int bandwidth_demand = 1;
};

struct VirtualNetworkRequest {
    int id = -1;
    std::vector<VirtualNode> nodes;
    std::vector<VirtualLink> links;
    Time arrival_time = 0;
    Time lifetime = 0;

    bool connected() const {
        if (nodes.empty()) return false;
        std::vector<std::vector<int>> adj(nodes.size());
        for (const auto& l : links) {
            adj[l.a].push_back(l.b);
            adj[l.b].push_back(l.a);
        }
        std::vector<char> seen(nodes.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        size_t count = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    ++count;
                    stack.push_back(v);
                }
        }
        return count == nodes.size();
    }
};

struct WorkloadEvent {
    Time time = 0;
    bool is_arrival = false;
    int request_id = -1;
};

struct Workload {
    std::vector<VirtualNetworkRequest> requests;  // indexed by request id
    std::vector<WorkloadEvent> events;            // time-sorted
};

struct WorkloadSpec {
    int count = 1500;
    double arrival_rate = 0.05;   // requests per tick (5 per 100 ticks)
    double mean_lifetime = 500.0;
    int node_min = 2;
    int node_max = 5;
    double link_prob = 0.5;
    int demand_min = 10;
    int demand_max = 50;
    int rule_demand = 1;
};

namespace detail {

inline int find_root(std::vector<int>& parent, int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

}  // namespace detail

// Poisson arrivals, exponential lifetimes, small random connected
// topologies. Pure function of (spec, seed).
inline Result<Workload> generate_workload(const WorkloadSpec& spec, uint64_t seed) {
    if (spec.count < 0)
        return Rejection{Rejection::Kind::InvalidSpec, -1, "negative request count"};
    if (spec.node_min < 2 || spec.node_max < spec.node_min)
        return Rejection{Rejection::Kind::InvalidSpec, -1, "bad node count range"};
    if (spec.demand_min < 1 || spec.demand_max < spec.demand_min)
        return Rejection{Rejection::Kind::InvalidSpec, -1, "bad demand range"};
    if (spec.arrival_rate <= 0 || spec.mean_lifetime <= 0)
        return Rejection{Rejection::Kind::InvalidSpec, -1, "rates must be positive"};
    if (spec.rule_demand < 1)
        return Rejection{Rejection::Kind::InvalidSpec, -1, "rule demand must be >= 1"};

    Rng rng(seed);
    Workload wl;
    Time now = 0;
    for (int r = 0; r < spec.count; ++r) {
        // exponential draws rounded up to at least one tick
        Time gap = static_cast<Time>(std::ceil(rng.exponential(1.0 / spec.arrival_rate)));
        now += std::max<Time>(gap, 1);
        Time life =
            std::max<Time>(static_cast<Time>(std::ceil(rng.exponential(spec.mean_lifetime))), 1);

        VirtualNetworkRequest req;
        req.id = r;
        req.arrival_time = now;
        req.lifetime = life;
        int n = rng.uniform_int(spec.node_min, spec.node_max);
        for (int i = 0; i < n; ++i) req.nodes.push_back({i, spec.rule_demand});
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        int next_link = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.bernoulli(spec.link_prob)) {
                    req.links.push_back(
                        {next_link++, i, j, rng.uniform_int(spec.demand_min, spec.demand_max)});
                    parent[detail::find_root(parent, j)] = detail::find_root(parent, i);
                }
        // augment to connectivity: attach each later component's smallest
        // node to node 0's component
        for (int i = 1; i < n; ++i)
            if (detail::find_root(parent, i) != detail::find_root(parent, 0)) {
                req.links.push_back(
                    {next_link++, 0, i, rng.uniform_int(spec.demand_min, spec.demand_max)});
                parent[detail::find_root(parent, i)] = detail::find_root(parent, 0);
            }

        wl.events.push_back({req.arrival_time, true, r});
        wl.events.push_back({req.arrival_time + req.lifetime, false, r});
        wl.requests.push_back(std::move(req));
    }
    // arrival before expiry at equal time, then request id
    std::sort(wl.events.begin(), wl.events.end(), [](const WorkloadEvent& x, const WorkloadEvent& y) {
        if (x.time != y.time) return x.time < y.time;
        if (x.is_arrival != y.is_arrival) return x.is_arrival;
        return x.request_id < y.request_id;
    });
    return wl;
}

// Cursor over a generated stream.
class WorkloadStream {
public:
    explicit WorkloadStream(const Workload& wl) : wl_(&wl) {}

    std::optional<WorkloadEvent> next() {
        if (cursor_ >= wl_->events.size()) return std::nullopt;
        return wl_->events[cursor_++];
    }

private:
    const Workload* wl_;
    size_t cursor_ = 0;
};

// One event per line; arrivals carry the full request so a dumped
// workload replays identically across strategies.
inline std::string dump_workload(const Workload& wl) {
    std::ostringstream os;
    for (const auto& ev : wl.events) {
        if (!ev.is_arrival) {
            os << "expiry " << ev.time << ' ' << ev.request_id << '\n';
            continue;
        }
        const auto& req = wl.requests[ev.request_id];
        os << "arrival " << ev.time << ' ' << req.id << ' ' << req.lifetime << ' '
           << req.nodes.size() << ' ' << req.links.size();
        for (const auto& node : req.nodes) os << ' ' << node.id << ':' << node.rule_demand;
        for (const auto& l : req.links)
            os << ' ' << l.id << ':' << l.a << ':' << l.b << ':' << l.bandwidth_demand;
        os << '\n';
    }
    return os.str();
}

inline Result<Workload> load_workload(const std::string& text) {
    Workload wl;
    std::istringstream is(text);
    std::string line;
    auto bad = [](const std::string& what) {
        return Rejection{Rejection::Kind::InvalidSpec, -1, what};
    };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "expiry") {
            WorkloadEvent ev;
            ev.is_arrival = false;
            if (!(ls >> ev.time >> ev.request_id)) return bad("bad expiry line");
            wl.events.push_back(ev);
        } else if (kind == "arrival") {
            VirtualNetworkRequest req;
            size_t nn, nl;
            if (!(ls >> req.arrival_time >> req.id >> req.lifetime >> nn >> nl))
                return bad("bad arrival line");
            for (size_t i = 0; i < nn; ++i) {
                std::string tok;
                if (!(ls >> tok)) return bad("missing node token");
                VirtualNode node;
                if (std::sscanf(tok.c_str(), "%d:%d", &node.id, &node.rule_demand) != 2)
                    return bad("bad node token " + tok);
                req.nodes.push_back(node);
            }
            for (size_t i = 0; i < nl; ++i) {
                std::string tok;
                if (!(ls >> tok)) return bad("missing link token");
                VirtualLink l;
                if (std::sscanf(tok.c_str(), "%d:%d:%d:%d", &l.id, &l.a, &l.b,
                                &l.bandwidth_demand) != 4)
                    return bad("bad link token " + tok);
                req.links.push_back(l);
            }
            wl.events.push_back({req.arrival_time, true, req.id});
            if (req.id >= static_cast<int>(wl.requests.size()))
                wl.requests.resize(req.id + 1);
            wl.requests[req.id] = std::move(req);
        } else {
            return bad("unknown record " + kind);
        }
    }
    return wl;
}

}  // namespace vne

#endif
