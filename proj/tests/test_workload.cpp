#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vne/workload.hpp"

using namespace vne;

TEST_CASE("generate_workload default-scale count doubles into events") {
    WorkloadSpec spec;  // 1500 requests by default
    auto wl = generate_workload(spec, 1);
    REQUIRE(wl.ok());
    CHECK(wl->requests.size() == 1500);
    CHECK(wl->events.size() == 3000);
}

TEST_CASE("smallest workload: one request, connected pair") {
    WorkloadSpec spec;
    spec.count = 1;
    spec.node_min = spec.node_max = 2;
    spec.link_prob = 1.0;
    auto wl = generate_workload(spec, 5);
    REQUIRE(wl.ok());
    REQUIRE(wl->events.size() == 2);
    CHECK(wl->events[0].is_arrival);
    CHECK_FALSE(wl->events[1].is_arrival);
    const auto& req = wl->requests[0];
    CHECK(req.nodes.size() == 2);
    CHECK(req.links.size() == 1);
    CHECK(req.connected());
}

TEST_CASE("identical spec and seed give byte-identical streams") {
    WorkloadSpec spec;
    spec.count = 200;
    auto a = generate_workload(spec, 99);
    auto b = generate_workload(spec, 99);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(dump_workload(*a) == dump_workload(*b));
    auto c = generate_workload(spec, 100);
    CHECK(dump_workload(*a) != dump_workload(*c));
}

TEST_CASE("generated structure honors the spec ranges") {
    WorkloadSpec spec;
    spec.count = 300;
    auto wl = generate_workload(spec, 7);
    REQUIRE(wl.ok());
    Time prev = -1;
    for (const auto& ev : wl->events) {
        CHECK(ev.time >= prev);
        prev = ev.time;
    }
    for (const auto& req : wl->requests) {
        CHECK(req.connected());
        CHECK(req.nodes.size() >= 2);
        CHECK(req.nodes.size() <= 5);
        CHECK(req.lifetime >= 1);
        for (const auto& l : req.links) {
            CHECK(l.bandwidth_demand >= spec.demand_min);
            CHECK(l.bandwidth_demand <= spec.demand_max);
            CHECK(l.a != l.b);
        }
    }
    // every expiry pairs with its arrival at exactly arrival + lifetime
    for (const auto& ev : wl->events) {
        if (ev.is_arrival) continue;
        const auto& req = wl->requests[ev.request_id];
        CHECK(ev.time == req.arrival_time + req.lifetime);
    }
}

TEST_CASE("tie-break: arrival precedes expiry at equal time") {
    Workload wl;
    VirtualNetworkRequest r0;
    r0.id = 0;
    r0.arrival_time = 0;
    r0.lifetime = 1;
    r0.nodes = {{0, 1}, {1, 1}};
    r0.links = {{0, 0, 1, 10}};
    VirtualNetworkRequest r1 = r0;
    r1.id = 1;
    r1.arrival_time = 1;
    wl.requests = {r0, r1};
    wl.events = {{2, false, 1}, {1, true, 1}, {1, false, 0}, {0, true, 0}};
    std::sort(wl.events.begin(), wl.events.end(), [](const WorkloadEvent& x, const WorkloadEvent& y) {
        if (x.time != y.time) return x.time < y.time;
        if (x.is_arrival != y.is_arrival) return x.is_arrival;
        return x.request_id < y.request_id;
    });
    CHECK(wl.events[1].is_arrival);       // t=1 arrival of request 1 first
    CHECK(wl.events[1].request_id == 1);
    CHECK_FALSE(wl.events[2].is_arrival); // then t=1 expiry of request 0
}

TEST_CASE("workload stream cursor drains exactly once") {
    WorkloadSpec spec;
    spec.count = 10;
    auto wl = generate_workload(spec, 3);
    REQUIRE(wl.ok());
    WorkloadStream stream(*wl);
    size_t n = 0;
    Time prev = -1;
    while (auto ev = stream.next()) {
        CHECK(ev->time >= prev);
        prev = ev->time;
        ++n;
    }
    CHECK(n == wl->events.size());
    CHECK_FALSE(stream.next().has_value());

    Workload empty;
    WorkloadStream es(empty);
    CHECK_FALSE(es.next().has_value());
}

TEST_CASE("dump and load round trip") {
    WorkloadSpec spec;
    spec.count = 50;
    auto wl = generate_workload(spec, 21);
    REQUIRE(wl.ok());
    auto text = dump_workload(*wl);
    auto loaded = load_workload(text);
    REQUIRE(loaded.ok());
    CHECK(dump_workload(*loaded) == text);
}

TEST_CASE("infeasible specs are rejected") {
    WorkloadSpec spec;
    spec.node_min = 0;
    spec.node_max = 1;
    CHECK_FALSE(generate_workload(spec, 1).ok());

    WorkloadSpec bad_demand;
    bad_demand.demand_min = 10;
    bad_demand.demand_max = 5;
    CHECK_FALSE(generate_workload(bad_demand, 1).ok());

    WorkloadSpec bad_rate;
    bad_rate.arrival_rate = 0.0;
    CHECK_FALSE(generate_workload(bad_rate, 1).ok());
}
