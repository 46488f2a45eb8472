#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "vne/embedder.hpp"
#include "vne/link_weights.hpp"
#include "vne/rng.hpp"

using namespace vne;

namespace {

// 3 switches in a chain, configurable caps
SubstrateNetwork chain3(int link_cap = 250, int mem_cap = 200) {
    SubstrateNetwork net;
    for (int i = 0; i < 3; ++i) net.add_switch(mem_cap);
    net.add_link(0, 1, link_cap);
    net.add_link(1, 2, link_cap);
    return net;
}

Embedding mapped_fragment(std::vector<PathAssignment> paths, int request_id = 0, int vlink = 0) {
    Embedding emb;
    emb.request_id = request_id;
    emb.live = true;
    emb.link_map[vlink] = std::move(paths);
    return emb;
}

}  // namespace

TEST_CASE("used resources: demand 50 over a 2-link path") {
    auto emb = mapped_fragment({{{0, 1, 2}, 50}});
    CHECK(compute_used_resources(emb, 0) == 103);  // 50+50 bandwidth + 3 rule units
    CHECK(oracles::brute_used(emb, 0) == 103);
}

TEST_CASE("used resources: 1-hop path, demand 10") {
    auto emb = mapped_fragment({{{0, 1}, 10}});
    CHECK(compute_used_resources(emb, 0) == 12);
}

TEST_CASE("used resources: split mapping sums member paths") {
    auto emb = mapped_fragment({{{0, 1, 2}, 100}, {{0, 3, 4, 2}, 20}});
    CHECK(compute_used_resources(emb, 0) == (200 + 3) + (60 + 4));
    CHECK(oracles::brute_used(emb, 0) == 267);
}

TEST_CASE("used resources: unmapped link is a state error") {
    auto emb = mapped_fragment({{{0, 1}, 10}});
    CHECK_THROWS_AS((void)compute_used_resources(emb, 7), std::logic_error);
}

TEST_CASE("unallocated resources on a partially loaded path") {
    auto net = chain3();
    Allocation load;
    load.link_debits = {{0, 50}, {1, 50}};
    load.switch_debits = {{0, 1}, {1, 1}, {2, 1}};
    REQUIRE(net.allocate(load).ok());
    auto emb = mapped_fragment({{{0, 1, 2}, 50}});
    CHECK(compute_unallocated_resources(net, emb, 0) == 200 + 200 + 199 + 199 + 199);
    CHECK(oracles::brute_unallocated(net, emb, 0) == 997);
}

TEST_CASE("unallocated resources of a fully saturated path") {
    auto net = chain3();
    Allocation load;
    load.link_debits = {{0, 250}, {1, 250}};
    load.switch_debits = {{0, 200}, {1, 200}, {2, 200}};
    REQUIRE(net.allocate(load).ok());
    auto emb = mapped_fragment({{{0, 1, 2}, 50}});
    CHECK(compute_unallocated_resources(net, emb, 0) == 0);
}

TEST_CASE("unallocated resources of an untouched path") {
    auto net = chain3();
    auto emb = mapped_fragment({{{0, 1, 2}, 50}});
    CHECK(compute_unallocated_resources(net, emb, 0) == 2 * 250 + 3 * 200);
}

TEST_CASE("weight arithmetic") {
    CHECK(compute_weight(103, 997) == -894);
    CHECK(compute_weight(42, 42) == 0);
    CHECK(compute_weight(12, 0) == 12);
}

TEST_CASE("ranking sorts by weight descending with id tie-breaks") {
    // saturated substrate makes A == 0, so W == R exactly
    SubstrateNetwork net;
    for (int i = 0; i < 4; ++i) net.add_switch(0);
    net.add_link(0, 1, 0);
    net.add_link(1, 2, 0);
    net.add_link(2, 3, 0);

    std::map<int, Embedding> live;
    Embedding a = mapped_fragment({{{0, 1}, 3}}, 0, 0);           // W = 5
    a.link_map[1] = {{{1, 2, 3}, 1}};                             // W = 5 as well
    Embedding b = mapped_fragment({{{0, 1}, 1}}, 1, 0);           // W = 3
    live[0] = std::move(a);
    live[1] = std::move(b);

    auto records = rank_mapped_links(net, live);
    REQUIRE(records.size() == 3);
    CHECK(records[0].request_id == 0);
    CHECK(records[0].virtual_link_id == 0);  // equal weight, lower vlink id first
    CHECK(records[1].request_id == 0);
    CHECK(records[1].virtual_link_id == 1);
    CHECK(records[2].request_id == 1);
    CHECK(records[2].weight == 3);
}

TEST_CASE("ranking of no live embeddings is empty") {
    SubstrateNetwork net;
    net.add_switch(10);
    net.add_switch(10);
    net.add_link(0, 1, 10);
    CHECK(rank_mapped_links(net, {}).empty());
}

TEST_CASE("ranking matches full recomputation on random live state") {
    TopologySpec spec;
    spec.node_count = 10;
    auto net = build_topology(spec, 77);
    REQUIRE(net.ok());
    Rng rng(88);
    std::map<int, Embedding> live;
    int placed = 0;
    for (int i = 0; i < 400 && placed < 200; ++i) {
        VirtualNetworkRequest req;
        req.id = i;
        int k = rng.uniform_int(2, 4);
        for (int v = 0; v < k; ++v) req.nodes.push_back({v, 1});
        for (int v = 1; v < k; ++v) req.links.push_back({v - 1, 0, v, rng.uniform_int(1, 8)});
        auto emb = embed_request(*net, req, EmbedVariant::Unsplittable);
        if (emb.ok()) {
            placed += static_cast<int>(emb->link_map.size());
            live[i] = std::move(*emb);
        }
    }
    REQUIRE(placed >= 100);

    auto records = rank_mapped_links(*net, live);
    // independent recomputation of every record, then an independent sort
    std::vector<LinkWeightRecord> expect;
    for (const auto& [rid, emb] : live)
        for (const auto& [vlink, paths] : emb.link_map) {
            (void)paths;
            LinkWeightRecord rec;
            rec.request_id = rid;
            rec.virtual_link_id = vlink;
            rec.used = oracles::brute_used(emb, vlink);
            rec.unallocated = oracles::brute_unallocated(*net, emb, vlink);
            rec.weight = rec.used - rec.unallocated;
            expect.push_back(rec);
        }
    std::stable_sort(expect.begin(), expect.end(),
                     [](const LinkWeightRecord& x, const LinkWeightRecord& y) {
                         if (x.weight != y.weight) return x.weight > y.weight;
                         if (x.request_id != y.request_id) return x.request_id < y.request_id;
                         return x.virtual_link_id < y.virtual_link_id;
                     });
    REQUIRE(records.size() == expect.size());
    for (size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].request_id == expect[i].request_id);
        CHECK(records[i].virtual_link_id == expect[i].virtual_link_id);
        CHECK(records[i].used == expect[i].used);
        CHECK(records[i].unallocated == expect[i].unallocated);
        CHECK(records[i].weight == expect[i].weight);
    }
    // rerunning is a pure function of state
    auto again = rank_mapped_links(*net, live);
    REQUIRE(again.size() == records.size());
    for (size_t i = 0; i < records.size(); ++i) {
        CHECK(again[i].request_id == records[i].request_id);
        CHECK(again[i].virtual_link_id == records[i].virtual_link_id);
    }
}

TEST_CASE("other tenants change A but never R") {
    SubstrateNetwork net;
    for (int i = 0; i < 3; ++i) net.add_switch(100);
    net.add_link(0, 1, 200);
    net.add_link(1, 2, 200);
    auto emb = mapped_fragment({{{0, 1, 2}, 40}});
    long long r0 = compute_used_resources(emb, 0);
    long long a0 = compute_unallocated_resources(net, emb, 0);
    Allocation tenant;
    tenant.link_debits = {{0, 30}};
    tenant.switch_debits = {{1, 5}};
    REQUIRE(net.allocate(tenant).ok());
    CHECK(compute_used_resources(emb, 0) == r0);
    CHECK(compute_unallocated_resources(net, emb, 0) == a0 - 35);
}
