#include <doctest.h>

#include <map>
#include <sstream>

#include "multiwalk/rng.hpp"
#include "multiwalk/synthetic.hpp"
#include "multiwalk/walkgen.hpp"

using namespace multiwalk;

TEST_SUITE("walkgen") {

TEST_CASE("isolated node truncates") {
    std::istringstream in("a b\nc c\n");
    const Graph g = load_edge_list(in);
    Rng rng(1);
    const Walk w = uniform_walk(g, 2, 80, rng);
    REQUIRE(w.nodes.size() == 1);
    CHECK(w.nodes[0] == 2);
}

TEST_CASE("two-node graph forces alternation") {
    const Graph g = synthetic::path_graph(2);
    Rng rng(7);
    const Walk w = uniform_walk(g, 0, 4, rng);
    CHECK(w.nodes == std::vector<NodeId>{0, 1, 0, 1});
}

TEST_CASE("triangle second-step frequency is 1/2") {
    const Graph g = synthetic::complete_graph(3);
    int hits = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        Rng rng(derive_seed(42, {static_cast<std::uint64_t>(i)}));
        const Walk w = uniform_walk(g, 0, 2, rng);
        REQUIRE(w.nodes.size() == 2);
        hits += w.nodes[1] == 1;
    }
    const double freq = static_cast<double>(hits) / trials;
    CHECK(freq == doctest::Approx(0.5).epsilon(0.04));  // 0.5 +/- 0.02
}

TEST_CASE("walks respect adjacency") {
    Rng seed_rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = synthetic::erdos_renyi(30, 0.15, seed_rng.next_u64());
        for (int i = 0; i < 50; ++i) {
            Rng rng(seed_rng.next_u64());
            const auto start =
                static_cast<NodeId>(seed_rng.next_bounded(static_cast<std::uint32_t>(g.n_nodes())));
            const Walk w = uniform_walk(g, start, 40, rng);
            CHECK(w.nodes.front() == start);
            for (std::size_t j = 1; j < w.nodes.size(); ++j)
                CHECK(g.has_edge(w.nodes[j - 1], w.nodes[j]));
        }
    }
}

TEST_CASE("errors") {
    const Graph g = synthetic::path_graph(3);
    Rng rng(1);
    CHECK_THROWS_AS(uniform_walk(g, 99, 5, rng), DataError);
    CHECK_THROWS_AS(uniform_walk(g, 0, 0, rng), DataError);
}

TEST_CASE("stationary visit frequency tracks degree") {
    // Fixed 20-node connected non-bipartite graph; starts drawn
    // degree-proportionally put the chain in its stationary distribution,
    // where visit frequency is degree/2m.
    const Graph g = synthetic::erdos_renyi(20, 0.25, 2024);
    REQUIRE(g.n_edges() > 20);
    std::vector<NodeId> start_lottery;
    for (NodeId v = 0; v < g.n_nodes(); ++v) {
        for (std::size_t i = 0; i < g.degree(v); ++i) start_lottery.push_back(v);
        REQUIRE(g.degree(v) > 0);
    }

    std::vector<std::size_t> visits(g.n_nodes(), 0);
    std::size_t total = 0;
    Rng rng(5);
    for (int i = 0; i < 2000; ++i) {
        const NodeId start = start_lottery[rng.next_bounded(
            static_cast<std::uint32_t>(start_lottery.size()))];
        const Walk w = uniform_walk(g, start, 500, rng);
        for (NodeId v : w.nodes) ++visits[v];
        total += w.nodes.size();
    }
    for (NodeId v = 0; v < g.n_nodes(); ++v) {
        const double expected = static_cast<double>(g.degree(v)) /
                                (2.0 * static_cast<double>(g.n_edges()));
        const double observed = static_cast<double>(visits[v]) / static_cast<double>(total);
        CHECK(observed == doctest::Approx(expected).epsilon(0.05));
    }
}

TEST_CASE("pool counts and start nodes") {
    const Graph g = synthetic::path_graph(3);
    UniformWalkGenerator gen(10);
    const WalkPool pool = build_pool(g, gen, 2, 10, 17);
    CHECK(pool.walks.size() == 6);
    for (NodeId v = 0; v < 3; ++v) {
        for (int i = 0; i < 2; ++i) CHECK(pool.at(v, i).nodes.front() == v);
    }
}

TEST_CASE("pool determinism") {
    const Graph g = synthetic::erdos_renyi(25, 0.2, 3);
    UniformWalkGenerator gen(20);
    const WalkPool a = build_pool(g, gen, 5, 20, 99);
    const WalkPool b = build_pool(g, gen, 5, 20, 99);
    REQUIRE(a.walks.size() == b.walks.size());
    for (std::size_t i = 0; i < a.walks.size(); ++i)
        CHECK(a.walks[i].nodes == b.walks[i].nodes);
}

TEST_CASE("pool sampling") {
    const Graph g = synthetic::ring_graph(5);
    UniformWalkGenerator gen(8);
    const WalkPool pool = build_pool(g, gen, 30, 8, 7);

    SUBCASE("count = pool_size is a permutation") {
        Rng rng(1);
        const auto walks = sample_from_pool(pool, 0, 30, rng);
        REQUIRE(walks.size() == 30);
        std::multiset<std::vector<NodeId>> got, want;
        for (const auto& w : walks) got.insert(w.nodes);
        for (int i = 0; i < 30; ++i) want.insert(pool.at(0, i).nodes);
        CHECK(got == want);
    }
    SUBCASE("count = 0 is empty") {
        Rng rng(1);
        CHECK(sample_from_pool(pool, 0, 0, rng).empty());
    }
    SUBCASE("count > pool_size") {
        Rng rng(1);
        CHECK_THROWS_WITH_AS(sample_from_pool(pool, 0, 31, rng),
                             doctest::Contains("pool exhausted"), DataError);
    }
    SUBCASE("inclusion frequency is count/pool_size") {
        // Indices are distinguished by planting distinct walks per index via a
        // separate tracking map keyed on walk content.
        std::map<std::vector<NodeId>, int> count_of;
        const int trials = 20000;
        for (int t = 0; t < trials; ++t) {
            Rng rng(derive_seed(1234, {static_cast<std::uint64_t>(t)}));
            for (const auto& w : sample_from_pool(pool, 2, 10, rng)) ++count_of[w.nodes];
        }
        // Aggregate over distinct contents; duplicates pool entries add up, so
        // compare total inclusions to the exact expectation 10/30 per slot.
        double total = 0;
        for (auto& [_, c] : count_of) total += c;
        CHECK(total / trials == doctest::Approx(10.0));
        // Per-slot check needs distinguishable entries; ring walks from one
        // start collide rarely for length 8, so check the dominant ones.
        int distinct_ok = 0;
        for (auto& [_, c] : count_of) {
            const double freq = static_cast<double>(c) / trials;
            if (freq < 0.9) {  // not a duplicated-content aggregate
                CHECK(freq == doctest::Approx(1.0 / 3.0).epsilon(0.06));
                ++distinct_ok;
            }
        }
        CHECK(distinct_ok > 0);
    }
}

TEST_CASE("pool save/load round trip") {
    const Graph g = synthetic::ring_graph(6);
    UniformWalkGenerator gen(12);
    const WalkPool pool = build_pool(g, gen, 3, 12, 21);
    std::ostringstream out;
    save_pool(pool, g, out);
    std::istringstream in(out.str());
    const WalkPool loaded = load_pool(in, g);
    CHECK(loaded.generator_tag == pool.generator_tag);
    CHECK(loaded.pool_size == pool.pool_size);
    CHECK(loaded.length == pool.length);
    CHECK(loaded.seed == pool.seed);
    REQUIRE(loaded.walks.size() == pool.walks.size());
    for (std::size_t i = 0; i < pool.walks.size(); ++i)
        CHECK(loaded.walks[i].nodes == pool.walks[i].nodes);
}

}  // TEST_SUITE
