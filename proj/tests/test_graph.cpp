#include <doctest.h>

#include <sstream>

#include "multiwalk/graph.hpp"
#include "multiwalk/rng.hpp"
#include "multiwalk/synthetic.hpp"

using namespace multiwalk;

namespace {

Graph load_str(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("minimal path graph") {
    const Graph g = load_str("a b\nb c\n");
    CHECK(g.n_nodes() == 3);
    CHECK(g.n_edges() == 2);
    REQUIRE(g.degree(0) == 1);
    CHECK(g.neighbors(0)[0] == 1);  // a's only neighbor is b
    CHECK(g.name(0) == "a");
    CHECK(g.name(2) == "c");
}

TEST_CASE("duplicates and self-loops dropped") {
    const Graph g = load_str("a b\nb a\na a\n");
    CHECK(g.n_nodes() == 2);
    CHECK(g.n_edges() == 1);
}

TEST_CASE("comments and extra tokens") {
    const Graph g = load_str("# header\na b 0.5 extra\n\nb c 1.0\n");
    CHECK(g.n_nodes() == 3);
    CHECK(g.n_edges() == 2);
}

TEST_CASE("parse error names the line") {
    std::istringstream in("a b\nc\n");
    CHECK_THROWS_WITH_AS(load_edge_list(in), doctest::Contains("line 2"), DataError);
}

TEST_CASE("empty input") {
    std::istringstream in("# nothing\n");
    CHECK_THROWS_WITH_AS(load_edge_list(in), doctest::Contains("empty graph"), DataError);
}

TEST_CASE("degree") {
    const Graph star = synthetic::star_graph(5);
    CHECK(star.degree(0) == 5);
    const Graph ring = synthetic::ring_graph(7);
    for (NodeId v = 0; v < 7; ++v) CHECK(ring.degree(v) == 2);
    // c appears only in a dropped self-loop line: isolated
    const Graph g = load_str("a b\nc c\n");
    CHECK(g.degree(2) == 0);
    CHECK_THROWS_AS((void)g.degree(99), DataError);
}

TEST_CASE("labels: single, multi, errors") {
    const Graph g = load_str("a b\nb c\n");
    {
        std::istringstream in("a 1\nb 2\n");
        const LabelMap lm = load_labels(in, g);
        CHECK(lm.n_classes() == 2);
        CHECK(lm.labeled(0));
        CHECK_FALSE(lm.labeled(2));
        CHECK(lm.labeled_nodes() == std::vector<NodeId>{0, 1});
    }
    {
        std::istringstream in("a 1 3\nb 2\n");
        const LabelMap lm = load_labels(in, g);
        CHECK(lm.labels[0].size() == 2);
        CHECK(lm.n_classes() == 3);
    }
    {
        std::istringstream in("zzz 1\n");
        CHECK_THROWS_WITH_AS(load_labels(in, g), doctest::Contains("zzz"), DataError);
    }
    {
        std::istringstream in("a 1\na 2\n");
        CHECK_THROWS_WITH_AS(load_labels(in, g), doctest::Contains("twice"), DataError);
    }
}

TEST_CASE("invariants on random edge lists") {
    Rng rng(123);
    for (int trial = 0; trial < 30; ++trial) {
        // Random raw edge text with duplicates and self-loops mixed in.
        std::ostringstream text;
        const int n = 2 + static_cast<int>(rng.next_bounded(20));
        const int lines = 1 + static_cast<int>(rng.next_bounded(60));
        for (int i = 0; i < lines; ++i) {
            text << 'v' << rng.next_bounded(static_cast<std::uint32_t>(n)) << ' ' << 'v'
                 << rng.next_bounded(static_cast<std::uint32_t>(n)) << '\n';
        }
        Graph g;
        try {
            g = load_str(text.str());
        } catch (const DataError&) {
            continue;  // all lines were self-loops on one vertex: empty is fine
        }

        std::size_t degree_sum = 0;
        for (NodeId u = 0; u < g.n_nodes(); ++u) {
            auto nb = g.neighbors(u);
            degree_sum += nb.size();
            for (std::size_t i = 0; i < nb.size(); ++i) {
                CHECK(nb[i] != u);                       // no self-loop
                if (i > 0) CHECK(nb[i] > nb[i - 1]);     // strictly increasing
                CHECK(g.has_edge(nb[i], u));             // symmetry
            }
        }
        CHECK(g.n_edges() == degree_sum / 2);
    }
}

TEST_CASE("round trip") {
    Rng rng(456);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = synthetic::erdos_renyi(3 + static_cast<int>(rng.next_bounded(20)),
                                               0.4, rng.next_u64());
        std::ostringstream s1;
        save_edge_list(g, s1);
        if (s1.str().empty()) continue;  // no edges: nothing to reload
        std::istringstream in1(s1.str());
        const Graph g2 = load_edge_list(in1);

        // The name-labeled edge set survives.
        REQUIRE(g2.n_edges() == g.n_edges());
        for (NodeId u = 0; u < g.n_nodes(); ++u) {
            if (g.degree(u) == 0) continue;
            for (NodeId v : g.neighbors(u)) {
                bool found = false;
                for (NodeId u2 = 0; u2 < g2.n_nodes(); ++u2) {
                    if (g2.name(u2) != g.name(u)) continue;
                    for (NodeId v2 : g2.neighbors(u2)) found |= g2.name(v2) == g.name(v);
                }
                CHECK(found);
            }
        }

        // Canonicalization is a fixed point, and canonical-form graphs
        // round-trip to identical Graphs.
        std::ostringstream s2;
        save_edge_list(g2, s2);
        CHECK(s2.str() == s1.str());
        std::istringstream in2(s2.str());
        CHECK(load_edge_list(in2) == g2);
    }
}

TEST_CASE("label save/load round trip") {
    const Graph g = synthetic::star_graph(4);
    const LabelMap lm = synthetic::degree_quantile_labels(g, 2);
    std::ostringstream out;
    save_labels(lm, g, out);
    std::istringstream in(out.str());
    const LabelMap lm2 = load_labels(in, g);
    CHECK(lm2.n_classes() == lm.n_classes());
    for (NodeId v = 0; v < g.n_nodes(); ++v) {
        REQUIRE(lm2.labels[v].size() == lm.labels[v].size());
        for (std::size_t i = 0; i < lm.labels[v].size(); ++i) {
            CHECK(lm.class_names[lm.labels[v][i]] == lm2.class_names[lm2.labels[v][i]]);
        }
    }
}

}  // TEST_SUITE
