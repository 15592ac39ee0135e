#include "multiwalk/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "multiwalk/rng.hpp"

namespace multiwalk {
namespace synthetic {

namespace {

std::vector<std::string> make_names(int n) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
    return names;
}

using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

Graph from(int n, EdgeList edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph::from_edges(make_names(n), edges);
}

}  // namespace

Graph path_graph(int n) {
    EdgeList edges;
    for (int i = 0; i + 1 < n; ++i)
        edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
    return from(n, std::move(edges));
}

Graph ring_graph(int n) {
    EdgeList edges;
    for (int i = 0; i < n; ++i)
        edges.emplace_back(static_cast<NodeId>(std::min(i, (i + 1) % n)),
                           static_cast<NodeId>(std::max(i, (i + 1) % n)));
    return from(n, std::move(edges));
}

Graph star_graph(int leaves) {
    EdgeList edges;
    for (int i = 1; i <= leaves; ++i)
        edges.emplace_back(0, static_cast<NodeId>(i));
    return from(leaves + 1, std::move(edges));
}

Graph complete_graph(int n) {
    EdgeList edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v)
            edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    return from(n, std::move(edges));
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
    Rng rng(derive_seed(seed, Stream::Synthetic, {1}));
    EdgeList edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (rng.next_double() < p)
                edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
        }
    }
    return from(n, std::move(edges));
}

Graph planted_partition(int per_block, double p_in, double p_out, std::uint64_t seed) {
    Rng rng(derive_seed(seed, Stream::Synthetic, {2}));
    const int n = 2 * per_block;
    EdgeList edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const bool same = (u < per_block) == (v < per_block);
            if (rng.next_double() < (same ? p_in : p_out))
                edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
        }
    }
    return from(n, std::move(edges));
}

LabelMap planted_partition_labels(const Graph& g, int per_block) {
    LabelMap lm;
    lm.class_names = {"0", "1"};
    lm.labels.assign(g.n_nodes(), {});
    for (NodeId v = 0; v < g.n_nodes(); ++v)
        lm.labels[v] = {v < static_cast<NodeId>(per_block) ? 0 : 1};
    return lm;
}

Graph barbell_graph(int clique, int path_len) {
    const int n = 2 * clique + path_len;
    EdgeList edges;
    auto add_clique = [&](int base) {
        for (int u = 0; u < clique; ++u) {
            for (int v = u + 1; v < clique; ++v)
                edges.emplace_back(static_cast<NodeId>(base + u),
                                   static_cast<NodeId>(base + v));
        }
    };
    add_clique(0);
    add_clique(clique);
    const int path_base = 2 * clique;
    for (int i = 0; i + 1 < path_len; ++i)
        edges.emplace_back(static_cast<NodeId>(path_base + i),
                           static_cast<NodeId>(path_base + i + 1));
    // attachment vertices: node 0 into the path head, node `clique` into the tail
    edges.emplace_back(0, static_cast<NodeId>(path_base));
    edges.emplace_back(static_cast<NodeId>(clique),
                       static_cast<NodeId>(path_base + path_len - 1));
    return from(n, std::move(edges));
}

LabelMap barbell_role_labels(const Graph& g, int clique, int path_len) {
    LabelMap lm;
    lm.class_names = {"clique", "attachment", "path"};
    lm.labels.assign(g.n_nodes(), {});
    for (int v = 0; v < 2 * clique + path_len; ++v) {
        std::int32_t cls;
        if (v == 0 || v == clique) cls = 1;
        else if (v < 2 * clique) cls = 0;
        else cls = 2;
        lm.labels[static_cast<std::size_t>(v)] = {cls};
    }
    return lm;
}

Graph airports_like(int n, int m, std::uint64_t seed) {
    // Chung-Lu style: expected degree of node i follows a truncated power
    // law; same-region pairs are boosted to add community structure on top of
    // the hub hierarchy.
    const int n_regions = 8;
    const double alpha = 0.75;
    const double region_boost = 4.0;

    Rng rng(derive_seed(seed, Stream::Synthetic, {3}));
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        w[static_cast<std::size_t>(i)] = std::pow(static_cast<double>(i + 4), -alpha);
    std::vector<int> region(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) region[static_cast<std::size_t>(i)] = i % n_regions;

    // Pair score, used both for Bernoulli sampling (after calibration) and
    // for ranking when topping the edge count up to exactly m.
    auto score = [&](int u, int v) {
        const double s = w[static_cast<std::size_t>(u)] * w[static_cast<std::size_t>(v)];
        return region[static_cast<std::size_t>(u)] == region[static_cast<std::size_t>(v)]
                   ? s * region_boost
                   : s;
    };

    // Calibrate the scale so the expected edge count hits m.
    double lo = 0.0, hi = 1.0;
    auto expected = [&](double scale) {
        double e = 0.0;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) e += std::min(1.0, scale * score(u, v));
        }
        return e;
    };
    while (expected(hi) < m) hi *= 2.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (expected(mid) < m ? lo : hi) = mid;
    }
    const double scale = 0.5 * (lo + hi);

    std::set<std::pair<NodeId, NodeId>> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (rng.next_double() < std::min(1.0, scale * score(u, v)))
                edges.emplace(static_cast<NodeId>(u), static_cast<NodeId>(v));
        }
    }

    // Connect stragglers: attach every component to node 0's component via
    // its lowest-id node and a hub chosen by weight.
    {
        std::vector<int> comp(static_cast<std::size_t>(n), -1);
        std::vector<NodeId> stack;
        std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(n));
        for (auto [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        int n_comp = 0;
        for (int s = 0; s < n; ++s) {
            if (comp[static_cast<std::size_t>(s)] != -1) continue;
            comp[static_cast<std::size_t>(s)] = n_comp;
            stack.push_back(static_cast<NodeId>(s));
            while (!stack.empty()) {
                NodeId u = stack.back();
                stack.pop_back();
                for (NodeId v : adj[u]) {
                    if (comp[v] == -1) {
                        comp[v] = n_comp;
                        stack.push_back(v);
                    }
                }
            }
            ++n_comp;
        }
        for (int c = 1; c < n_comp; ++c) {
            NodeId rep = 0;
            for (int v = 0; v < n; ++v) {
                if (comp[static_cast<std::size_t>(v)] == c) {
                    rep = static_cast<NodeId>(v);
                    break;
                }
            }
            const NodeId hub = static_cast<NodeId>(rng.next_bounded(16));  // heavy nodes
            edges.emplace(std::min(hub, rep), std::max(hub, rep));
        }
    }

    // Trim or top up to exactly m edges. Removal avoids degree-1 endpoints so
    // the graph stays connected enough; additions prefer high-score pairs.
    std::vector<std::pair<NodeId, NodeId>> elist(edges.begin(), edges.end());
    if (static_cast<int>(elist.size()) > m) {
        std::vector<int> deg(static_cast<std::size_t>(n), 0);
        for (auto [u, v] : elist) {
            ++deg[u];
            ++deg[v];
        }
        // deterministic shuffle, then greedy removal
        for (std::size_t i = elist.size() - 1; i > 0; --i) {
            const auto j = rng.next_bounded(static_cast<std::uint32_t>(i + 1));
            std::swap(elist[i], elist[j]);
        }
        std::vector<std::pair<NodeId, NodeId>> kept;
        int to_remove = static_cast<int>(elist.size()) - m;
        for (auto [u, v] : elist) {
            if (to_remove > 0 && deg[u] > 2 && deg[v] > 2) {
                --deg[u];
                --deg[v];
                --to_remove;
                continue;
            }
            kept.emplace_back(u, v);
        }
        elist = std::move(kept);
    }
    while (static_cast<int>(elist.size()) < m) {
        const auto u = static_cast<NodeId>(rng.next_bounded(static_cast<std::uint32_t>(n)));
        const auto v = static_cast<NodeId>(rng.next_bounded(static_cast<std::uint32_t>(n)));
        if (u == v) continue;
        auto e = std::make_pair(std::min(u, v), std::max(u, v));
        if (edges.count(e)) continue;
        // bias additions toward plausible pairs
        if (rng.next_double() >
            std::min(1.0, scale * score(static_cast<int>(e.first),
                                        static_cast<int>(e.second)) * 4.0))
            continue;
        edges.insert(e);
        elist.push_back(e);
    }

    return from(n, std::move(elist));
}

LabelMap degree_quantile_labels(const Graph& g, int n_classes) {
    const auto n = g.n_nodes();
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
        return a < b;
    });

    LabelMap lm;
    for (int c = 0; c < n_classes; ++c) lm.class_names.push_back(std::to_string(c));
    lm.labels.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        const auto cls = static_cast<std::int32_t>(
            std::min<std::size_t>(i * static_cast<std::size_t>(n_classes) / n,
                                  static_cast<std::size_t>(n_classes - 1)));
        lm.labels[order[i]] = {cls};
    }
    return lm;
}

}  // namespace synthetic
}  // namespace multiwalk
