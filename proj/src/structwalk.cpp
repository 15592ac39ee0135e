#include "multiwalk/structwalk.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <unordered_map>

namespace multiwalk {

namespace {

constexpr std::uint16_t kUnreached = 0xffff;

// BFS depths from src; out[v] = hop distance, kUnreached if not reachable.
void bfs_depths(const Graph& g, NodeId src, std::vector<std::uint16_t>& out) {
    out.assign(g.n_nodes(), kUnreached);
    out[src] = 0;
    std::vector<NodeId> frontier{src}, next;
    std::uint16_t d = 0;
    while (!frontier.empty()) {
        ++d;
        next.clear();
        for (NodeId u : frontier) {
            for (NodeId v : g.neighbors(u)) {
                if (out[v] == kUnreached) {
                    out[v] = d;
                    next.push_back(v);
                }
            }
        }
        frontier.swap(next);
    }
}

}  // namespace

DegreeRingSequence degree_ring(const Graph& g, NodeId v, int k) {
    if (v >= g.n_nodes()) throw DataError("invalid node id " + std::to_string(v));
    if (k < 0) throw DataError("ring distance must be >= 0");

    DegreeRingSequence ring;
    ring.node = v;
    ring.k = k;
    if (k == 0) {
        ring.degrees.push_back(static_cast<std::int32_t>(g.degree(v)));
        return ring;
    }
    std::vector<std::uint16_t> dist;
    bfs_depths(g, v, dist);
    for (NodeId w = 0; w < g.n_nodes(); ++w) {
        if (dist[w] == k) ring.degrees.push_back(static_cast<std::int32_t>(g.degree(w)));
    }
    std::sort(ring.degrees.begin(), ring.degrees.end());
    return ring;
}

double dtw_distance(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
    if (a.empty() || b.empty()) throw DataError("undefined DTW");

    const std::size_t n = a.size(), m = b.size();
    // Element cost max(x,y)/min(x,y) - 1 with degree 0 mapped to 1 (only an
    // isolated node's k=0 signature can contain 0). Reciprocals of b are
    // hoisted so the inner loops multiply instead of divide.
    std::vector<double> inv_b(m), bd(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double x = b[j] > 0 ? static_cast<double>(b[j]) : 1.0;
        bd[j] = x;
        inv_b[j] = 1.0 / x;
    }

    std::vector<double> prev(m), curr(m), cost(m);
    auto fill_cost_row = [&](std::int32_t ai_raw) {
        const double ai = ai_raw > 0 ? static_cast<double>(ai_raw) : 1.0;
        const double inv_ai = 1.0 / ai;
        for (std::size_t j = 0; j < m; ++j) {
            cost[j] = bd[j] <= ai ? ai * inv_b[j] - 1.0 : bd[j] * inv_ai - 1.0;
        }
    };

    fill_cost_row(a[0]);
    prev[0] = cost[0];
    for (std::size_t j = 1; j < m; ++j) prev[j] = prev[j - 1] + cost[j];

    for (std::size_t i = 1; i < n; ++i) {
        fill_cost_row(a[i]);
        curr[0] = prev[0] + cost[0];
        for (std::size_t j = 1; j < m; ++j) {
            curr[j] = cost[j] + std::min({prev[j - 1], prev[j], curr[j - 1]});
        }
        prev.swap(curr);
    }
    return prev[m - 1];
}

std::optional<double> structural_distance(const Graph& g, NodeId u, NodeId v, int k) {
    if (u == v) throw DataError("structural_distance requires u != v");
    double f = 0.0;
    for (int j = 0; j <= k; ++j) {
        DegreeRingSequence ru = degree_ring(g, u, j);
        DegreeRingSequence rv = degree_ring(g, v, j);
        if (ru.degrees.empty() || rv.degrees.empty()) return std::nullopt;
        f += dtw_distance(ru.degrees, rv.degrees);
    }
    return f;
}

int graph_diameter(const Graph& g) {
    const auto n = static_cast<std::int64_t>(g.n_nodes());
    int diam = 0;
#pragma omp parallel
    {
        std::vector<std::uint16_t> dist;
        int local = 0;
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t v = 0; v < n; ++v) {
            bfs_depths(g, static_cast<NodeId>(v), dist);
            for (std::uint16_t d : dist) {
                if (d != kUnreached && d > local) local = d;
            }
        }
#pragma omp critical
        diam = std::max(diam, local);
    }
    return diam;
}

int default_k_max(const Graph& g) { return std::min(graph_diameter(g), 5); }

MultilayerGraph build_multilayer(const Graph& g, int k_max) {
    if (k_max < 0) throw DataError("k_max must be >= 0");

    const std::size_t n = g.n_nodes();
    const auto n64 = static_cast<std::int64_t>(n);

    MultilayerGraph ml;
    ml.k_max = k_max;
    ml.n = static_cast<std::uint32_t>(n);
    ml.graph_hash = g.content_hash();
    ml.layer_weight.assign(static_cast<std::size_t>(k_max) + 1,
                           std::vector<double>(n * n, 0.0));
    ml.up_weight.assign(static_cast<std::size_t>(k_max) + 1, std::vector<double>(n, 1.0));

    // Hop-distance table, then per-(k, node) sorted degree rings. Total ring
    // mass is n per node, so this is O(n^2) ints.
    std::vector<std::uint16_t> dist_all(n * n);
#pragma omp parallel
    {
        std::vector<std::uint16_t> dist;
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t v = 0; v < n64; ++v) {
            bfs_depths(g, static_cast<NodeId>(v), dist);
            std::memcpy(&dist_all[static_cast<std::size_t>(v) * n], dist.data(),
                        n * sizeof(std::uint16_t));
        }
    }

    // ecc[v]: last hop with a non-empty ring. A pair is defined at layer k iff
    // k <= min(ecc(u), ecc(v)).
    std::vector<int> ecc(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        int e = 0;
        const std::uint16_t* row = &dist_all[v * n];
        for (std::size_t w = 0; w < n; ++w) {
            if (row[w] != kUnreached && row[w] > e) e = row[w];
        }
        ecc[v] = e;
    }

    // Cumulative distances over the strict upper triangle.
    auto tri = [n](std::size_t u, std::size_t v) {
        return u * n - u * (u + 1) / 2 + (v - u - 1);
    };
    std::vector<double> f(n * (n - 1) / 2, 0.0);

    std::vector<std::vector<std::int32_t>> ring(n);  // reused per layer
    for (int k = 0; k <= k_max; ++k) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t v = 0; v < n64; ++v) {
            auto& r = ring[static_cast<std::size_t>(v)];
            r.clear();
            if (k > ecc[v]) continue;
            const std::uint16_t* row = &dist_all[static_cast<std::size_t>(v) * n];
            for (std::size_t w = 0; w < n; ++w) {
                if (row[w] == k) r.push_back(static_cast<std::int32_t>(g.degree(
                                                 static_cast<NodeId>(w))));
            }
            std::sort(r.begin(), r.end());
        }

        // Intern identical ring signatures so each distinct DTW is computed
        // once; identical signatures contribute 0.
        std::vector<std::int32_t> sig(n, -1);
        std::vector<const std::vector<std::int32_t>*> sig_seq;
        {
            std::unordered_map<std::string, std::int32_t> intern;
            for (std::size_t v = 0; v < n; ++v) {
                if (k > ecc[v]) continue;
                const auto& r = ring[v];
                std::string key(reinterpret_cast<const char*>(r.data()),
                                r.size() * sizeof(std::int32_t));
                auto [it, inserted] =
                    intern.try_emplace(std::move(key), static_cast<std::int32_t>(sig_seq.size()));
                if (inserted) sig_seq.push_back(&r);
                sig[v] = it->second;
            }
        }
        const std::size_t ns = sig_seq.size();

        // Distinct signature pairs actually needed at this layer.
        std::vector<std::uint8_t> needed(ns * ns, 0);
        for (std::size_t u = 0; u < n; ++u) {
            if (k > ecc[u]) continue;
            for (std::size_t v = u + 1; v < n; ++v) {
                if (k > ecc[v]) continue;
                auto a = static_cast<std::size_t>(std::min(sig[u], sig[v]));
                auto b = static_cast<std::size_t>(std::max(sig[u], sig[v]));
                if (a != b) needed[a * ns + b] = 1;
            }
        }
        std::vector<std::size_t> tasks;
        for (std::size_t s = 0; s < ns * ns; ++s) {
            if (needed[s]) tasks.push_back(s);
        }
        std::vector<double> pair_dtw(ns * ns, 0.0);
        const auto n_tasks = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 8)
        for (std::int64_t t = 0; t < n_tasks; ++t) {
            const std::size_t s = tasks[static_cast<std::size_t>(t)];
            pair_dtw[s] = dtw_distance(*sig_seq[s / ns], *sig_seq[s % ns]);
        }

        // Accumulate f_k and emit this layer's weights.
        auto& layer = ml.layer_weight[static_cast<std::size_t>(k)];
#pragma omp parallel for schedule(dynamic, 8)
        for (std::int64_t u64i = 0; u64i < n64; ++u64i) {
            const auto u = static_cast<std::size_t>(u64i);
            if (k > ecc[u]) continue;
            for (std::size_t v = u + 1; v < n; ++v) {
                if (k > ecc[v]) continue;
                auto a = static_cast<std::size_t>(std::min(sig[u], sig[v]));
                auto b = static_cast<std::size_t>(std::max(sig[u], sig[v]));
                double& fv = f[tri(u, v)];
                if (a != b) fv += pair_dtw[a * ns + b];
                const double w = std::exp(-fv);
                layer[u * n + v] = w;
                layer[v * n + u] = w;
            }
        }

        // Gamma-based up weights: count incident edges strictly heavier than
        // the layer mean (each unordered pair counted once in the mean).
        double sum = 0.0;
        std::size_t cnt = 0;
        for (std::size_t u = 0; u < n; ++u) {
            if (k > ecc[u]) continue;
            for (std::size_t v = u + 1; v < n; ++v) {
                if (k > ecc[v]) continue;
                sum += layer[u * n + v];
                ++cnt;
            }
        }
        if (cnt > 0) {
            const double mean = sum / static_cast<double>(cnt);
            std::vector<std::int64_t> gamma(n, 0);
            for (std::size_t u = 0; u < n; ++u) {
                if (k > ecc[u]) continue;
                for (std::size_t v = u + 1; v < n; ++v) {
                    if (k > ecc[v]) continue;
                    if (layer[u * n + v] > mean) {
                        ++gamma[u];
                        ++gamma[v];
                    }
                }
            }
            for (std::size_t u = 0; u < n; ++u) {
                ml.up_weight[static_cast<std::size_t>(k)][u] =
                    std::log(static_cast<double>(gamma[u]) + std::exp(1.0));
            }
        }
    }

    // Row prefix sums for transition sampling.
    ml.row_prefix.assign(static_cast<std::size_t>(k_max) + 1,
                         std::vector<double>(n * n, 0.0));
    for (int k = 0; k <= k_max; ++k) {
        auto& layer = ml.layer_weight[static_cast<std::size_t>(k)];
        auto& prefix = ml.row_prefix[static_cast<std::size_t>(k)];
#pragma omp parallel for schedule(static)
        for (std::int64_t u = 0; u < n64; ++u) {
            const std::size_t base = static_cast<std::size_t>(u) * n;
            double acc = 0.0;
            for (std::size_t v = 0; v < n; ++v) {
                acc += layer[base + v];
                prefix[base + v] = acc;
            }
        }
    }
    return ml;
}

Walk structural_walk(const MultilayerGraph& ml, const Graph& g, NodeId start, int length,
                     double stay_prob, Rng& rng) {
    if (start >= g.n_nodes()) throw DataError("invalid start id " + std::to_string(start));
    if (length < 1) throw DataError("walk length must be >= 1");
    if (!(stay_prob > 0.0 && stay_prob < 1.0))
        throw DataError("stay_prob must be in (0, 1)");

    Walk w;
    w.generator_tag = "struc2vec";
    w.nodes.reserve(static_cast<std::size_t>(length));
    w.nodes.push_back(start);

    const std::uint32_t n = ml.n;
    NodeId cur = start;
    int layer = 0;
    while (w.nodes.size() < static_cast<std::size_t>(length)) {
        if (rng.next_double() < stay_prob) {
            const double total = ml.row_total(layer, cur);
            if (total <= 0.0) {
                if (layer > 0) {
                    --layer;
                    continue;
                }
                break;  // stuck at layer 0: truncate
            }
            const auto& prefix = ml.row_prefix[static_cast<std::size_t>(layer)];
            const double* row = &prefix[static_cast<std::size_t>(cur) * n];
            const double x = rng.next_double() * total;
            auto idx = static_cast<std::size_t>(std::upper_bound(row, row + n, x) - row);
            if (idx >= n) idx = n - 1;  // x rounded up to total
            while (idx > 0 && ml.weight(layer, cur, static_cast<NodeId>(idx)) <= 0.0) --idx;
            cur = static_cast<NodeId>(idx);
            w.nodes.push_back(cur);
        } else {
            if (ml.k_max == 0) continue;  // no layer moves possible
            if (layer == ml.k_max) {
                --layer;
            } else if (layer == 0) {
                ++layer;
            } else {
                const double up = ml.up_weight[static_cast<std::size_t>(layer)][cur];
                layer += rng.next_double() < up / (up + 1.0) ? 1 : -1;
            }
        }
    }
    return w;
}

namespace {
constexpr std::uint64_t kCacheMagic = 0x4d574d4c30303031ULL;  // "MWML0001"

template <typename T>
void write_raw(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_raw(std::istream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
}
}  // namespace

void save_multilayer(const MultilayerGraph& ml, std::ostream& out) {
    write_raw(out, kCacheMagic);
    write_raw(out, ml.graph_hash);
    write_raw(out, ml.k_max);
    write_raw(out, ml.n);
    for (const auto& layer : ml.layer_weight) {
        out.write(reinterpret_cast<const char*>(layer.data()),
                  static_cast<std::streamsize>(layer.size() * sizeof(double)));
    }
    for (const auto& up : ml.up_weight) {
        out.write(reinterpret_cast<const char*>(up.data()),
                  static_cast<std::streamsize>(up.size() * sizeof(double)));
    }
}

MultilayerGraph load_multilayer(std::istream& in) {
    std::uint64_t magic = 0;
    read_raw(in, magic);
    if (!in || magic != kCacheMagic) throw DataError("not a multilayer cache file");

    MultilayerGraph ml;
    read_raw(in, ml.graph_hash);
    read_raw(in, ml.k_max);
    read_raw(in, ml.n);
    if (!in || ml.k_max < 0) throw DataError("corrupt multilayer cache header");

    const std::size_t n = ml.n;
    ml.layer_weight.assign(static_cast<std::size_t>(ml.k_max) + 1,
                           std::vector<double>(n * n));
    for (auto& layer : ml.layer_weight) {
        in.read(reinterpret_cast<char*>(layer.data()),
                static_cast<std::streamsize>(layer.size() * sizeof(double)));
    }
    ml.up_weight.assign(static_cast<std::size_t>(ml.k_max) + 1, std::vector<double>(n));
    for (auto& up : ml.up_weight) {
        in.read(reinterpret_cast<char*>(up.data()),
                static_cast<std::streamsize>(up.size() * sizeof(double)));
    }
    if (!in) throw DataError("truncated multilayer cache");

    ml.row_prefix.assign(static_cast<std::size_t>(ml.k_max) + 1,
                         std::vector<double>(n * n, 0.0));
    for (int k = 0; k <= ml.k_max; ++k) {
        const auto& layer = ml.layer_weight[static_cast<std::size_t>(k)];
        auto& prefix = ml.row_prefix[static_cast<std::size_t>(k)];
        for (std::size_t u = 0; u < n; ++u) {
            double acc = 0.0;
            for (std::size_t v = 0; v < n; ++v) {
                acc += layer[u * n + v];
                prefix[u * n + v] = acc;
            }
        }
    }
    return ml;
}

MultilayerGraph load_or_build_multilayer(const Graph& g, int k_max,
                                         const std::string& cache_path) {
    {
        std::ifstream in(cache_path, std::ios::binary);
        if (in) {
            try {
                MultilayerGraph ml = load_multilayer(in);
                if (ml.graph_hash == g.content_hash() && ml.k_max == k_max &&
                    ml.n == g.n_nodes()) {
                    return ml;
                }
            } catch (const DataError&) {
                // stale or corrupt cache: rebuild below
            }
        }
    }
    MultilayerGraph ml = build_multilayer(g, k_max);
    std::ofstream out(cache_path, std::ios::binary);
    if (out) save_multilayer(ml, out);
    return ml;
}

}  // namespace multiwalk
