#include "multiwalk/walkgen.hpp"

#include <exception>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace multiwalk {

Walk uniform_walk(const Graph& g, NodeId start, int length, Rng& rng) {
    if (start >= g.n_nodes()) throw DataError("invalid start id " + std::to_string(start));
    if (length < 1) throw DataError("walk length must be >= 1");

    Walk w;
    w.generator_tag = "deepwalk";
    w.nodes.reserve(static_cast<std::size_t>(length));
    NodeId cur = start;
    w.nodes.push_back(cur);
    while (w.nodes.size() < static_cast<std::size_t>(length)) {
        auto nb = g.neighbors(cur);
        if (nb.empty()) break;  // dead end: truncate
        cur = nb[rng.next_bounded(static_cast<std::uint32_t>(nb.size()))];
        w.nodes.push_back(cur);
    }
    return w;
}

WalkPool build_pool(const Graph& g, const WalkGenerator& gen, int pool_size, int length,
                    std::uint64_t seed) {
    if (pool_size < 1) throw DataError("pool_size must be >= 1");

    WalkPool pool;
    pool.generator_tag = gen.tag();
    pool.pool_size = pool_size;
    pool.length = length;
    pool.seed = seed;
    pool.n_nodes = g.n_nodes();
    pool.walks.resize(g.n_nodes() * static_cast<std::size_t>(pool_size));

    const auto n = static_cast<std::int64_t>(g.n_nodes());
    std::exception_ptr error = nullptr;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t v = 0; v < n; ++v) {
        try {
            for (int i = 0; i < pool_size; ++i) {
                Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(v),
                                           static_cast<std::uint64_t>(i)}));
                pool.walks[static_cast<std::size_t>(v) * pool_size + i] =
                    gen.generate(g, static_cast<NodeId>(v), length, rng);
            }
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return pool;
}

std::vector<Walk> sample_from_pool(const WalkPool& pool, NodeId v, int count, Rng& rng) {
    if (count > pool.pool_size) throw DataError("pool exhausted");
    if (v >= pool.n_nodes) throw DataError("invalid node id " + std::to_string(v));

    // Partial Fisher-Yates over the index range: first `count` positions are a
    // uniform without-replacement draw.
    std::vector<int> idx(static_cast<std::size_t>(pool.pool_size));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Walk> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        auto j = i + static_cast<int>(rng.next_bounded(
                         static_cast<std::uint32_t>(pool.pool_size - i)));
        std::swap(idx[i], idx[j]);
        out.push_back(pool.at(v, idx[i]));
    }
    return out;
}

void save_pool(const WalkPool& pool, const Graph& g, std::ostream& out) {
    out << "# generator=" << pool.generator_tag << " pool_size=" << pool.pool_size
        << " length=" << pool.length << " seed=" << pool.seed << '\n';
    for (const auto& w : pool.walks) {
        for (std::size_t i = 0; i < w.nodes.size(); ++i) {
            if (i) out << ' ';
            out << g.name(w.nodes[i]);
        }
        out << '\n';
    }
}

WalkPool load_pool(std::istream& in, const Graph& g) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("# generator=", 0) != 0)
        throw DataError("pool file missing header");

    WalkPool pool;
    pool.n_nodes = g.n_nodes();
    {
        std::istringstream hs(header.substr(1));
        std::string kv;
        while (hs >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) continue;
            auto key = kv.substr(0, eq);
            auto val = kv.substr(eq + 1);
            if (key == "generator") pool.generator_tag = val;
            else if (key == "pool_size") pool.pool_size = std::stoi(val);
            else if (key == "length") pool.length = std::stoi(val);
            else if (key == "seed") pool.seed = std::stoull(val);
        }
    }
    if (pool.pool_size < 1) throw DataError("pool file header missing pool_size");

    WalkCorpus corpus = load_corpus(in, g, pool.generator_tag);
    if (corpus.size() != g.n_nodes() * static_cast<std::size_t>(pool.pool_size))
        throw DataError("pool file walk count does not match graph and pool_size");
    pool.walks = std::move(corpus.walks);
    for (NodeId v = 0; v < g.n_nodes(); ++v) {
        for (int i = 0; i < pool.pool_size; ++i) {
            if (pool.at(v, i).nodes.front() != v)
                throw DataError("pool file walk does not start at its key node");
        }
    }
    return pool;
}

}  // namespace multiwalk
