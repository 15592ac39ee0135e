#include "multiwalk/multiwalk.hpp"

#include <exception>
#include <stdexcept>
#include <string>

#include "multiwalk/rng.hpp"

namespace multiwalk {

int WalkPlan::total_walks_per_node() const {
    int total = 0;
    for (const auto& e : entries) total += e.walks_per_node;
    return total;
}

void WalkPlan::validate() const {
    for (const auto& e : entries) {
        if (e.generator == nullptr) throw DataError("plan entry has no generator");
        if (e.walks_per_node < 0) throw DataError("walks per node must be >= 0");
        if (e.walk_length < 1) throw DataError("walk length must be >= 1");
    }
    if (total_walks_per_node() < 1) throw DataError("plan requests no walks");
}

WalkCorpus generate_corpus(const Graph& g, const WalkPlan& plan, std::uint64_t seed) {
    plan.validate();
    const std::size_t per_node = static_cast<std::size_t>(plan.total_walks_per_node());

    WalkCorpus corpus;
    corpus.walks.resize(g.n_nodes() * per_node);
    const auto n = static_cast<std::int64_t>(g.n_nodes());
    // Exceptions must not leave the parallel region; the first one is
    // captured and rethrown afterwards with (node, generator) context.
    std::exception_ptr error = nullptr;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t v = 0; v < n; ++v) {
        std::size_t slot = static_cast<std::size_t>(v) * per_node;
        for (std::size_t m = 0; m < plan.entries.size(); ++m) {
            const auto& entry = plan.entries[m];
            for (int i = 0; i < entry.walks_per_node; ++i) {
                Rng rng(derive_seed(seed, Stream::Corpus,
                                    {static_cast<std::uint64_t>(m),
                                     static_cast<std::uint64_t>(v),
                                     static_cast<std::uint64_t>(i)}));
                try {
                    corpus.walks[slot++] = entry.generator->generate(
                        g, static_cast<NodeId>(v), entry.walk_length, rng);
                } catch (const std::exception& e) {
                    const DataError wrapped("generator \"" + entry.generator->tag() +
                                            "\" failed at node " +
                                            g.name(static_cast<NodeId>(v)) + ": " +
                                            e.what());
#pragma omp critical
                    if (!error) error = std::make_exception_ptr(wrapped);
                }
            }
        }
    }
    if (error) std::rethrow_exception(error);
    return corpus;
}

WalkCorpus generate_corpus_from_pools(const WalkPool& uniform_pool,
                                      const WalkPool& struct_pool, const MixPair& pair,
                                      std::uint64_t seed) {
    if (pair.num_walks_dw < 0 || pair.num_walks_s2v < 0)
        throw DataError("mix counts must be >= 0");
    if (pair.num_walks_dw + pair.num_walks_s2v < 1)
        throw DataError("mix requests no walks");
    if (pair.num_walks_dw > 0 && pair.num_walks_dw > uniform_pool.pool_size)
        throw DataError("pool exhausted");
    if (pair.num_walks_s2v > 0 && pair.num_walks_s2v > struct_pool.pool_size)
        throw DataError("pool exhausted");
    if (pair.num_walks_dw > 0 && pair.num_walks_s2v > 0 &&
        uniform_pool.n_nodes != struct_pool.n_nodes)
        throw DataError("pools disagree on node count");

    const std::size_t n_nodes =
        pair.num_walks_dw > 0 ? uniform_pool.n_nodes : struct_pool.n_nodes;
    const std::size_t per_node =
        static_cast<std::size_t>(pair.num_walks_dw + pair.num_walks_s2v);

    WalkCorpus corpus;
    corpus.walks.resize(n_nodes * per_node);
    const auto n = static_cast<std::int64_t>(n_nodes);
#pragma omp parallel for schedule(static)
    for (std::int64_t v = 0; v < n; ++v) {
        std::size_t slot = static_cast<std::size_t>(v) * per_node;
        if (pair.num_walks_dw > 0) {
            Rng rng(derive_seed(seed, Stream::Mix, {0, static_cast<std::uint64_t>(v)}));
            auto walks = sample_from_pool(uniform_pool, static_cast<NodeId>(v),
                                          pair.num_walks_dw, rng);
            for (auto& w : walks) corpus.walks[slot++] = std::move(w);
        }
        if (pair.num_walks_s2v > 0) {
            Rng rng(derive_seed(seed, Stream::Mix, {1, static_cast<std::uint64_t>(v)}));
            auto walks = sample_from_pool(struct_pool, static_cast<NodeId>(v),
                                          pair.num_walks_s2v, rng);
            for (auto& w : walks) corpus.walks[slot++] = std::move(w);
        }
    }
    return corpus;
}

EmbeddingMatrix generate_embeddings(const Graph& g, const WalkPlan& plan,
                                    std::uint64_t corpus_seed, const SkipGramParams& sg) {
    return train(generate_corpus(g, plan, corpus_seed), sg);
}

EmbeddingMatrix generate_embeddings(const WalkPool& uniform_pool,
                                    const WalkPool& struct_pool, const MixPair& pair,
                                    std::uint64_t corpus_seed, const SkipGramParams& sg) {
    return train(generate_corpus_from_pools(uniform_pool, struct_pool, pair, corpus_seed),
                 sg);
}

}  // namespace multiwalk
