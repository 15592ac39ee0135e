#pragma once

#include <cstdint>
#include <vector>

#include "multiwalk/embed.hpp"
#include "multiwalk/graph.hpp"
#include "multiwalk/walk.hpp"
#include "multiwalk/walkgen.hpp"

namespace multiwalk {

// One generator's share of the plan: N walks of the given length per node.
struct PlanEntry {
    const WalkGenerator* generator = nullptr;
    int walks_per_node = 0;
    int walk_length = 0;
};

struct WalkPlan {
    std::vector<PlanEntry> entries;

    int total_walks_per_node() const;
    void validate() const;  // every N >= 0, sum >= 1, generators set
};

// (uniform walks, structural walks) per node; the experiment knob.
struct MixPair {
    int num_walks_dw = 0;
    int num_walks_s2v = 0;
};

// For each node v (ascending), for each plan entry m, exactly N[m] fresh
// walks starting at v; corpus order is (v, m, i). Deterministic given seed,
// at any thread count.
WalkCorpus generate_corpus(const Graph& g, const WalkPlan& plan, std::uint64_t seed);

// Same loop nest, but walks are drawn without replacement from precomputed
// pools: num_walks_dw from the uniform pool, then num_walks_s2v from the
// structural pool, per node.
WalkCorpus generate_corpus_from_pools(const WalkPool& uniform_pool,
                                      const WalkPool& struct_pool, const MixPair& pair,
                                      std::uint64_t seed);

// Corpus generation composed with SkipGram training: the full procedure.
EmbeddingMatrix generate_embeddings(const Graph& g, const WalkPlan& plan,
                                    std::uint64_t corpus_seed,
                                    const SkipGramParams& sg);
EmbeddingMatrix generate_embeddings(const WalkPool& uniform_pool,
                                    const WalkPool& struct_pool, const MixPair& pair,
                                    std::uint64_t corpus_seed,
                                    const SkipGramParams& sg);

}  // namespace multiwalk
