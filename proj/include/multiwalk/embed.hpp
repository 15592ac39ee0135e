#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "multiwalk/graph.hpp"
#include "multiwalk/rng.hpp"
#include "multiwalk/walk.hpp"

namespace multiwalk {

struct SkipGramParams {
    int dimension = 128;
    int window = 10;
    int epochs = 5;
    int negatives = 5;
    double initial_lr = 0.025;
    double final_lr = 1e-4;
    std::uint64_t seed = 1;
    // 1 = deterministic sequential training (bit-reproducible); >1 = hogwild
    // asynchronous updates, not reproducible run to run.
    int threads = 1;

    void validate() const;
};

struct Vocab {
    std::vector<NodeId> node_ids;  // ascending; row index = position
    std::vector<std::int64_t> counts;
    std::unordered_map<NodeId, std::int32_t> row_of;
};

Vocab build_vocab(const WalkCorpus& corpus);

// Unigram^0.75 negative-sampling distribution with O(1) alias-table draws.
class NegativeSampler {
public:
    explicit NegativeSampler(std::span<const std::int64_t> counts, double power = 0.75);

    std::int32_t sample(Rng& rng) const {
        const auto k = rng.next_bounded(static_cast<std::uint32_t>(prob_.size()));
        return rng.next_double() < prob_[k] ? static_cast<std::int32_t>(k) : alias_[k];
    }

    const std::vector<double>& probabilities() const { return p_; }

private:
    std::vector<double> p_;      // normalized target distribution
    std::vector<double> prob_;   // alias acceptance thresholds
    std::vector<std::int32_t> alias_;
};

struct EmbeddingMatrix {
    int dimension = 0;
    std::vector<NodeId> node_ids;  // row -> node id
    std::unordered_map<NodeId, std::int32_t> row_of;
    std::vector<double> input_vectors;    // row-major |vocab| x d; the embeddings
    std::vector<double> context_vectors;  // training-side vectors

    std::size_t rows() const { return node_ids.size(); }
    std::span<const double> row(std::int32_t r) const {
        return {input_vectors.data() + static_cast<std::size_t>(r) * dimension,
                static_cast<std::size_t>(dimension)};
    }
    std::span<const double> row_for(NodeId v) const { return row(row_of.at(v)); }
};

// loss = -ln s(ctx . cen) - sum_neg ln s(-neg . cen), s = logistic sigmoid.
double sgns_loss(std::span<const double> center, std::span<const double> context,
                 std::span<const double* const> negatives);

// One stochastic-gradient step on the loss above; returns the pre-update
// loss. All gradients are taken at the pre-update point (the center update is
// accumulated while context/negative rows are updated).
double sgns_step(std::span<double> center, std::span<double> context,
                 std::span<double* const> negatives, double lr);

// SkipGram with negative sampling over the walk corpus. Per epoch the walk
// order is reshuffled; per center token the effective window is uniform in
// 1..window; negatives are redrawn for every (center, context) pair, skipping
// the context token; the learning rate decays linearly with token progress
// over all epochs. If epoch_mean_loss is given it receives one mean pre-update
// loss per epoch.
EmbeddingMatrix train(const WalkCorpus& corpus, const SkipGramParams& params,
                      std::vector<double>* epoch_mean_loss = nullptr);

// Text format: "N d" header then one line per node, name followed by d values
// with 6 decimal places.
void save_embeddings(const EmbeddingMatrix& emb, const Graph& g, std::ostream& out);
EmbeddingMatrix load_embeddings(std::istream& in, const Graph& g);

}  // namespace multiwalk
