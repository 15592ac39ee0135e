#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "multiwalk/graph.hpp"
#include "multiwalk/rng.hpp"
#include "multiwalk/walkgen.hpp"

namespace multiwalk {

// Sorted degrees of all nodes at exact hop distance k from `node`; the
// structural signature at scale k. At k=0 it is [degree(node)].
struct DegreeRingSequence {
    NodeId node = 0;
    int k = 0;
    std::vector<std::int32_t> degrees;  // non-decreasing
};

DegreeRingSequence degree_ring(const Graph& g, NodeId v, int k);

// Classic full-alignment dynamic time warping with element cost
// max(x,y)/min(x,y) - 1. Degree 0 (only possible for an isolated node's k=0
// signature) is treated as 1 inside the cost. Empty input throws
// DataError("undefined DTW").
double dtw_distance(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

// Cumulative structural distance f_k(u,v) = f_{k-1}(u,v) + dtw(ring_k(u),
// ring_k(v)), f_{-1} = 0. Defined iff both rings are non-empty at every hop
// <= k; symmetric and non-decreasing in k.
std::optional<double> structural_distance(const Graph& g, NodeId u, NodeId v, int k);

// Layered similarity graph over the original node set. Within layer k every
// defined pair (u,v) carries weight exp(-f_k(u,v)); cross-layer moves use
// up_weight(u,k) = ln(Gamma_k(u) + e) with Gamma_k(u) the number of layer-k
// edges at u strictly heavier than that layer's mean edge weight, and
// down_weight = 1 everywhere. Self-pairs are excluded from transitions.
//
// Exact all-pairs construction, O(n^2 * k_max * dtw) — fine at desk scale
// (thousands of nodes), no approximations.
struct MultilayerGraph {
    int k_max = 0;
    std::uint32_t n = 0;
    std::uint64_t graph_hash = 0;

    // layer_weight[k][u*n+v]; 0 encodes "no edge" (pair undefined at k, or
    // u == v). Defined weights are in (0, 1].
    std::vector<std::vector<double>> layer_weight;
    // Inclusive prefix sums of each row of layer_weight, for O(log n)
    // transition sampling.
    std::vector<std::vector<double>> row_prefix;
    // up_weight[k][u], meaningful for k < k_max; >= 1 by construction.
    std::vector<std::vector<double>> up_weight;

    double weight(int k, NodeId u, NodeId v) const {
        return layer_weight[static_cast<std::size_t>(k)]
                           [static_cast<std::size_t>(u) * n + v];
    }
    bool has_edge(int k, NodeId u, NodeId v) const { return weight(k, u, v) > 0.0; }
    double row_total(int k, NodeId u) const {
        return row_prefix[static_cast<std::size_t>(k)]
                         [static_cast<std::size_t>(u) * n + (n - 1)];
    }
};

MultilayerGraph build_multilayer(const Graph& g, int k_max);

// Largest finite BFS eccentricity (per-component diameter for disconnected
// graphs).
int graph_diameter(const Graph& g);
// min(diameter, 5): caps the O(n^2 * k) construction cost.
int default_k_max(const Graph& g);

// Biased walk over the multilayer graph. Starts at (start, layer 0); with
// probability stay_prob takes a within-layer step (proportional to weights)
// and records the node, otherwise changes layer (up/down proportional to
// up/down weights, forced at the boundary layers) without recording. A node
// with no within-layer neighbors falls down a layer; stuck at layer 0 it
// truncates. Output is node ids only, exactly `length` of them absent
// truncation.
Walk structural_walk(const MultilayerGraph& ml, const Graph& g, NodeId start, int length,
                     double stay_prob, Rng& rng);

class StructuralWalkGenerator final : public WalkGenerator {
public:
    StructuralWalkGenerator(const MultilayerGraph& ml, double stay_prob = 0.7,
                            int length = 80)
        : ml_(&ml), stay_prob_(stay_prob), length_(length) {}
    const std::string& tag() const override { return tag_; }
    int walk_length() const override { return length_; }
    Walk generate(const Graph& g, NodeId start, int length, Rng& rng) const override {
        return structural_walk(*ml_, g, start, length, stay_prob_, rng);
    }

private:
    const MultilayerGraph* ml_;
    std::string tag_ = "struc2vec";
    double stay_prob_;
    int length_;
};

// Binary cache keyed by (graph content hash, k_max); arithmetic is
// deterministic, so a reload is bit-identical to a rebuild.
void save_multilayer(const MultilayerGraph& ml, std::ostream& out);
MultilayerGraph load_multilayer(std::istream& in);
MultilayerGraph load_or_build_multilayer(const Graph& g, int k_max,
                                         const std::string& cache_path);

}  // namespace multiwalk
