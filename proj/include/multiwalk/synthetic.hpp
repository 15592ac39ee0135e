#pragma once

#include <cstdint>

#include "multiwalk/graph.hpp"

namespace multiwalk {
namespace synthetic {

// Deterministic generators for tests and benchmarks. Node names are "n0",
// "n1", ... in id order.

Graph path_graph(int n);
Graph ring_graph(int n);
Graph star_graph(int leaves);
Graph complete_graph(int n);
Graph erdos_renyi(int n, double p, std::uint64_t seed);

// Two blocks of `per_block` nodes; within-block edge probability p_in,
// cross-block p_out. Labels are the block index.
Graph planted_partition(int per_block, double p_in, double p_out, std::uint64_t seed);
LabelMap planted_partition_labels(const Graph& g, int per_block);

// Two cliques of `clique` nodes joined by a path of `path_len` nodes; nodes
// 0 and `clique` are the attachment vertices. Role labels: clique interior /
// attachment / path.
Graph barbell_graph(int clique, int path_len);
LabelMap barbell_role_labels(const Graph& g, int clique, int path_len);

// Air-traffic-like benchmark graph: heavy-tailed Chung-Lu degrees with a
// same-region edge boost, connected, with exactly `m` edges.
Graph airports_like(int n, int m, std::uint64_t seed);

// Classes = quantiles of degree (ties broken by id), `n_classes` roughly
// equal bins; mirrors activity-level labelings of air-traffic datasets.
LabelMap degree_quantile_labels(const Graph& g, int n_classes);

}  // namespace synthetic
}  // namespace multiwalk
