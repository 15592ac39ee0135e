#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "multiwalk/embed.hpp"
#include "multiwalk/graph.hpp"

namespace multiwalk {

struct SplitSpec {
    double train_ratio = 0.8;
    int rounds = 10;
    std::uint64_t seed = 0;

    void validate() const;
};

// Uniform random partition of the labeled nodes; |train| =
// round(train_ratio * N). Deterministic per (spec, round).
std::pair<std::vector<NodeId>, std::vector<NodeId>> split(std::span<const NodeId> labeled,
                                                          const SplitSpec& spec,
                                                          int round);

struct FitOptions {
    double lambda = 1e-4;   // L2 strength on weights (bias unregularized)
    int max_iters = 1000;
    double grad_tol = 1e-5;  // stop when the gradient max-norm drops below
};

struct BinaryClassifier {
    std::int32_t class_id = 0;
    std::vector<double> w;
    double b = 0.0;
};

// One binary logistic model per class with at least one positive training
// example; classes without one are skipped and recorded.
struct OvrModel {
    int dimension = 0;
    std::vector<BinaryClassifier> classifiers;
    std::vector<std::int32_t> skipped_classes;
};

// Mean L2-regularized log loss, minimized by full-batch gradient descent with
// backtracking line search (so the loss is non-increasing per iteration).
OvrModel fit_ovr(const EmbeddingMatrix& emb, std::span<const NodeId> train_nodes,
                 const LabelMap& labels, const FitOptions& opts = {});

// Regularized loss/gradient of one binary problem; exposed for the
// finite-difference test oracle. X is row-major n x d, y is +/-1. The
// gradient is over (w, b) packed as d+1 values.
double logreg_loss(std::span<const double> X, std::span<const double> y, int d,
                   std::span<const double> wb, double lambda);
void logreg_grad(std::span<const double> X, std::span<const double> y, int d,
                 std::span<const double> wb, double lambda, std::span<double> grad);

// Single-label (k_true absent): argmax class probability, ties to the
// smallest class id. Multi-label: the k_true most probable classes
// (known-label-count protocol). Returns sorted class ids.
std::vector<std::int32_t> predict(const OvrModel& model, std::span<const double> x,
                                  std::optional<int> k_true);

// Unweighted mean F1 over `class_set` (the classes present in the ground
// truth of the fold); F1 = 0 for a class with precision + recall = 0.
double macro_f1(const std::vector<std::vector<std::int32_t>>& predicted,
                const std::vector<std::vector<std::int32_t>>& truth,
                std::span<const std::int32_t> class_set);

struct ExperimentReport {
    std::string method;
    std::string dataset;
    std::vector<double> round_scores;
    double mean = 0.0;
    double std_dev = 0.0;  // population std over rounds
    std::string config_echo;
};

void finalize_report(ExperimentReport& report);

// One round of fit + predict + macro-F1 on a fixed partition.
double evaluate_round(const EmbeddingMatrix& emb, const LabelMap& labels,
                      std::span<const NodeId> train_nodes,
                      std::span<const NodeId> test_nodes, bool multi_label,
                      const FitOptions& opts = {});

// The repeated-splits protocol: every method sees the identical per-round
// partition (embeddings are generated once per method by the caller).
std::vector<ExperimentReport> run_experiment(
    const std::vector<std::pair<std::string, const EmbeddingMatrix*>>& methods,
    const LabelMap& labels, const SplitSpec& spec, const FitOptions& opts = {});

// Plot-ready CSV: header "method,round,macro_f1", one row per (method, round).
void write_report_csv(const std::vector<ExperimentReport>& reports, std::ostream& out);
void write_report_text(const ExperimentReport& report, std::ostream& out);

}  // namespace multiwalk
