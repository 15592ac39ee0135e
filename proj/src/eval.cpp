#include "multiwalk/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "multiwalk/rng.hpp"

namespace multiwalk {

void SplitSpec::validate() const {
    if (!(train_ratio > 0.0 && train_ratio < 1.0))
        throw DataError("train_ratio must be in (0, 1)");
    if (rounds < 1) throw DataError("rounds must be >= 1");
}

std::pair<std::vector<NodeId>, std::vector<NodeId>> split(std::span<const NodeId> labeled,
                                                          const SplitSpec& spec,
                                                          int round) {
    spec.validate();
    if (labeled.size() < 2) throw DataError("split needs at least 2 labeled nodes");

    const auto n_train = static_cast<std::size_t>(
        std::llround(spec.train_ratio * static_cast<double>(labeled.size())));
    if (n_train == 0 || n_train == labeled.size())
        throw DataError("split leaves an empty side");

    std::vector<NodeId> order(labeled.begin(), labeled.end());
    Rng rng(derive_seed(spec.seed, Stream::Split, {static_cast<std::uint64_t>(round)}));
    for (std::size_t i = order.size() - 1; i > 0; --i) {
        const auto j = rng.next_bounded(static_cast<std::uint32_t>(i + 1));
        std::swap(order[i], order[j]);
    }
    std::vector<NodeId> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<NodeId> test(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {std::move(train), std::move(test)};
}

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(1 + exp(t)), overflow-safe
double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

}  // namespace

double logreg_loss(std::span<const double> X, std::span<const double> y, int d,
                   std::span<const double> wb, double lambda) {
    const std::size_t n = y.size();
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = X.data() + i * static_cast<std::size_t>(d);
        double z = wb[static_cast<std::size_t>(d)];
        for (int j = 0; j < d; ++j) z += wb[static_cast<std::size_t>(j)] * xi[j];
        loss += softplus(-y[i] * z);
    }
    loss /= static_cast<double>(n);
    double w2 = 0.0;
    for (int j = 0; j < d; ++j) w2 += wb[static_cast<std::size_t>(j)] * wb[static_cast<std::size_t>(j)];
    return loss + 0.5 * lambda * w2;
}

void logreg_grad(std::span<const double> X, std::span<const double> y, int d,
                 std::span<const double> wb, double lambda, std::span<double> grad) {
    const std::size_t n = y.size();
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = X.data() + i * static_cast<std::size_t>(d);
        double z = wb[static_cast<std::size_t>(d)];
        for (int j = 0; j < d; ++j) z += wb[static_cast<std::size_t>(j)] * xi[j];
        const double coef = -y[i] * sigmoid(-y[i] * z);
        for (int j = 0; j < d; ++j) grad[static_cast<std::size_t>(j)] += coef * xi[j];
        grad[static_cast<std::size_t>(d)] += coef;
    }
    for (auto& gj : grad) gj /= static_cast<double>(n);
    for (int j = 0; j < d; ++j) grad[static_cast<std::size_t>(j)] += lambda * wb[static_cast<std::size_t>(j)];
}

namespace {

// Full-batch gradient descent with Armijo backtracking from step 1.0.
BinaryClassifier fit_binary(std::span<const double> X, std::span<const double> y, int d,
                            std::int32_t class_id, const FitOptions& opts) {
    std::vector<double> wb(static_cast<std::size_t>(d) + 1, 0.0);
    std::vector<double> grad(wb.size()), trial(wb.size());
    double loss = logreg_loss(X, y, d, wb, opts.lambda);

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        logreg_grad(X, y, d, wb, opts.lambda, grad);
        double gmax = 0.0, gsq = 0.0;
        for (double gj : grad) {
            gmax = std::max(gmax, std::abs(gj));
            gsq += gj * gj;
        }
        if (gmax < opts.grad_tol) break;

        double step = 1.0;
        bool moved = false;
        while (step > 1e-12) {
            for (std::size_t j = 0; j < wb.size(); ++j) trial[j] = wb[j] - step * grad[j];
            const double trial_loss = logreg_loss(X, y, d, trial, opts.lambda);
            if (trial_loss <= loss - 1e-4 * step * gsq) {
                wb.swap(trial);
                loss = trial_loss;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }

    BinaryClassifier clf;
    clf.class_id = class_id;
    clf.w.assign(wb.begin(), wb.end() - 1);
    clf.b = wb.back();
    return clf;
}

}  // namespace

OvrModel fit_ovr(const EmbeddingMatrix& emb, std::span<const NodeId> train_nodes,
                 const LabelMap& labels, const FitOptions& opts) {
    const int d = emb.dimension;
    const std::size_t n = train_nodes.size();
    if (n == 0) throw DataError("fit_ovr: empty training set");

    std::vector<double> X(n * static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = emb.row_for(train_nodes[i]);
        std::copy(row.begin(), row.end(), X.begin() + static_cast<std::ptrdiff_t>(i * d));
    }
    for (double x : X) {
        if (!std::isfinite(x)) throw DataError("fit_ovr: non-finite feature");
    }

    const auto n_classes = static_cast<std::int32_t>(labels.n_classes());
    std::vector<std::vector<double>> ys(static_cast<std::size_t>(n_classes));
    OvrModel model;
    model.dimension = d;
    std::vector<std::int32_t> trainable;
    for (std::int32_t c = 0; c < n_classes; ++c) {
        auto& y = ys[static_cast<std::size_t>(c)];
        y.assign(n, -1.0);
        bool any_pos = false;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& ls = labels.labels[train_nodes[i]];
            if (std::binary_search(ls.begin(), ls.end(), c)) {
                y[i] = 1.0;
                any_pos = true;
            }
        }
        if (any_pos) trainable.push_back(c);
        else model.skipped_classes.push_back(c);
    }

    model.classifiers.resize(trainable.size());
    const auto n_fit = static_cast<std::int64_t>(trainable.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t t = 0; t < n_fit; ++t) {
        const std::int32_t c = trainable[static_cast<std::size_t>(t)];
        model.classifiers[static_cast<std::size_t>(t)] =
            fit_binary(X, ys[static_cast<std::size_t>(c)], d, c, opts);
    }
    return model;
}

std::vector<std::int32_t> predict(const OvrModel& model, std::span<const double> x,
                                  std::optional<int> k_true) {
    if (model.classifiers.empty()) throw DataError("predict: model has no classes");
    for (double xi : x) {
        if (!std::isfinite(xi)) throw DataError("predict: non-finite feature");
    }

    std::vector<std::pair<double, std::int32_t>> scored;
    scored.reserve(model.classifiers.size());
    for (const auto& clf : model.classifiers) {
        double z = clf.b;
        for (int j = 0; j < model.dimension; ++j)
            z += clf.w[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        scored.emplace_back(sigmoid(z), clf.class_id);
    }
    // Highest probability first; ties broken toward the smaller class id.
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    const std::size_t k = k_true ? std::min<std::size_t>(static_cast<std::size_t>(std::max(0, *k_true)),
                                                         scored.size())
                                 : 1;
    std::vector<std::int32_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(scored[i].second);
    std::sort(out.begin(), out.end());
    return out;
}

double macro_f1(const std::vector<std::vector<std::int32_t>>& predicted,
                const std::vector<std::vector<std::int32_t>>& truth,
                std::span<const std::int32_t> class_set) {
    if (truth.empty()) throw DataError("macro_f1: empty test set");
    if (predicted.size() != truth.size())
        throw DataError("macro_f1: prediction/truth size mismatch");
    if (class_set.empty()) throw DataError("macro_f1: empty class set");

    double sum_f1 = 0.0;
    for (std::int32_t c : class_set) {
        std::size_t tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            const bool in_pred =
                std::binary_search(predicted[i].begin(), predicted[i].end(), c);
            const bool in_truth = std::binary_search(truth[i].begin(), truth[i].end(), c);
            tp += in_pred && in_truth;
            fp += in_pred && !in_truth;
            fn += !in_pred && in_truth;
        }
        const double prec = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
        const double rec = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
        sum_f1 += prec + rec > 0.0 ? 2.0 * prec * rec / (prec + rec) : 0.0;
    }
    return sum_f1 / static_cast<double>(class_set.size());
}

void finalize_report(ExperimentReport& report) {
    const auto n = static_cast<double>(report.round_scores.size());
    double mean = 0.0;
    for (double s : report.round_scores) mean += s;
    mean /= n;
    double var = 0.0;
    for (double s : report.round_scores) var += (s - mean) * (s - mean);
    report.mean = mean;
    report.std_dev = std::sqrt(var / n);
}

double evaluate_round(const EmbeddingMatrix& emb, const LabelMap& labels,
                      std::span<const NodeId> train_nodes,
                      std::span<const NodeId> test_nodes, bool multi_label,
                      const FitOptions& opts) {
    OvrModel model = fit_ovr(emb, train_nodes, labels, opts);

    std::vector<std::vector<std::int32_t>> preds, truths;
    preds.reserve(test_nodes.size());
    truths.reserve(test_nodes.size());
    std::vector<std::int32_t> fold_classes;
    for (NodeId v : test_nodes) {
        const auto& t = labels.labels[v];
        truths.emplace_back(t);
        fold_classes.insert(fold_classes.end(), t.begin(), t.end());
        const auto k_true =
            multi_label ? std::optional<int>(static_cast<int>(t.size())) : std::nullopt;
        preds.push_back(predict(model, emb.row_for(v), k_true));
    }
    std::sort(fold_classes.begin(), fold_classes.end());
    fold_classes.erase(std::unique(fold_classes.begin(), fold_classes.end()),
                       fold_classes.end());
    return macro_f1(preds, truths, fold_classes);
}

std::vector<ExperimentReport> run_experiment(
    const std::vector<std::pair<std::string, const EmbeddingMatrix*>>& methods,
    const LabelMap& labels, const SplitSpec& spec, const FitOptions& opts) {
    spec.validate();
    const std::vector<NodeId> labeled = labels.labeled_nodes();

    bool multi_label = false;
    for (NodeId v : labeled) multi_label |= labels.labels[v].size() > 1;

    // Splits are computed once per round and shared by every method, so the
    // comparison is paired.
    std::vector<std::pair<std::vector<NodeId>, std::vector<NodeId>>> splits;
    splits.reserve(static_cast<std::size_t>(spec.rounds));
    for (int r = 0; r < spec.rounds; ++r) splits.push_back(split(labeled, spec, r));

    std::vector<ExperimentReport> reports;
    reports.reserve(methods.size());
    for (const auto& [name, emb] : methods) {
        ExperimentReport report;
        report.method = name;
        report.round_scores.reserve(static_cast<std::size_t>(spec.rounds));
        for (int r = 0; r < spec.rounds; ++r) {
            report.round_scores.push_back(evaluate_round(
                *emb, labels, splits[static_cast<std::size_t>(r)].first,
                splits[static_cast<std::size_t>(r)].second, multi_label, opts));
        }
        finalize_report(report);
        reports.push_back(std::move(report));
    }
    return reports;
}

void write_report_csv(const std::vector<ExperimentReport>& reports, std::ostream& out) {
    out << "method,round,macro_f1\n";
    char buf[32];
    for (const auto& report : reports) {
        for (std::size_t r = 0; r < report.round_scores.size(); ++r) {
            std::snprintf(buf, sizeof(buf), "%.6f", report.round_scores[r]);
            out << report.method << ',' << r << ',' << buf << '\n';
        }
    }
}

void write_report_text(const ExperimentReport& report, std::ostream& out) {
    char buf[32];
    out << "method " << report.method << '\n';
    if (!report.dataset.empty()) out << "dataset " << report.dataset << '\n';
    out << "rounds";
    for (double s : report.round_scores) {
        std::snprintf(buf, sizeof(buf), " %.6f", s);
        out << buf;
    }
    out << '\n';
    std::snprintf(buf, sizeof(buf), "%.6f", report.mean);
    out << "mean " << buf << '\n';
    std::snprintf(buf, sizeof(buf), "%.6f", report.std_dev);
    out << "std " << buf << '\n';
    if (!report.config_echo.empty()) out << report.config_echo;
}

}  // namespace multiwalk
