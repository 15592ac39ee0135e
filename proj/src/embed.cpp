#include "multiwalk/embed.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace multiwalk {

void SkipGramParams::validate() const {
    if (dimension < 1) throw DataError("dimension must be >= 1");
    if (window < 1) throw DataError("window must be >= 1");
    if (epochs < 1) throw DataError("epochs must be >= 1");
    if (negatives < 0) throw DataError("negatives must be >= 0");
    if (!(final_lr > 0.0) || final_lr > initial_lr)
        throw DataError("learning rates must satisfy 0 < final_lr <= initial_lr");
    if (threads < 1) throw DataError("threads must be >= 1");
}

Vocab build_vocab(const WalkCorpus& corpus) {
    if (corpus.empty()) throw DataError("empty corpus");
    std::map<NodeId, std::int64_t> counts;
    for (const auto& w : corpus.walks) {
        for (NodeId v : w.nodes) ++counts[v];
    }
    Vocab vocab;
    vocab.node_ids.reserve(counts.size());
    vocab.counts.reserve(counts.size());
    for (auto [v, c] : counts) {
        vocab.row_of.emplace(v, static_cast<std::int32_t>(vocab.node_ids.size()));
        vocab.node_ids.push_back(v);
        vocab.counts.push_back(c);
    }
    return vocab;
}

NegativeSampler::NegativeSampler(std::span<const std::int64_t> counts, double power) {
    if (counts.empty()) throw DataError("negative sampler needs a non-empty vocab");
    const std::size_t n = counts.size();
    p_.resize(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        p_[i] = std::pow(static_cast<double>(counts[i]), power);
        total += p_[i];
    }
    for (auto& p : p_) p /= total;

    // Vose alias construction; processing order is fixed so the table is
    // deterministic.
    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    std::vector<std::int32_t> small, large;
    for (std::size_t i = 0; i < n; ++i) {
        scaled[i] = p_[i] * static_cast<double>(n);
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::int32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
        const std::int32_t s = small.back();
        small.pop_back();
        const std::int32_t l = large.back();
        large.pop_back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = scaled[l] + scaled[s] - 1.0;
        (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    while (!large.empty()) {
        prob_[large.back()] = 1.0;
        large.pop_back();
    }
    while (!small.empty()) {
        prob_[small.back()] = 1.0;
        small.pop_back();
    }
}

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double log_sigmoid(double x) {
    return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double dot(const double* a, const double* b, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double* y, double a, const double* x, int d) {
    for (int i = 0; i < d; ++i) y[i] += a * x[i];
}

}  // namespace

double sgns_loss(std::span<const double> center, std::span<const double> context,
                 std::span<const double* const> negatives) {
    const int d = static_cast<int>(center.size());
    double loss = -log_sigmoid(dot(context.data(), center.data(), d));
    for (const double* neg : negatives) {
        loss -= log_sigmoid(-dot(neg, center.data(), d));
    }
    return loss;
}

double sgns_step(std::span<double> center, std::span<double> context,
                 std::span<double* const> negatives, double lr) {
    const int d = static_cast<int>(center.size());
    double loss = 0.0;
    std::vector<double> center_grad(static_cast<std::size_t>(d), 0.0);

    const double s_pos = sigmoid(dot(context.data(), center.data(), d));
    loss -= log_sigmoid(dot(context.data(), center.data(), d));
    // dL/d(ctx.cen) = s_pos - 1
    axpy(center_grad.data(), s_pos - 1.0, context.data(), d);
    axpy(context.data(), -lr * (s_pos - 1.0), center.data(), d);

    for (double* neg : negatives) {
        const double q = dot(neg, center.data(), d);
        loss -= log_sigmoid(-q);
        const double s_neg = sigmoid(q);  // dL/d(neg.cen)
        axpy(center_grad.data(), s_neg, neg, d);
        axpy(neg, -lr * s_neg, center.data(), d);
    }
    axpy(center.data(), -lr, center_grad.data(), d);
    return loss;
}

namespace {

// Scratch for the hot update loop: avoids std::span plumbing inside.
struct TrainContext {
    int d;
    int negatives;
    double* input;
    double* context;
    const NegativeSampler* sampler;
    bool single_word;  // vocab of one token: no valid negative exists
};

// One (center, context) update with freshly drawn negatives; returns the
// pre-update loss.
double train_pair(TrainContext& tc, std::int32_t center_row, std::int32_t ctx_row,
                  double lr, Rng& rng, std::vector<double*>& neg_scratch) {
    neg_scratch.clear();
    if (!tc.single_word) {
        for (int t = 0; t < tc.negatives; ++t) {
            std::int32_t m;
            do {
                m = tc.sampler->sample(rng);
            } while (m == ctx_row);
            neg_scratch.push_back(tc.context + static_cast<std::size_t>(m) * tc.d);
        }
    }
    return sgns_step({tc.input + static_cast<std::size_t>(center_row) * tc.d,
                      static_cast<std::size_t>(tc.d)},
                     {tc.context + static_cast<std::size_t>(ctx_row) * tc.d,
                      static_cast<std::size_t>(tc.d)},
                     {neg_scratch.data(), neg_scratch.size()}, lr);
}

}  // namespace

EmbeddingMatrix train(const WalkCorpus& corpus, const SkipGramParams& params,
                      std::vector<double>* epoch_mean_loss) {
    params.validate();
    Vocab vocab = build_vocab(corpus);
    const std::size_t rows = vocab.node_ids.size();
    const int d = params.dimension;

    EmbeddingMatrix emb;
    emb.dimension = d;
    emb.node_ids = vocab.node_ids;
    emb.row_of = vocab.row_of;
    emb.input_vectors.resize(rows * static_cast<std::size_t>(d));
    emb.context_vectors.assign(rows * static_cast<std::size_t>(d), 0.0);
    {
        Rng init_rng(derive_seed(params.seed, Stream::TrainInit));
        for (auto& x : emb.input_vectors) x = (init_rng.next_double() - 0.5) / d;
    }

    NegativeSampler sampler(vocab.counts);
    const std::size_t total_tokens = corpus.total_tokens();
    const double total_steps =
        static_cast<double>(params.epochs) * static_cast<double>(total_tokens);
    const double lr_span = params.initial_lr - params.final_lr;

    TrainContext tc{d, params.negatives, emb.input_vectors.data(),
                    emb.context_vectors.data(), &sampler, rows == 1};

    std::vector<std::size_t> order(corpus.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    if (epoch_mean_loss) epoch_mean_loss->assign(static_cast<std::size_t>(params.epochs), 0.0);

    Rng shuffle_rng(derive_seed(params.seed, Stream::Train));
    auto shuffle_order = [&]() {
        for (std::size_t i = order.size() - 1; i > 0; --i) {
            const auto j = shuffle_rng.next_bounded(static_cast<std::uint32_t>(i + 1));
            std::swap(order[i], order[j]);
        }
    };

    if (params.threads == 1) {
        Rng& rng = shuffle_rng;  // one sequential stream drives everything
        std::vector<double*> neg_scratch;
        std::vector<std::int32_t> walk_rows;
        std::size_t processed = 0;
        for (int epoch = 0; epoch < params.epochs; ++epoch) {
            shuffle_order();
            double loss_acc = 0.0;
            std::size_t loss_cnt = 0;
            for (std::size_t wi : order) {
                const auto& nodes = corpus.walks[wi].nodes;
                const int len = static_cast<int>(nodes.size());
                walk_rows.resize(nodes.size());
                for (int i = 0; i < len; ++i) walk_rows[i] = vocab.row_of.at(nodes[i]);
                for (int c = 0; c < len; ++c) {
                    const double lr =
                        params.initial_lr -
                        lr_span * (static_cast<double>(processed) / total_steps);
                    const int b = 1 + static_cast<int>(rng.next_bounded(
                                          static_cast<std::uint32_t>(params.window)));
                    const int lo = std::max(0, c - b);
                    const int hi = std::min(len - 1, c + b);
                    for (int j = lo; j <= hi; ++j) {
                        if (j == c) continue;
                        loss_acc += train_pair(tc, walk_rows[c], walk_rows[j], lr, rng,
                                               neg_scratch);
                        ++loss_cnt;
                    }
                    ++processed;
                }
            }
            if (epoch_mean_loss && loss_cnt > 0)
                (*epoch_mean_loss)[epoch] = loss_acc / static_cast<double>(loss_cnt);
        }
        return emb;
    }

    // Hogwild: threads apply unsynchronized updates to the shared matrices.
    // Walk chunks and rng streams are per-thread; output is not reproducible.
    std::atomic<std::size_t> processed{0};
#pragma omp parallel num_threads(params.threads)
    {
#ifdef _OPENMP
        const int tid = omp_get_thread_num();
        const int nthreads = omp_get_num_threads();
#else
        const int tid = 0;
        const int nthreads = 1;
#endif
        std::vector<double*> neg_scratch;
        std::vector<std::int32_t> walk_rows;
        for (int epoch = 0; epoch < params.epochs; ++epoch) {
#pragma omp single
            shuffle_order();
            // implicit barrier keeps the shuffle ahead of the chunked pass
            const std::size_t chunk = (order.size() + nthreads - 1) / nthreads;
            const std::size_t begin = std::min(order.size(), chunk * tid);
            const std::size_t end = std::min(order.size(), begin + chunk);
            Rng rng(derive_seed(params.seed, Stream::Train,
                                {static_cast<std::uint64_t>(epoch),
                                 static_cast<std::uint64_t>(tid)}));
            double loss_acc = 0.0;
            std::size_t loss_cnt = 0;
            for (std::size_t oi = begin; oi < end; ++oi) {
                const auto& nodes = corpus.walks[order[oi]].nodes;
                const int len = static_cast<int>(nodes.size());
                walk_rows.resize(nodes.size());
                for (int i = 0; i < len; ++i) walk_rows[i] = vocab.row_of.at(nodes[i]);
                for (int c = 0; c < len; ++c) {
                    const auto done = processed.fetch_add(1, std::memory_order_relaxed);
                    const double lr =
                        params.initial_lr -
                        lr_span * (static_cast<double>(done) / total_steps);
                    const int b = 1 + static_cast<int>(rng.next_bounded(
                                          static_cast<std::uint32_t>(params.window)));
                    const int lo = std::max(0, c - b);
                    const int hi = std::min(len - 1, c + b);
                    for (int j = lo; j <= hi; ++j) {
                        if (j == c) continue;
                        loss_acc += train_pair(tc, walk_rows[c], walk_rows[j], lr, rng,
                                               neg_scratch);
                        ++loss_cnt;
                    }
                }
            }
            if (epoch_mean_loss && loss_cnt > 0) {
#pragma omp critical
                (*epoch_mean_loss)[epoch] +=
                    loss_acc / static_cast<double>(loss_cnt) / nthreads;
            }
#pragma omp barrier
        }
    }
    return emb;
}

void save_embeddings(const EmbeddingMatrix& emb, const Graph& g, std::ostream& out) {
    out << emb.rows() << ' ' << emb.dimension << '\n';
    char buf[32];
    for (std::size_t r = 0; r < emb.rows(); ++r) {
        out << g.name(emb.node_ids[r]);
        const double* row = emb.input_vectors.data() + r * emb.dimension;
        for (int j = 0; j < emb.dimension; ++j) {
            std::snprintf(buf, sizeof(buf), " %.6f", row[j]);
            out << buf;
        }
        out << '\n';
    }
}

EmbeddingMatrix load_embeddings(std::istream& in, const Graph& g) {
    std::size_t n = 0;
    int d = 0;
    if (!(in >> n >> d) || d < 1) throw DataError("embedding file: bad header");

    std::unordered_map<std::string, NodeId> id_of;
    for (NodeId v = 0; v < g.n_nodes(); ++v) id_of.emplace(g.name(v), v);

    EmbeddingMatrix emb;
    emb.dimension = d;
    emb.input_vectors.resize(n * static_cast<std::size_t>(d));
    emb.context_vectors.assign(n * static_cast<std::size_t>(d), 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        std::string name;
        if (!(in >> name)) throw DataError("embedding file: truncated");
        auto it = id_of.find(name);
        if (it == id_of.end())
            throw DataError("embedding file: unknown node \"" + name + "\"");
        emb.row_of.emplace(it->second, static_cast<std::int32_t>(r));
        emb.node_ids.push_back(it->second);
        for (int j = 0; j < d; ++j) {
            if (!(in >> emb.input_vectors[r * static_cast<std::size_t>(d) + j]))
                throw DataError("embedding file: truncated row for \"" + name + "\"");
        }
    }
    return emb;
}

}  // namespace multiwalk
