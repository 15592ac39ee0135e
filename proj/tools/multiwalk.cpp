#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "multiwalk/config.hpp"
#include "multiwalk/embed.hpp"
#include "multiwalk/eval.hpp"
#include "multiwalk/experiment.hpp"
#include "multiwalk/graph.hpp"
#include "multiwalk/multiwalk.hpp"
#include "multiwalk/rng.hpp"
#include "multiwalk/structwalk.hpp"
#include "multiwalk/walkgen.hpp"

using namespace multiwalk;

namespace {

void set_threads(int threads) {
#ifdef _OPENMP
    omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    return out;
}

int count_components(const Graph& g) {
    std::vector<char> seen(g.n_nodes(), 0);
    std::vector<NodeId> stack;
    int components = 0;
    for (NodeId s = 0; s < g.n_nodes(); ++s) {
        if (seen[s]) continue;
        ++components;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            for (NodeId v : g.neighbors(u)) {
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
            }
        }
    }
    return components;
}

void cmd_graph_stats(const std::string& edges_path) {
    const Graph g = load_edge_list_file(edges_path);
    std::size_t dmin = g.n_nodes() ? g.degree(0) : 0, dmax = 0, dsum = 0;
    for (NodeId v = 0; v < g.n_nodes(); ++v) {
        const std::size_t d = g.degree(v);
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
        dsum += d;
    }
    std::printf("nodes: %zu, edges: %zu\n", g.n_nodes(), g.n_edges());
    std::printf("degree min: %zu\n", dmin);
    std::printf("degree mean: %.4f\n",
                static_cast<double>(dsum) / static_cast<double>(g.n_nodes()));
    std::printf("degree max: %zu\n", dmax);
    std::printf("components: %d\n", count_components(g));
}

struct GeneratorArgs {
    std::string kind = "deepwalk";
    int k_max = -1;
    double stay_prob = 0.7;
    std::string ml_cache;
};

// Builds the requested generator; the multilayer graph (if any) is kept alive
// by the returned holder.
struct GeneratorHolder {
    MultilayerGraph ml;
    std::unique_ptr<WalkGenerator> gen;
};

GeneratorHolder make_generator(const Graph& g, const GeneratorArgs& args, int length) {
    GeneratorHolder holder;
    if (args.kind == "deepwalk" || args.kind == "dw") {
        holder.gen = std::make_unique<UniformWalkGenerator>(length);
    } else if (args.kind == "struc2vec" || args.kind == "s2v") {
        const int k_max = args.k_max < 0 ? default_k_max(g) : args.k_max;
        holder.ml = args.ml_cache.empty()
                        ? build_multilayer(g, k_max)
                        : load_or_build_multilayer(g, k_max, args.ml_cache);
        holder.gen =
            std::make_unique<StructuralWalkGenerator>(holder.ml, args.stay_prob, length);
    } else {
        throw CLI::ValidationError("--generator", "must be deepwalk or struc2vec");
    }
    return holder;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MultiWalk: mixed-generator random-walk node embeddings"};
    app.require_subcommand(1);

    // graph-stats
    std::string gs_edges;
    auto* gs = app.add_subcommand("graph-stats", "print basic statistics of an edge list");
    gs->add_option("--edges", gs_edges, "edge list file")->required();

    // walks
    struct {
        std::string edges, out;
        int count = 10, length = 80, threads = 1;
        std::uint64_t seed = 1;
        GeneratorArgs gen;
    } wk;
    auto* walks = app.add_subcommand("walks", "generate a walk corpus directly");
    walks->add_option("--edges", wk.edges, "edge list file")->required();
    walks->add_option("--out", wk.out, "corpus output file")->required();
    walks->add_option("--count", wk.count, "walks per node")->check(CLI::PositiveNumber);
    walks->add_option("--length", wk.length, "walk length")->check(CLI::PositiveNumber);
    walks->add_option("--seed", wk.seed, "root seed");
    walks->add_option("--generator", wk.gen.kind, "deepwalk|struc2vec");
    walks->add_option("--k-max", wk.gen.k_max, "multilayer depth (default min(diameter,5))");
    walks->add_option("--stay-prob", wk.gen.stay_prob, "structural stay probability");
    walks->add_option("--ml-cache", wk.gen.ml_cache, "multilayer cache file");
    walks->add_option("--threads", wk.threads, "worker threads")->check(CLI::PositiveNumber);

    // pool
    struct {
        std::string edges, out;
        int size = 30, length = 80, threads = 1;
        std::uint64_t seed = 1;
        GeneratorArgs gen;
    } pl;
    auto* pool = app.add_subcommand("pool", "precompute a walk pool");
    pool->add_option("--edges", pl.edges, "edge list file")->required();
    pool->add_option("--out", pl.out, "pool output file")->required();
    pool->add_option("--size", pl.size, "walks per node in the pool")
        ->check(CLI::PositiveNumber);
    pool->add_option("--length", pl.length, "walk length")->check(CLI::PositiveNumber);
    pool->add_option("--seed", pl.seed, "root seed");
    pool->add_option("--generator", pl.gen.kind, "deepwalk|struc2vec");
    pool->add_option("--k-max", pl.gen.k_max, "multilayer depth (default min(diameter,5))");
    pool->add_option("--stay-prob", pl.gen.stay_prob, "structural stay probability");
    pool->add_option("--ml-cache", pl.gen.ml_cache, "multilayer cache file");
    pool->add_option("--threads", pl.threads, "worker threads")->check(CLI::PositiveNumber);

    // mix
    struct {
        std::string edges, dw_pool, s2v_pool, mix = "5:5", out;
        std::uint64_t seed = 1;
    } mx;
    auto* mix = app.add_subcommand("mix", "sample a mixed corpus from pools");
    mix->add_option("--edges", mx.edges, "edge list file")->required();
    mix->add_option("--dw-pool", mx.dw_pool, "uniform pool file");
    mix->add_option("--s2v-pool", mx.s2v_pool, "structural pool file");
    mix->add_option("--mix", mx.mix, "walks per node as DW:S2V, e.g. 7:3")->required();
    mix->add_option("--out", mx.out, "corpus output file")->required();
    mix->add_option("--seed", mx.seed, "root seed");

    // embed
    struct {
        std::string edges, corpus, out;
        SkipGramParams sg;
    } em;
    auto* embed = app.add_subcommand("embed", "train SkipGram embeddings on a corpus");
    embed->add_option("--edges", em.edges, "edge list file")->required();
    embed->add_option("--corpus", em.corpus, "walk corpus file")->required();
    embed->add_option("--out", em.out, "embedding output file")->required();
    embed->add_option("--dim", em.sg.dimension, "embedding dimension");
    embed->add_option("--window", em.sg.window, "context window");
    embed->add_option("--epochs", em.sg.epochs, "training epochs");
    embed->add_option("--negatives", em.sg.negatives, "negative samples per pair");
    embed->add_option("--initial-lr", em.sg.initial_lr, "initial learning rate");
    embed->add_option("--final-lr", em.sg.final_lr, "final learning rate");
    embed->add_option("--seed", em.sg.seed, "root seed");
    embed->add_option("--threads", em.sg.threads,
                      "training threads (1 = deterministic)");

    // evaluate
    struct {
        std::string edges, labels, csv;
        std::vector<std::string> embeddings;  // name=path
        double train_ratio = 0.8;
        int rounds = 10;
        std::uint64_t seed = 1;
    } ev;
    auto* evaluate = app.add_subcommand("evaluate",
                                        "node-classification evaluation of embeddings");
    evaluate->add_option("--edges", ev.edges, "edge list file")->required();
    evaluate->add_option("--labels", ev.labels, "label file")->required();
    evaluate->add_option("--embeddings", ev.embeddings, "NAME=PATH (repeatable)")
        ->required();
    evaluate->add_option("--train-ratio", ev.train_ratio, "training fraction");
    evaluate->add_option("--rounds", ev.rounds, "number of rounds")
        ->check(CLI::PositiveNumber);
    evaluate->add_option("--seed", ev.seed, "root seed");
    evaluate->add_option("--csv", ev.csv, "also write a method,round,macro_f1 CSV");

    // experiment
    struct {
        std::string config;
        int threads = 1;
    } ex;
    auto* experiment = app.add_subcommand("experiment", "one-shot experiment from a config");
    experiment->add_option("--config", ex.config, "experiment config file")->required();
    experiment->add_option("--threads", ex.threads, "worker threads (1 = deterministic)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (gs->parsed()) {
            cmd_graph_stats(gs_edges);
        } else if (walks->parsed()) {
            set_threads(wk.threads);
            const Graph g = load_edge_list_file(wk.edges);
            GeneratorHolder holder = make_generator(g, wk.gen, wk.length);
            WalkPlan plan;
            plan.entries.push_back({holder.gen.get(), wk.count, wk.length});
            WalkCorpus corpus = generate_corpus(g, plan, wk.seed);
            auto out = open_out(wk.out);
            save_corpus(corpus, g, out);
            auto tags = open_out(wk.out + ".tags");
            save_corpus_tags(corpus, tags);
            std::printf("wrote %zu walks to %s\n", corpus.size(), wk.out.c_str());
        } else if (pool->parsed()) {
            set_threads(pl.threads);
            const Graph g = load_edge_list_file(pl.edges);
            GeneratorHolder holder = make_generator(g, pl.gen, pl.length);
            WalkPool p = build_pool(g, *holder.gen, pl.size, pl.length, pl.seed);
            auto out = open_out(pl.out);
            save_pool(p, g, out);
            std::printf("wrote pool of %zu walks to %s\n", p.walks.size(), pl.out.c_str());
        } else if (mix->parsed()) {
            const Graph g = load_edge_list_file(mx.edges);
            MethodSpec spec = parse_method_token(mx.mix, 0);
            if (spec.pair.num_walks_dw > 0 && mx.dw_pool.empty())
                throw CLI::ValidationError("--dw-pool", "required for this mix");
            if (spec.pair.num_walks_s2v > 0 && mx.s2v_pool.empty())
                throw CLI::ValidationError("--s2v-pool", "required for this mix");
            WalkPool dw, s2v;
            if (spec.pair.num_walks_dw > 0) {
                std::ifstream in(mx.dw_pool);
                if (!in) throw DataError("cannot open pool file: " + mx.dw_pool);
                dw = load_pool(in, g);
            }
            if (spec.pair.num_walks_s2v > 0) {
                std::ifstream in(mx.s2v_pool);
                if (!in) throw DataError("cannot open pool file: " + mx.s2v_pool);
                s2v = load_pool(in, g);
            }
            WalkCorpus corpus = generate_corpus_from_pools(dw, s2v, spec.pair, mx.seed);
            auto out = open_out(mx.out);
            save_corpus(corpus, g, out);
            auto tags = open_out(mx.out + ".tags");
            save_corpus_tags(corpus, tags);
            std::printf("wrote %zu walks to %s\n", corpus.size(), mx.out.c_str());
        } else if (embed->parsed()) {
            set_threads(em.sg.threads);
            const Graph g = load_edge_list_file(em.edges);
            std::ifstream cin_(em.corpus);
            if (!cin_) throw DataError("cannot open corpus file: " + em.corpus);
            WalkCorpus corpus = load_corpus(cin_, g);
            EmbeddingMatrix m = train(corpus, em.sg);
            auto out = open_out(em.out);
            save_embeddings(m, g, out);
            std::printf("wrote %zu x %d embeddings to %s\n", m.rows(), m.dimension,
                        em.out.c_str());
        } else if (evaluate->parsed()) {
            const Graph g = load_edge_list_file(ev.edges);
            const LabelMap labels = load_labels_file(ev.labels, g);
            std::vector<EmbeddingMatrix> matrices;
            std::vector<std::pair<std::string, const EmbeddingMatrix*>> methods;
            matrices.reserve(ev.embeddings.size());
            for (const auto& spec : ev.embeddings) {
                const auto eq = spec.find('=');
                if (eq == std::string::npos)
                    throw CLI::ValidationError("--embeddings", "expected NAME=PATH");
                std::ifstream in(spec.substr(eq + 1));
                if (!in) throw DataError("cannot open embedding file: " + spec.substr(eq + 1));
                matrices.push_back(load_embeddings(in, g));
            }
            for (std::size_t i = 0; i < ev.embeddings.size(); ++i) {
                methods.emplace_back(ev.embeddings[i].substr(0, ev.embeddings[i].find('=')),
                                     &matrices[i]);
            }
            SplitSpec spec{ev.train_ratio, ev.rounds,
                           derive_seed(ev.seed, Stream::Split)};
            auto reports = run_experiment(methods, labels, spec);
            for (const auto& report : reports) write_report_text(report, std::cout);
            if (!ev.csv.empty()) {
                auto out = open_out(ev.csv);
                write_report_csv(reports, out);
            }
        } else if (experiment->parsed()) {
            set_threads(ex.threads);
            const ExperimentConfig cfg = load_experiment_config_file(ex.config);
            ExperimentResult result = run_full_experiment(cfg, ex.threads, &std::cout);
            std::printf("report CSV: %s\n", result.csv_path.c_str());
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
    return 0;
}
