#include "multiwalk/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "multiwalk/rng.hpp"
#include "multiwalk/structwalk.hpp"

namespace multiwalk {

namespace fs = std::filesystem;

MethodSpec parse_method_token(const std::string& token, int walks_per_node) {
    MethodSpec spec;
    spec.name = token;
    if (token == "deepwalk" || token == "dw" || token == "DW") {
        spec.pair = {walks_per_node, 0};
        return spec;
    }
    if (token == "struc2vec" || token == "s2v" || token == "S2V") {
        spec.pair = {0, walks_per_node};
        return spec;
    }
    const auto colon = token.find(':');
    if (colon == std::string::npos)
        throw DataError("unknown method token \"" + token +
                        "\" (expected deepwalk, struc2vec, or A:B)");
    try {
        spec.pair.num_walks_dw = std::stoi(token.substr(0, colon));
        spec.pair.num_walks_s2v = std::stoi(token.substr(colon + 1));
    } catch (const std::exception&) {
        throw DataError("bad mix token \"" + token + "\"");
    }
    if (spec.pair.num_walks_dw < 0 || spec.pair.num_walks_s2v < 0 ||
        spec.pair.num_walks_dw + spec.pair.num_walks_s2v < 1)
        throw DataError("mix token \"" + token + "\" requests no walks");
    return spec;
}

namespace {

void write_file(const fs::path& path, const auto& writer) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    writer(out);
}

}  // namespace

ExperimentResult run_full_experiment(const ExperimentConfig& cfg, int threads,
                                     std::ostream* log) {
    cfg.validate();
    auto note = [&](const std::string& msg) {
        if (log) *log << msg << '\n';
    };

    const Graph g = load_edge_list_file(cfg.edge_list);
    const LabelMap labels = load_labels_file(cfg.labels_path, g);
    note("graph: " + std::to_string(g.n_nodes()) + " nodes, " +
         std::to_string(g.n_edges()) + " edges, " + std::to_string(labels.n_classes()) +
         " classes");

    std::vector<MethodSpec> roster;
    bool needs_uniform = false, needs_struct = false;
    for (const auto& tok : cfg.methods) {
        roster.push_back(parse_method_token(tok, cfg.walks_per_node));
        needs_uniform |= roster.back().pair.num_walks_dw > 0;
        needs_struct |= roster.back().pair.num_walks_s2v > 0;
    }

    const fs::path out_dir(cfg.output_dir);
    for (const char* sub : {"pools", "corpora", "embeddings", "reports"})
        fs::create_directories(out_dir / sub);

    // One pool per generator, shared by every method.
    UniformWalkGenerator uniform_gen(cfg.walk_length);
    WalkPool uniform_pool, struct_pool;
    if (needs_uniform) {
        uniform_pool = build_pool(g, uniform_gen, cfg.pool_size, cfg.walk_length,
                                  derive_seed(cfg.seed, Stream::UniformPool));
        write_file(out_dir / "pools" / "deepwalk.pool",
                   [&](std::ostream& o) { save_pool(uniform_pool, g, o); });
        note("uniform pool: " + std::to_string(uniform_pool.walks.size()) + " walks");
    }
    MultilayerGraph ml;
    if (needs_struct) {
        const int k_max = cfg.k_max < 0 ? default_k_max(g) : cfg.k_max;
        note("building multilayer graph (k_max " + std::to_string(k_max) + ")...");
        if (cfg.use_ml_cache) {
            ml = load_or_build_multilayer(g, k_max,
                                          (out_dir / "pools" / "multilayer.bin").string());
        } else {
            ml = build_multilayer(g, k_max);
        }
        StructuralWalkGenerator struct_gen(ml, cfg.stay_prob, cfg.struct_walk_length);
        struct_pool = build_pool(g, struct_gen, cfg.pool_size, cfg.struct_walk_length,
                                 derive_seed(cfg.seed, Stream::StructPool));
        write_file(out_dir / "pools" / "struc2vec.pool",
                   [&](std::ostream& o) { save_pool(struct_pool, g, o); });
        note("structural pool: " + std::to_string(struct_pool.walks.size()) + " walks");
    }

    SplitSpec split_spec;
    split_spec.train_ratio = cfg.train_ratio;
    split_spec.rounds = cfg.rounds;
    split_spec.seed = derive_seed(cfg.seed, Stream::Split);

    const std::string dataset = fs::path(cfg.edge_list).filename().string();
    const std::string echo = render_config(cfg);

    ExperimentResult result;
    if (!cfg.regenerate_per_round) {
        // Default protocol: embeddings once per method, only splits vary.
        std::vector<EmbeddingMatrix> matrices(roster.size());
        for (std::size_t m = 0; m < roster.size(); ++m) {
            const auto& spec = roster[m];
            note("method " + spec.name + ": sampling corpus and training...");
            WalkCorpus corpus =
                generate_corpus_from_pools(uniform_pool, struct_pool, spec.pair,
                                           derive_seed(cfg.seed, Stream::Corpus, {m}));
            write_file(out_dir / "corpora" / (spec.name + ".walks"),
                       [&](std::ostream& o) { save_corpus(corpus, g, o); });
            write_file(out_dir / "corpora" / (spec.name + ".walks.tags"),
                       [&](std::ostream& o) { save_corpus_tags(corpus, o); });

            SkipGramParams sg = cfg.sg;
            sg.seed = derive_seed(cfg.seed, Stream::Train, {m});
            sg.threads = threads;
            matrices[m] = train(corpus, sg);
            write_file(out_dir / "embeddings" / (spec.name + ".emb"),
                       [&](std::ostream& o) { save_embeddings(matrices[m], g, o); });
        }

        std::vector<std::pair<std::string, const EmbeddingMatrix*>> methods;
        for (std::size_t m = 0; m < roster.size(); ++m)
            methods.emplace_back(roster[m].name, &matrices[m]);
        note("evaluating " + std::to_string(methods.size()) + " methods over " +
             std::to_string(cfg.rounds) + " rounds...");
        result.reports = run_experiment(methods, labels, split_spec);
    } else {
        // Paper-ambiguity alternative: fresh corpus + training per round.
        const std::vector<NodeId> labeled = labels.labeled_nodes();
        bool multi_label = false;
        for (NodeId v : labeled) multi_label |= labels.labels[v].size() > 1;
        std::vector<std::pair<std::vector<NodeId>, std::vector<NodeId>>> splits;
        for (int r = 0; r < cfg.rounds; ++r) splits.push_back(split(labeled, split_spec, r));

        for (std::size_t m = 0; m < roster.size(); ++m) {
            const auto& spec = roster[m];
            ExperimentReport report;
            report.method = spec.name;
            for (int r = 0; r < cfg.rounds; ++r) {
                note("method " + spec.name + " round " + std::to_string(r) + "...");
                WalkCorpus corpus = generate_corpus_from_pools(
                    uniform_pool, struct_pool, spec.pair,
                    derive_seed(cfg.seed, Stream::Corpus,
                                {m, static_cast<std::uint64_t>(r)}));
                SkipGramParams sg = cfg.sg;
                sg.seed = derive_seed(cfg.seed, Stream::Train,
                                      {m, static_cast<std::uint64_t>(r)});
                sg.threads = threads;
                const EmbeddingMatrix emb = train(corpus, sg);
                report.round_scores.push_back(
                    evaluate_round(emb, labels, splits[static_cast<std::size_t>(r)].first,
                                   splits[static_cast<std::size_t>(r)].second, multi_label));
            }
            finalize_report(report);
            result.reports.push_back(std::move(report));
        }
    }

    for (auto& report : result.reports) {
        report.dataset = dataset;
        report.config_echo = echo;
        write_file(out_dir / "reports" / (report.method + ".txt"),
                   [&](std::ostream& o) { write_report_text(report, o); });
    }
    const fs::path csv_path = out_dir / "reports" / "results.csv";
    write_file(csv_path, [&](std::ostream& o) { write_report_csv(result.reports, o); });
    write_file(out_dir / "reports" / "resolved_config.txt",
               [&](std::ostream& o) { o << echo; });
    result.csv_path = csv_path.string();

    for (const auto& report : result.reports) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%-12s mean %.4f std %.4f", report.method.c_str(),
                      report.mean, report.std_dev);
        note(buf);
    }
    return result;
}

}  // namespace multiwalk
