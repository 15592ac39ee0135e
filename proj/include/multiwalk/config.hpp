#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "multiwalk/embed.hpp"
#include "multiwalk/eval.hpp"

namespace multiwalk {

// Everything a §IV-style experiment run needs, mirrored one key per field in
// the flat "key = value" config format. Unknown keys are errors so
// hyperparameter typos fail loudly.
struct ExperimentConfig {
    std::string edge_list;
    std::string labels_path;
    std::string output_dir;

    int pool_size = 30;
    int walk_length = 80;         // uniform generator
    int struct_walk_length = 80;  // structural generator
    int k_max = -1;               // -1 = auto: min(graph diameter, 5)
    double stay_prob = 0.7;
    int walks_per_node = 10;  // per-node total for the pure methods

    SkipGramParams sg;  // seed and threads are filled in at run time

    // Tokens: "deepwalk" (or "dw"), "struc2vec" (or "s2v"), or "A:B" mixes.
    std::vector<std::string> methods;

    double train_ratio = 0.8;
    int rounds = 10;
    std::uint64_t seed = 1;
    bool regenerate_per_round = false;
    bool use_ml_cache = false;

    void validate() const;
};

ExperimentConfig load_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config_file(const std::string& path);

// Fully resolved key = value text, suitable both as provenance output and as
// a reloadable config.
std::string render_config(const ExperimentConfig& cfg);

}  // namespace multiwalk
