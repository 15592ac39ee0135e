#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "multiwalk/config.hpp"
#include "multiwalk/eval.hpp"
#include "multiwalk/multiwalk.hpp"

namespace multiwalk {

// A roster entry resolved to its mix: pure methods are (walks_per_node, 0)
// and (0, walks_per_node); "A:B" tokens are (A, B).
struct MethodSpec {
    std::string name;
    MixPair pair;
};

MethodSpec parse_method_token(const std::string& token, int walks_per_node);

struct ExperimentResult {
    std::vector<ExperimentReport> reports;
    std::string csv_path;
};

// The one-shot §IV-style protocol: build one pool per generator, run every
// roster method through mix -> train -> evaluate with shared per-round
// splits, and write pools/, corpora/, embeddings/ and reports/ under the
// configured output directory. Deterministic for a fixed config and root seed
// when threads == 1.
ExperimentResult run_full_experiment(const ExperimentConfig& cfg, int threads,
                                     std::ostream* log = nullptr);

}  // namespace multiwalk
