#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "multiwalk/graph.hpp"

namespace multiwalk {

// A finite node sequence plus the tag of the generator that produced it.
// Uniform walks respect adjacency; the abstraction does not require it.
struct Walk {
    std::vector<NodeId> nodes;
    std::string generator_tag;
};

struct WalkCorpus {
    std::vector<Walk> walks;

    std::size_t size() const { return walks.size(); }
    bool empty() const { return walks.empty(); }
    std::size_t total_tokens() const;
};

// Corpus file: one walk per line, space-separated original node names
// (SkipGram-corpus compatible). '#' lines are skipped on read.
void save_corpus(const WalkCorpus& corpus, const Graph& g, std::ostream& out);
WalkCorpus load_corpus(std::istream& in, const Graph& g, const std::string& default_tag = "");

// Sidecar tag file: one generator tag per walk, same order as the corpus.
void save_corpus_tags(const WalkCorpus& corpus, std::ostream& out);
void load_corpus_tags(std::istream& in, WalkCorpus& corpus);

}  // namespace multiwalk
