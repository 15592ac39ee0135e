#include "multiwalk/walk.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace multiwalk {

std::size_t WalkCorpus::total_tokens() const {
    std::size_t n = 0;
    for (const auto& w : walks) n += w.nodes.size();
    return n;
}

void save_corpus(const WalkCorpus& corpus, const Graph& g, std::ostream& out) {
    for (const auto& w : corpus.walks) {
        for (std::size_t i = 0; i < w.nodes.size(); ++i) {
            if (i) out << ' ';
            out << g.name(w.nodes[i]);
        }
        out << '\n';
    }
}

WalkCorpus load_corpus(std::istream& in, const Graph& g, const std::string& default_tag) {
    std::unordered_map<std::string, NodeId> id_of;
    for (NodeId v = 0; v < g.n_nodes(); ++v) id_of.emplace(g.name(v), v);

    WalkCorpus corpus;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        Walk w;
        w.generator_tag = default_tag;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            auto it = id_of.find(tok);
            if (it == id_of.end()) {
                throw DataError("corpus line " + std::to_string(lineno) +
                                ": unknown node \"" + tok + "\"");
            }
            w.nodes.push_back(it->second);
        }
        if (w.nodes.empty()) continue;
        corpus.walks.push_back(std::move(w));
    }
    return corpus;
}

void save_corpus_tags(const WalkCorpus& corpus, std::ostream& out) {
    for (const auto& w : corpus.walks) out << w.generator_tag << '\n';
}

void load_corpus_tags(std::istream& in, WalkCorpus& corpus) {
    std::string line;
    std::size_t i = 0;
    while (std::getline(in, line) && i < corpus.walks.size()) {
        corpus.walks[i++].generator_tag = line;
    }
    if (i != corpus.walks.size()) throw DataError("tag sidecar shorter than corpus");
}

}  // namespace multiwalk
