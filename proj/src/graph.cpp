#include "multiwalk/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace multiwalk {

Graph Graph::from_edges(std::vector<std::string> names,
                        const std::vector<std::pair<NodeId, NodeId>>& edges) {
    Graph g;
    g.names_ = std::move(names);
    const std::size_t n = g.names_.size();

    std::vector<std::size_t> deg(n, 0);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw DataError("edge endpoint out of range");
        if (u == v) throw DataError("from_edges: self-loop not allowed");
        ++deg[u];
        ++deg[v];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
    g.adj_.resize(g.offsets_[n]);

    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
        g.adj_[cursor[u]++] = v;
        g.adj_[cursor[v]++] = u;
    }
    for (std::size_t v = 0; v < n; ++v) {
        auto begin = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
        auto end = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
        std::sort(begin, end);
        if (std::adjacent_find(begin, end) != end)
            throw DataError("from_edges: duplicate edge");
    }
    g.n_edges_ = edges.size();
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::uint64_t Graph::content_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 0x100000001b3ULL;
        }
    };
    for (NodeId u = 0; u < names_.size(); ++u) {
        mix(names_[u].data(), names_[u].size());
        mix("\n", 1);
        for (NodeId v : neighbors(u)) {
            if (v > u) mix(&v, sizeof(v));
        }
    }
    return h;
}

namespace {

bool is_comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;  // blank
}

}  // namespace

Graph load_edge_list(std::istream& in) {
    std::unordered_map<std::string, NodeId> id_of;
    std::vector<std::string> names;
    std::vector<std::pair<NodeId, NodeId>> edges;

    auto intern = [&](const std::string& tok) -> NodeId {
        auto [it, inserted] = id_of.try_emplace(tok, static_cast<NodeId>(names.size()));
        if (inserted) names.push_back(tok);
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_comment_or_blank(line)) continue;
        std::istringstream ls(line);
        std::string a, b;
        ls >> a;
        if (!(ls >> b)) {
            throw DataError("edge list line " + std::to_string(lineno) +
                            ": expected at least 2 tokens");
        }
        NodeId u = intern(a);
        NodeId v = intern(b);
        if (u == v) continue;  // self-loop dropped
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (names.empty()) throw DataError("empty graph");

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph::from_edges(std::move(names), edges);
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open edge list file: " + path);
    return load_edge_list(in);
}

void save_edge_list(const Graph& g, std::ostream& out) {
    for (NodeId u = 0; u < g.n_nodes(); ++u) {
        for (NodeId v : g.neighbors(u)) {
            if (v > u) out << g.name(u) << ' ' << g.name(v) << '\n';
        }
    }
}

std::vector<NodeId> LabelMap::labeled_nodes() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < labels.size(); ++v) {
        if (!labels[v].empty()) out.push_back(v);
    }
    return out;
}

LabelMap load_labels(std::istream& in, const Graph& g) {
    std::unordered_map<std::string, NodeId> id_of;
    for (NodeId v = 0; v < g.n_nodes(); ++v) id_of.emplace(g.name(v), v);

    LabelMap lm;
    lm.labels.assign(g.n_nodes(), {});
    std::unordered_map<std::string, std::int32_t> class_of;
    std::vector<bool> seen(g.n_nodes(), false);

    auto intern_class = [&](const std::string& tok) -> std::int32_t {
        auto [it, inserted] =
            class_of.try_emplace(tok, static_cast<std::int32_t>(lm.class_names.size()));
        if (inserted) lm.class_names.push_back(tok);
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_comment_or_blank(line)) continue;
        std::istringstream ls(line);
        std::string node_tok;
        ls >> node_tok;
        auto it = id_of.find(node_tok);
        if (it == id_of.end()) {
            throw DataError("label file line " + std::to_string(lineno) +
                            ": unknown node \"" + node_tok + "\"");
        }
        NodeId v = it->second;
        if (seen[v]) {
            throw DataError("label file line " + std::to_string(lineno) + ": node \"" +
                            node_tok + "\" listed twice");
        }
        seen[v] = true;
        std::string cls;
        while (ls >> cls) lm.labels[v].push_back(intern_class(cls));
        if (lm.labels[v].empty()) {
            throw DataError("label file line " + std::to_string(lineno) +
                            ": node \"" + node_tok + "\" has no classes");
        }
        std::sort(lm.labels[v].begin(), lm.labels[v].end());
        lm.labels[v].erase(std::unique(lm.labels[v].begin(), lm.labels[v].end()),
                           lm.labels[v].end());
    }
    return lm;
}

LabelMap load_labels_file(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open label file: " + path);
    return load_labels(in, g);
}

void save_labels(const LabelMap& labels, const Graph& g, std::ostream& out) {
    for (NodeId v = 0; v < g.n_nodes(); ++v) {
        if (v >= labels.labels.size() || labels.labels[v].empty()) continue;
        out << g.name(v);
        for (std::int32_t c : labels.labels[v]) out << ' ' << labels.class_names[c];
        out << '\n';
    }
}

}  // namespace multiwalk
