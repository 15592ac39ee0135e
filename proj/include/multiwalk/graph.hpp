#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace multiwalk {

using NodeId = std::uint32_t;

// Malformed input files or invalid runtime data. The CLI maps this to exit
// code 2; everything else unexpected becomes exit code 3.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Undirected, unweighted simple graph in CSR form. Node ids are dense 0..n-1
// in first-appearance order of the source edge list; the original tokens are
// kept for I/O. Immutable after construction, so concurrent reads are safe.
class Graph {
public:
    Graph() = default;

    // `edges` must already be free of self-loops and duplicates; ids must be
    // < names.size(). Loaders are responsible for cleanup.
    static Graph from_edges(std::vector<std::string> names,
                            const std::vector<std::pair<NodeId, NodeId>>& edges);

    std::size_t n_nodes() const { return names_.size(); }
    std::size_t n_edges() const { return n_edges_; }

    std::span<const NodeId> neighbors(NodeId v) const {
        check_node(v);
        return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

    std::size_t degree(NodeId v) const {
        check_node(v);
        return offsets_[v + 1] - offsets_[v];
    }

    bool has_edge(NodeId u, NodeId v) const;

    const std::string& name(NodeId v) const {
        check_node(v);
        return names_[v];
    }
    const std::vector<std::string>& node_names() const { return names_; }

    // FNV-1a over the canonical edge list (names included); keys the
    // multilayer cache.
    std::uint64_t content_hash() const;

    bool operator==(const Graph&) const = default;

private:
    void check_node(NodeId v) const {
        if (v >= names_.size()) throw DataError("invalid node id " + std::to_string(v));
    }

    std::vector<std::string> names_;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> adj_;
    std::size_t n_edges_ = 0;
};

// One edge per line, first two whitespace-separated tokens are the endpoint
// names, extra tokens ignored, '#' lines and blank lines skipped. Self-loops
// are dropped and duplicate edges merged. Throws DataError on a line with one
// token (naming the line number) and on input with no nodes ("empty graph").
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

// Canonical form: one line "name_u name_v" per edge, u < v, sorted by (u, v).
// Isolated nodes cannot be represented and are dropped with the caller's
// knowledge (round-trip tests use graphs without them).
void save_edge_list(const Graph& g, std::ostream& out);

struct LabelMap {
    // Per node, sorted class ids; empty means unlabeled (excluded from
    // evaluation). Class ids index class_names.
    std::vector<std::vector<std::int32_t>> labels;
    std::vector<std::string> class_names;

    std::size_t n_classes() const { return class_names.size(); }
    bool labeled(NodeId v) const { return v < labels.size() && !labels[v].empty(); }
    std::vector<NodeId> labeled_nodes() const;
};

// "node class [class ...]" per line, '#' comments skipped. Unknown node names
// and nodes listed twice are errors; graph nodes absent from the file are
// fine.
LabelMap load_labels(std::istream& in, const Graph& g);
LabelMap load_labels_file(const std::string& path, const Graph& g);
void save_labels(const LabelMap& labels, const Graph& g, std::ostream& out);

}  // namespace multiwalk
