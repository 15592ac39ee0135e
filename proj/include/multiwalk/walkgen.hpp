#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "multiwalk/graph.hpp"
#include "multiwalk/rng.hpp"
#include "multiwalk/walk.hpp"

namespace multiwalk {

// A named producer of finite node sequences with a configured walk length.
// generate() must return a walk starting at `start` and be a pure function of
// (graph, start, length, rng state).
class WalkGenerator {
public:
    virtual ~WalkGenerator() = default;
    virtual const std::string& tag() const = 0;
    virtual int walk_length() const = 0;
    virtual Walk generate(const Graph& g, NodeId start, int length, Rng& rng) const = 0;
};

// Walk of exactly `length` nodes, each successor uniform over the current
// node's neighbors. A node with no neighbors truncates the walk there, so an
// isolated start yields the single-node walk [start].
Walk uniform_walk(const Graph& g, NodeId start, int length, Rng& rng);

class UniformWalkGenerator final : public WalkGenerator {
public:
    explicit UniformWalkGenerator(int length = 80) : length_(length) {}
    const std::string& tag() const override { return tag_; }
    int walk_length() const override { return length_; }
    Walk generate(const Graph& g, NodeId start, int length, Rng& rng) const override {
        return uniform_walk(g, start, length, rng);
    }

private:
    std::string tag_ = "deepwalk";
    int length_;
};

// Fixed-size reservoir of precomputed walks per start node for one generator.
// Walks are stored node-major: walks[v * pool_size + i].
struct WalkPool {
    std::string generator_tag;
    int pool_size = 0;
    int length = 0;
    std::uint64_t seed = 0;
    std::size_t n_nodes = 0;
    std::vector<Walk> walks;

    const Walk& at(NodeId v, int i) const {
        return walks[static_cast<std::size_t>(v) * pool_size + i];
    }
};

// Every (node, index) entry gets its own seed derived from `seed`, so pools
// are reproducible and independent of construction order; building with any
// thread count gives identical results.
WalkPool build_pool(const Graph& g, const WalkGenerator& gen, int pool_size, int length,
                    std::uint64_t seed);

// `count` distinct pool indices chosen uniformly without replacement; the
// returned walks are verbatim pool entries. count > pool_size throws
// DataError("pool exhausted").
std::vector<Walk> sample_from_pool(const WalkPool& pool, NodeId v, int count, Rng& rng);

// Pool file: corpus format plus a header comment recording the generator tag,
// pool size, walk length and seed.
void save_pool(const WalkPool& pool, const Graph& g, std::ostream& out);
WalkPool load_pool(std::istream& in, const Graph& g);

}  // namespace multiwalk
