#pragma once

#include <cstdint>
#include <initializer_list>

namespace multiwalk {

// splitmix64 finalizer. Used both to expand seeds into generator state and as
// the mixing step of derive_seed below.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream tags keep independent random streams from colliding when they are
// derived from the same root seed.
enum class Stream : std::uint64_t {
    UniformPool = 1,
    StructPool = 2,
    Corpus = 3,
    Train = 4,
    TrainInit = 5,
    Split = 6,
    Mix = 7,
    Synthetic = 8,
};

// Deterministic seed derivation: fold every part into the accumulator with
// splitmix64. All randomness in the project flows
//   root seed -> stream tag -> (node, index, ...)
// through this one function, so any sub-computation (one pool entry, one
// method's corpus, one split) can be reproduced in isolation. The mixing
// constants are fixed; changing them breaks every recorded seed.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> parts) {
    std::uint64_t s = splitmix64(base);
    for (std::uint64_t p : parts) {
        s = splitmix64(s ^ splitmix64(p ^ 0x632be59bd9b4e019ULL));
    }
    return s;
}

inline std::uint64_t derive_seed(std::uint64_t base, Stream tag,
                                 std::initializer_list<std::uint64_t> parts = {}) {
    std::uint64_t s = derive_seed(base, {static_cast<std::uint64_t>(tag)});
    for (std::uint64_t p : parts) {
        s = splitmix64(s ^ splitmix64(p ^ 0x632be59bd9b4e019ULL));
    }
    return s;
}

// xoshiro256** seeded via splitmix64. std::mt19937 plus the standard
// distributions would not be bit-stable across standard libraries, so bounded
// draws use Lemire rejection and doubles take the top 53 bits.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) {
            s = splitmix64(s);
            w = s;
        }
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n), unbiased (Lemire's method). n must be > 0.
    std::uint32_t next_bounded(std::uint32_t n) {
        std::uint32_t x = static_cast<std::uint32_t>(next_u64());
        std::uint64_t m = static_cast<std::uint64_t>(x) * n;
        auto l = static_cast<std::uint32_t>(m);
        if (l < n) {
            std::uint32_t t = -n % n;
            while (l < t) {
                x = static_cast<std::uint32_t>(next_u64());
                m = static_cast<std::uint64_t>(x) * n;
                l = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace multiwalk
