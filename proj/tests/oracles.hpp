#pragma once

// Independent test oracles. These deliberately share no code with the library
// paths they check.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace oracles {

inline double ratio_cost(std::int32_t x, std::int32_t y) {
    const double a = x > 0 ? x : 1.0;
    const double b = y > 0 ? y : 1.0;
    return (a > b ? a / b : b / a) - 1.0;
}

// Plain recursive DTW over all monotone alignments; exponential, fine for the
// short sequences the tests use.
inline double brute_force_dtw(std::span<const std::int32_t> a,
                              std::span<const std::int32_t> b) {
    std::function<double(std::size_t, std::size_t)> rec = [&](std::size_t i,
                                                              std::size_t j) -> double {
        const double c = ratio_cost(a[i], b[j]);
        if (i == 0 && j == 0) return c;
        double best = 1e300;
        if (i > 0) best = std::min(best, rec(i - 1, j));
        if (j > 0) best = std::min(best, rec(i, j - 1));
        if (i > 0 && j > 0) best = std::min(best, rec(i - 1, j - 1));
        return c + best;
    };
    return rec(a.size() - 1, b.size() - 1);
}

// Central finite difference of f along coordinate `idx` at `x`.
inline double central_diff(const std::function<double(const std::vector<double>&)>& f,
                           std::vector<double> x, std::size_t idx, double h = 1e-5) {
    x[idx] += h;
    const double hi = f(x);
    x[idx] -= 2 * h;
    const double lo = f(x);
    return (hi - lo) / (2 * h);
}

}  // namespace oracles
