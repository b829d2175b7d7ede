#pragma once

// Finite-difference oracles used by the test suites. Everything here is
// independent of the jet pipeline: plain function evaluations, central
// stencils, Richardson refinement.

#include <array>
#include <cmath>
#include <functional>

namespace qg_test {

using ScalarFn = std::function<double(const std::array<double, 4>&)>;

namespace detail {

struct Stencil {
    int lo;
    std::array<double, 5> c;
};

// 2nd-order central stencils for the k-th derivative
inline const Stencil& stencil(int k) {
    static const Stencil tab[5] = {
        {0, {1, 0, 0, 0, 0}},
        {-1, {-0.5, 0, 0.5, 0, 0}},
        {-1, {1, -2, 1, 0, 0}},
        {-2, {-0.5, 1, 0, -1, 0.5}},
        {-2, {1, -4, 6, -4, 1}},
    };
    return tab[k];
}

inline int stencil_len(int k) { return k <= 0 ? 1 : (k <= 2 ? 3 : 5); }

inline double apply(const ScalarFn& f, std::array<double, 4> x,
                    const std::array<int, 4>& order, int axis, double h) {
    if (axis == 4) return f(x);
    const int k = order[axis];
    if (k == 0) return apply(f, x, order, axis + 1, h);
    const Stencil& s = stencil(k);
    double acc = 0.0;
    for (int i = 0; i < stencil_len(k); ++i) {
        if (s.c[i] == 0.0) continue;
        auto xx = x;
        xx[axis] += (s.lo + i) * h;
        acc += s.c[i] * apply(f, xx, order, axis + 1, h);
    }
    return acc / std::pow(h, k);
}

} // namespace detail

inline double fd_partial(const ScalarFn& f, const std::array<double, 4>& x,
                         const std::array<int, 4>& order, double h) {
    return detail::apply(f, x, order, 0, h);
}

// one Richardson step: O(h^2) -> O(h^4)
inline double fd_partial_richardson(const ScalarFn& f, const std::array<double, 4>& x,
                                    const std::array<int, 4>& order, double h) {
    double d1 = fd_partial(f, x, order, h);
    double d2 = fd_partial(f, x, order, 0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

// default step tuned per derivative order
inline double fd_step(int total_order) {
    switch (total_order) {
        case 1: return 1e-4;
        case 2: return 1e-3;
        case 3: return 4e-3;
        default: return 2e-2;
    }
}

inline double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace qg_test
