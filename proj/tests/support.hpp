#pragma once

#include <cmath>
#include <vector>

#include "numenc/basis.hpp"
#include "numenc/rng.hpp"
#include "numenc/types.hpp"

namespace numenc::testing {

/// Mixed absolute/relative error: |a - b| / max(1, |b|).
inline double mixed_rel_err(double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

/// Random valid clamped knot vector: K internal knots with pairwise
/// separation >= min_gap, strictly inside (0, 1).
inline KnotVector random_knot_vector(Rng& rng, int degree, int K,
                                     double min_gap = 0.02) {
    std::vector<double> internal;
    while (static_cast<int>(internal.size()) < K) {
        const double candidate = rng.uniform(min_gap, 1.0 - min_gap);
        bool ok = true;
        for (double v : internal)
            if (std::abs(v - candidate) < min_gap) ok = false;
        if (ok) internal.push_back(candidate);
    }
    std::sort(internal.begin(), internal.end());
    return build_clamped_knots(internal, degree, 0.0, 1.0);
}

/// A point in (0, 1) at distance > margin from every knot.
inline double random_point_off_knots(Rng& rng, const KnotVector& kv,
                                     double margin = 1e-4) {
    for (;;) {
        const double x = rng.uniform(margin, 1.0 - margin);
        bool ok = true;
        for (double k : kv.internal)
            if (std::abs(x - k) < margin) ok = false;
        if (ok) return x;
    }
}

/// Central finite difference of the basis vector with respect to internal
/// knot k.
inline VectorXd fd_knot_derivative(BasisFamily family, const KnotVector& kv, int k,
                                   double x, double h = 1e-6) {
    std::vector<double> plus = kv.internal;
    std::vector<double> minus = kv.internal;
    plus[k] += h;
    minus[k] -= h;
    const KnotVector kvp = build_clamped_knots(plus, kv.degree, kv.lo, kv.hi);
    const KnotVector kvm = build_clamped_knots(minus, kv.degree, kv.lo, kv.hi);
    return (eval_basis(family, kvp, x) - eval_basis(family, kvm, x)) / (2.0 * h);
}

/// Composite Simpson integral, independent of the library quadrature.
template <typename F>
double simpson(F&& f, double a, double b, int intervals = 2000) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / intervals;
    double acc = f(a) + f(b);
    for (int i = 1; i < intervals; ++i)
        acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

} // namespace numenc::testing
