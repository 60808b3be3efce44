#pragma once

#include <span>
#include <vector>

#include "numenc/types.hpp"

namespace numenc {

/// Clamped knot sequence for one feature: the domain endpoints are repeated
/// degree+1 times around the strictly increasing internal knots, so the
/// basis interpolates the endpoints and m = K + p + 1.
struct KnotVector {
    int degree = 3;
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> internal; // strictly increasing, inside (lo, hi)
    std::vector<double> full;     // lo * (p+1), internal, hi * (p+1)

    int num_internal() const { return static_cast<int>(internal.size()); }
    int basis_count() const { return num_internal() + degree + 1; }
};

enum class BasisFamily {
    BSpline, // Cox-de Boor, partition of unity
    MSpline, // B-spline scaled by (p+1)/span, unit integral per function
    ISpline, // running integral of the M-spline, monotone 0 -> 1
};

/// Validates the internal knots and assembles the clamped sequence.
/// Throws DegenerateDomain, NonIncreasingKnots or KnotOutOfDomain.
KnotVector build_clamped_knots(std::span<const double> internal, int degree,
                               double lo, double hi);

/// All m basis values of the family at x. The caller clips x to [lo, hi];
/// intervals are half-open except the last one, which is closed at hi.
VectorXd eval_basis(BasisFamily family, const KnotVector& kv, double x);

/// Row i holds eval_basis(family, kv, xs[i]).
MatrixXd eval_basis_batch(BasisFamily family, const KnotVector& kv,
                          std::span<const double> xs);

/// m x K matrix of partial derivatives of each basis value with respect to
/// the internal knots, computed by forward-mode differentiation through the
/// recursion (boundary knots are constants).
MatrixXd basis_knot_jacobian(BasisFamily family, const KnotVector& kv, double x);

/// Gauss-Legendre nodes and weights on [-1, 1], exact for polynomials of
/// degree <= 2n - 1.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

/// Point evaluator primed on one (family, knot vector) pair. I-spline span
/// integrals (and their knot derivatives) are precomputed once so repeated
/// point evaluations stay cheap inside training loops.
class BasisEvaluator {
public:
    BasisEvaluator(BasisFamily family, const KnotVector& kv, bool with_jacobian = false);

    int basis_count() const { return m_; }
    int num_internal() const { return K_; }
    const KnotVector& knots() const { return kv_; }

    void value(double x, VectorXd& out) const;
    /// out: m values; jac: m x K knot Jacobian. Requires with_jacobian.
    void value_and_jacobian(double x, VectorXd& out, MatrixXd& jac) const;

private:
    int span_of(double x) const;

    BasisFamily family_;
    KnotVector kv_;
    bool with_jacobian_;
    int m_ = 0;
    int K_ = 0;
    GaussLegendre gl_;
    // I-spline prefix integrals: cum_[s] = integral of each M over [lo, span s start].
    std::vector<VectorXd> cum_;
    std::vector<MatrixXd> cum_jac_;
};

} // namespace numenc
