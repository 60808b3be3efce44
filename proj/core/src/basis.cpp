#include "numenc/basis.hpp"

#include <algorithm>
#include <cmath>

#include "numenc/errors.hpp"

namespace numenc {

namespace {

// Zero-degree indicators over the full sequence. Intervals are half-open
// [t_s, t_{s+1}) except the last nondegenerate one, which is closed at hi so
// the clamped basis interpolates the right endpoint.
void degree0_indicators(const KnotVector& kv, double x, std::vector<double>& N) {
    const auto& t = kv.full;
    const int nspan = static_cast<int>(t.size()) - 1;
    N.assign(nspan, 0.0);
    for (int s = 0; s < nspan; ++s) {
        const bool inside = t[s] <= x && x < t[s + 1];
        const bool closed_end = x == kv.hi && t[s] < t[s + 1] && t[s + 1] == kv.hi;
        if (inside || closed_end) N[s] = 1.0;
    }
}

// Cox-de Boor values of all degree-p functions; entries [0, m) of N are the
// basis. If low_degree is given it receives the degree-(p-1) values.
void bspline_values(const KnotVector& kv, double x, std::vector<double>& N,
                    std::vector<double>* low_degree = nullptr) {
    const auto& t = kv.full;
    const int nspan = static_cast<int>(t.size()) - 1;
    degree0_indicators(kv, x, N);
    if (low_degree && kv.degree == 0) *low_degree = N;
    for (int q = 1; q <= kv.degree; ++q) {
        if (low_degree && q == kv.degree) *low_degree = N;
        for (int s = 0; s + q < nspan; ++s) {
            const double d1 = t[s + q] - t[s];
            const double d2 = t[s + q + 1] - t[s + 1];
            double v = 0.0;
            if (d1 > 0.0) v += (x - t[s]) / d1 * N[s];
            if (d2 > 0.0) v += (t[s + q + 1] - x) / d2 * N[s + 1];
            N[s] = v;
        }
    }
}

// Seed of full-knot index i with respect to internal knot k.
inline double knot_seed(const KnotVector& kv, int i, int k) {
    return i == kv.degree + 1 + k ? 1.0 : 0.0;
}

// Values plus the dense (nspan x K) forward-mode derivative of each entry
// with respect to the internal knots. Fractions with zero denominator are
// zero, value and derivative alike.
void bspline_values_jac(const KnotVector& kv, double x, std::vector<double>& N,
                        MatrixXd& dN, std::vector<double>* low_degree = nullptr) {
    const auto& t = kv.full;
    const int p = kv.degree;
    const int K = kv.num_internal();
    const int nspan = static_cast<int>(t.size()) - 1;
    degree0_indicators(kv, x, N);
    dN.setZero(nspan, std::max(K, 1));
    if (low_degree && p == 0) *low_degree = N;
    for (int q = 1; q <= p; ++q) {
        if (low_degree && q == p) *low_degree = N;
        for (int s = 0; s + q < nspan; ++s) {
            const double d1 = t[s + q] - t[s];
            const double d2 = t[s + q + 1] - t[s + 1];
            const double nl = N[s];
            const double nr = N[s + 1];
            double a = 0.0, b = 0.0;
            if (d1 > 0.0) a = (x - t[s]) / d1;
            if (d2 > 0.0) b = (t[s + q + 1] - x) / d2;
            for (int k = 0; k < K; ++k) dN(s, k) = a * dN(s, k) + b * dN(s + 1, k);
            if (d1 > 0.0 && nl != 0.0) {
                const int kl = s - p - 1;      // index of t[s]
                const int kr = s + q - p - 1;  // index of t[s+q]
                if (kl >= 0 && kl < K) dN(s, kl) += (x - t[s + q]) / (d1 * d1) * nl;
                if (kr >= 0 && kr < K) dN(s, kr) += -(x - t[s]) / (d1 * d1) * nl;
            }
            if (d2 > 0.0 && nr != 0.0) {
                const int kl = s - p;          // index of t[s+1]
                const int kr = s + q - p;      // index of t[s+q+1]
                if (kl >= 0 && kl < K) dN(s, kl) += (t[s + q + 1] - x) / (d2 * d2) * nr;
                if (kr >= 0 && kr < K) dN(s, kr) += (x - t[s + 1]) / (d2 * d2) * nr;
            }
            N[s] = a * nl + b * nr;
        }
    }
}

inline double mspline_scale(const KnotVector& kv, int l) {
    const double span = kv.full[l + kv.degree + 1] - kv.full[l];
    return span > 0.0 ? (kv.degree + 1) / span : 0.0;
}

// d/dt of the degree-p B-spline from the degree-(p-1) values.
inline double bspline_dt(const KnotVector& kv, const std::vector<double>& low, int l) {
    const int p = kv.degree;
    if (p == 0) return 0.0;
    const auto& t = kv.full;
    double v = 0.0;
    const double d1 = t[l + p] - t[l];
    const double d2 = t[l + p + 1] - t[l + 1];
    if (d1 > 0.0) v += low[l] / d1;
    if (d2 > 0.0) v -= low[l + 1] / d2;
    return p * v;
}

int quad_points(int degree) { return (degree + 2) / 2; } // ceil((p+1)/2)

// Quadrature of all m M-splines over [a, b], assumed free of interior knots.
void mspline_span_integral(const KnotVector& kv, const GaussLegendre& gl,
                           double a, double b, VectorXd& out,
                           std::vector<double>& scratch) {
    const int m = kv.basis_count();
    out.setZero(m);
    const double h = b - a;
    if (h <= 0.0) return;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double xi = a + h * 0.5 * (gl.nodes[q] + 1.0);
        bspline_values(kv, xi, scratch);
        const double wq = gl.weights[q] * h * 0.5;
        for (int l = 0; l < m; ++l) out[l] += wq * mspline_scale(kv, l) * scratch[l];
    }
}

// Same integral with its derivative with respect to the internal knots.
// seed_a / seed_b are the internal-knot indices of the endpoints (-1 for a
// constant endpoint); node positions move with the endpoints, so the result
// is the exact derivative of the exact integral.
void mspline_span_integral_jac(const KnotVector& kv, const GaussLegendre& gl,
                               double a, int seed_a, double b, int seed_b,
                               VectorXd& out, MatrixXd& jac) {
    const int m = kv.basis_count();
    const int p = kv.degree;
    const int K = kv.num_internal();
    out.setZero(m);
    jac.setZero(m, std::max(K, 1));
    const double h = b - a;
    if (h <= 0.0) return;
    std::vector<double> N, low;
    MatrixXd dN;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double sq = 0.5 * (gl.nodes[q] + 1.0);
        const double xi = a + h * sq;
        bspline_values_jac(kv, xi, N, dN, &low);
        const double wq = gl.weights[q] * 0.5;
        for (int l = 0; l < m; ++l) {
            const double c = mspline_scale(kv, l);
            if (c == 0.0) continue;
            const double mval = c * N[l];
            out[l] += wq * h * mval;
            const double dmdt = c * bspline_dt(kv, low, l);
            const double span = kv.full[l + p + 1] - kv.full[l];
            for (int k = 0; k < K; ++k) {
                const double ea = seed_a == k ? 1.0 : 0.0;
                const double eb = seed_b == k ? 1.0 : 0.0;
                double dm = c * dN(l, k); // explicit knot dependence of M at fixed t
                if (l + p + 1 == p + 1 + k) dm += -mval / span;
                if (l == p + 1 + k) dm += mval / span;
                const double dxi = ea * (1.0 - sq) + eb * sq;
                jac(l, k) += wq * ((eb - ea) * mval + h * (dm + dmdt * dxi));
            }
        }
    }
}

} // namespace

KnotVector build_clamped_knots(std::span<const double> internal, int degree,
                               double lo, double hi) {
    if (!(lo < hi)) throw DegenerateDomain("knot domain is degenerate: lo >= hi");
    if (degree < 0) throw ConfigError("spline degree must be nonnegative");
    for (std::size_t i = 0; i < internal.size(); ++i) {
        if (i > 0 && !(internal[i] > internal[i - 1]))
            throw NonIncreasingKnots("internal knots must be strictly increasing");
        if (!(internal[i] > lo && internal[i] < hi))
            throw KnotOutOfDomain("internal knot outside the open domain (lo, hi)");
    }
    KnotVector kv;
    kv.degree = degree;
    kv.lo = lo;
    kv.hi = hi;
    kv.internal.assign(internal.begin(), internal.end());
    kv.full.reserve(internal.size() + 2 * (degree + 1));
    kv.full.insert(kv.full.end(), degree + 1, lo);
    kv.full.insert(kv.full.end(), internal.begin(), internal.end());
    kv.full.insert(kv.full.end(), degree + 1, hi);
    return kv;
}

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw ConfigError("gauss_legendre requires n >= 1");
    GaussLegendre gl;
    gl.nodes.assign(n, 0.0);
    gl.weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence for P_n(x) and P'_n(x).
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes[i] = -x;
        gl.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.weights[i] = w;
        gl.weights[n - 1 - i] = w;
    }
    if (n == 1) {
        gl.nodes[0] = 0.0;
        gl.weights[0] = 2.0;
    }
    return gl;
}

VectorXd eval_basis(BasisFamily family, const KnotVector& kv, double x) {
    BasisEvaluator ev(family, kv, false);
    VectorXd out;
    ev.value(x, out);
    return out;
}

MatrixXd eval_basis_batch(BasisFamily family, const KnotVector& kv,
                          std::span<const double> xs) {
    BasisEvaluator ev(family, kv, false);
    MatrixXd out(static_cast<Eigen::Index>(xs.size()), kv.basis_count());
    VectorXd row;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ev.value(xs[i], row);
        out.row(static_cast<Eigen::Index>(i)) = row;
    }
    return out;
}

MatrixXd basis_knot_jacobian(BasisFamily family, const KnotVector& kv, double x) {
    BasisEvaluator ev(family, kv, true);
    VectorXd vals;
    MatrixXd jac;
    ev.value_and_jacobian(x, vals, jac);
    return jac;
}

BasisEvaluator::BasisEvaluator(BasisFamily family, const KnotVector& kv, bool with_jacobian)
    : family_(family),
      kv_(kv),
      with_jacobian_(with_jacobian),
      m_(kv.basis_count()),
      K_(kv.num_internal()),
      gl_(gauss_legendre(quad_points(kv.degree))) {
    if (family_ != BasisFamily::ISpline) return;
    // Prefix integrals over the nondegenerate interior spans [t_i, t_{i+1}),
    // i = p .. p+K, so point evaluation only quadratures the partial span.
    const int p = kv_.degree;
    cum_.resize(K_ + 2);
    cum_[0] = VectorXd::Zero(m_);
    if (with_jacobian_) {
        cum_jac_.resize(K_ + 2);
        cum_jac_[0] = MatrixXd::Zero(m_, std::max(K_, 1));
    }
    std::vector<double> scratch;
    VectorXd span_int;
    MatrixXd span_jac;
    for (int j = 0; j <= K_; ++j) {
        const int i = p + j;
        const double a = kv_.full[i];
        const double b = kv_.full[i + 1];
        if (with_jacobian_) {
            const int seed_a = i - p - 1;     // -1 when a == lo
            const int seed_b = i + 1 - p - 1; // K when b == hi, masked below
            mspline_span_integral_jac(kv_, gl_, a, seed_a < 0 ? -1 : seed_a,
                                      b, seed_b >= K_ ? -1 : seed_b, span_int, span_jac);
            cum_jac_[j + 1] = cum_jac_[j] + span_jac;
        } else {
            mspline_span_integral(kv_, gl_, a, b, span_int, scratch);
        }
        cum_[j + 1] = cum_[j] + span_int;
    }
}

int BasisEvaluator::span_of(double x) const {
    const auto& knots = kv_.internal;
    const auto it = std::upper_bound(knots.begin(), knots.end(), x);
    return kv_.degree + static_cast<int>(it - knots.begin());
}

void BasisEvaluator::value(double x, VectorXd& out) const {
    x = std::clamp(x, kv_.lo, kv_.hi);
    out.resize(m_);
    if (family_ == BasisFamily::ISpline) {
        const int s = span_of(x);
        const int j = s - kv_.degree;
        out = cum_[j];
        const double a = kv_.full[s];
        if (x > a) {
            VectorXd part;
            std::vector<double> scratch;
            mspline_span_integral(kv_, gl_, a, x, part, scratch);
            out += part;
        }
        return;
    }
    std::vector<double> N;
    bspline_values(kv_, x, N);
    if (family_ == BasisFamily::BSpline) {
        for (int l = 0; l < m_; ++l) out[l] = N[l];
    } else {
        for (int l = 0; l < m_; ++l) out[l] = mspline_scale(kv_, l) * N[l];
    }
}

void BasisEvaluator::value_and_jacobian(double x, VectorXd& out, MatrixXd& jac) const {
    if (!with_jacobian_)
        throw StaleCache("BasisEvaluator was primed without Jacobian support");
    x = std::clamp(x, kv_.lo, kv_.hi);
    out.resize(m_);
    jac.resize(m_, std::max(K_, 1));
    if (family_ == BasisFamily::ISpline) {
        const int s = span_of(x);
        const int j = s - kv_.degree;
        out = cum_[j];
        jac = cum_jac_[j];
        const double a = kv_.full[s];
        if (x > a) {
            VectorXd part;
            MatrixXd part_jac;
            const int seed_a = s - kv_.degree - 1;
            mspline_span_integral_jac(kv_, gl_, a, seed_a < 0 ? -1 : seed_a,
                                      x, -1, part, part_jac);
            out += part;
            jac += part_jac;
        }
        jac.conservativeResize(m_, K_);
        return;
    }
    std::vector<double> N;
    MatrixXd dN;
    bspline_values_jac(kv_, x, N, dN);
    if (family_ == BasisFamily::BSpline) {
        for (int l = 0; l < m_; ++l) {
            out[l] = N[l];
            jac.row(l) = dN.row(l);
        }
    } else {
        const int p = kv_.degree;
        for (int l = 0; l < m_; ++l) {
            const double c = mspline_scale(kv_, l);
            const double mval = c * N[l];
            out[l] = mval;
            jac.row(l) = c * dN.row(l);
            if (c != 0.0) {
                const double span = kv_.full[l + p + 1] - kv_.full[l];
                const int kr = l;          // internal index of t[l+p+1]
                const int kl = l - p - 1;  // internal index of t[l]
                if (kr >= 0 && kr < K_) jac(l, kr) += -mval / span;
                if (kl >= 0 && kl < K_) jac(l, kl) += mval / span;
            }
        }
    }
    jac.conservativeResize(m_, K_);
}

} // namespace numenc
