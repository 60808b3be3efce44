#include "numenc/learnable.hpp"

#include <cmath>

#include "numenc/errors.hpp"

namespace numenc {

KnotWidths knots_from_logits(const KnotLogits& logits) {
    const int K = logits.num_internal();
    if (K < 0) throw ConfigError("knots_from_logits: logits must have length K + 1 >= 1");
    const double slack = 1.0 - (K + 1) * logits.delta;
    if (!(logits.delta >= 0.0) || slack <= 0.0)
        throw InvalidDelta("knots_from_logits: (K+1) * delta must be < 1");

    // max-shifted softmax
    const double amax = logits.a.maxCoeff();
    VectorXd pi = (logits.a.array() - amax).exp();
    pi /= pi.sum();

    KnotWidths out;
    out.widths = (logits.delta + (slack * pi.array())).matrix();
    out.knots.resize(K);
    double acc = 0.0;
    for (int l = 0; l < K; ++l) {
        acc += out.widths[l];
        out.knots[l] = acc;
    }
    return out;
}

double spacing_regularizer(std::span<const KnotLogits> all_logits, double eps) {
    if (all_logits.empty()) return 0.0;
    double total = 0.0;
    for (const KnotLogits& logits : all_logits) {
        const KnotWidths kw = knots_from_logits(logits);
        double term = 0.0;
        for (Eigen::Index r = 0; r < kw.widths.size(); ++r)
            term += 1.0 / (kw.widths[r] + eps);
        total += term / static_cast<double>(kw.widths.size());
    }
    return total / static_cast<double>(all_logits.size());
}

VectorXd knot_logit_gradient(const KnotLogits& logits, const VectorXd& upstream,
                             const KnotRegularizerConfig& reg,
                             int n_features_for_reg) {
    const int K = logits.num_internal();
    if (upstream.size() != K)
        throw ShapeMismatch("knot_logit_gradient: upstream must have length K");
    const KnotWidths kw = knots_from_logits(logits);
    const double slack = 1.0 - (K + 1) * logits.delta;

    // dkappa_l / dw_r = 1[r <= l]: suffix sums of the upstream signal.
    VectorXd dw = VectorXd::Zero(K + 1);
    double suffix = 0.0;
    for (int r = K - 1; r >= 0; --r) {
        suffix += upstream[r];
        dw[r] = suffix;
    }
    if (n_features_for_reg > 0 && reg.lambda > 0.0) {
        const double scale = reg.lambda / (static_cast<double>(n_features_for_reg) * (K + 1));
        for (int r = 0; r <= K; ++r) {
            const double denom = kw.widths[r] + reg.epsilon;
            dw[r] -= scale / (denom * denom);
        }
    }
    // width map then softmax Jacobian diag(pi) - pi pi^T
    const VectorXd dpi = slack * dw;
    const VectorXd pi = (kw.widths.array() - logits.delta).matrix() / slack;
    const double dot = pi.dot(dpi);
    return (pi.array() * (dpi.array() - dot)).matrix();
}

long learnable_param_count(int d, int m, int p) {
    if (d < 0) throw ConfigError("learnable_param_count: negative feature count");
    if (d == 0) return 0;
    if (m <= p) throw ConfigError("learnable_param_count: m must exceed the degree");
    return static_cast<long>(d) * (m - p);
}

KnotVector LearnableKnots::knot_vector(int j) const {
    const KnotWidths kw = knots_from_logits(logits.at(j));
    return build_clamped_knots(
        std::span<const double>(kw.knots.data(), kw.knots.size()), degree, 0.0, 1.0);
}

LearnableKnots init_learnable_knots(BasisFamily family, int n_features, int m,
                                    int degree, double delta) {
    if (m <= degree) throw ConfigError("init_learnable_knots: m must exceed the degree");
    LearnableKnots state;
    state.family = family;
    state.degree = degree;
    const int K = m - degree - 1;
    state.logits.resize(n_features);
    for (auto& logits : state.logits) {
        logits.a = VectorXd::Zero(K + 1);
        logits.delta = delta;
    }
    return state;
}

} // namespace numenc
