#pragma once

#include <span>
#include <vector>

#include "numenc/basis.hpp"
#include "numenc/types.hpp"

namespace numenc {

/// Unconstrained per-feature knot parameters. The softmax -> minimum-width
/// map -> cumulative sum turns a into strictly ordered internal knots in
/// (0, 1) with every interval width >= delta.
struct KnotLogits {
    VectorXd a;           // length K + 1
    double delta = 1e-3;  // minimum interval width, (K+1) * delta < 1

    int num_internal() const { return static_cast<int>(a.size()) - 1; }
};

struct KnotWidths {
    VectorXd widths; // K + 1 positive widths summing to 1
    VectorXd knots;  // K strictly increasing internal knots
};

/// pi = softmax(a); w_r = delta + (1 - (K+1) delta) pi_r; kappa = cumsum(w).
/// Throws InvalidDelta when (K+1) * delta >= 1.
KnotWidths knots_from_logits(const KnotLogits& logits);

struct KnotRegularizerConfig {
    double lambda = 1e-4;  // weight of the spacing barrier in the objective
    double epsilon = 1e-6; // barrier offset
};

/// Reciprocal spacing barrier averaged over features:
/// R = (1/d) sum_j (1/(K_j+1)) sum_r 1/(w_{j,r} + eps).
double spacing_regularizer(std::span<const KnotLogits> all_logits, double eps);

/// Chain rule from dL/dkappa (length K) back to the logits, through the
/// cumulative sum, the width map and the softmax Jacobian. When
/// n_features_for_reg > 0 the gradient of lambda * R_space is added with the
/// 1/d averaging of that many features.
VectorXd knot_logit_gradient(const KnotLogits& logits, const VectorXd& upstream,
                             const KnotRegularizerConfig& reg,
                             int n_features_for_reg = 1);

/// d (m - p): one scalar per interval width, per feature.
long learnable_param_count(int d, int m, int p);

/// Per-feature state of a learnable-knot encoding: logits plus the basis
/// family and degree needed to rebuild knot vectors each step.
struct LearnableKnots {
    BasisFamily family = BasisFamily::BSpline;
    int degree = 3;
    std::vector<KnotLogits> logits; // one entry per numerical feature

    int num_features() const { return static_cast<int>(logits.size()); }
    /// Current internal knots of feature j.
    KnotVector knot_vector(int j) const;
};

/// Uniform initialization: zero logits give equally spaced knots for any
/// delta.
LearnableKnots init_learnable_knots(BasisFamily family, int n_features, int m,
                                    int degree, double delta = 1e-3);

/// One trajectory sample: the location of one internal knot after an epoch.
struct KnotHistoryRow {
    int epoch = 0;
    int feature = 0;
    int knot_index = 0;
    double value = 0.0;
};

} // namespace numenc
