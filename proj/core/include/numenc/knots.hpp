#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "numenc/basis.hpp"
#include "numenc/trees.hpp"
#include "numenc/types.hpp"

namespace numenc {

struct PlacementStrategy {
    enum class Kind { Uniform, Quantile, Cart, Boosted, Learnable };
    Kind kind = Kind::Uniform;
    int cart_max_depth = 6;
    BoostedConfig boosted{};
    double min_knot_spacing = 0.01; // epsilon for target-aware pruning

    static PlacementStrategy uniform() { return {Kind::Uniform}; }
    static PlacementStrategy quantile() { return {Kind::Quantile}; }
    static PlacementStrategy cart(int max_depth = 6, double spacing = 0.01) {
        PlacementStrategy s{Kind::Cart};
        s.cart_max_depth = max_depth;
        s.min_knot_spacing = spacing;
        return s;
    }
    static PlacementStrategy boosted_trees(BoostedConfig cfg = {}, double spacing = 0.01) {
        PlacementStrategy s{Kind::Boosted};
        s.boosted = cfg;
        s.min_knot_spacing = spacing;
        return s;
    }
    static PlacementStrategy learnable() { return {Kind::Learnable}; }
};

/// Output size m and degree p fix the internal-knot budget K = m - p - 1.
struct KnotBudget {
    int m = 7;
    int degree = 3;
    int internal() const { return m - degree - 1; }
};

struct PlacementResult {
    std::vector<double> knots;
    bool used_fallback = false; // quantile/uniform fallback was taken
};

/// Equally spaced internal knots: lo + l/(K+1) * (hi - lo).
std::vector<double> uniform_knots(double lo, double hi, int K);

/// Type-7 empirical quantile (linear interpolation between order statistics)
/// of an already sorted sample.
double sorted_quantile(std::span<const double> sorted, double q);

/// Internal knots at quantile levels l/(K+1). Falls back to uniform knots
/// over (lo, hi), flagged, when fewer than K distinct in-domain quantiles
/// are achievable.
PlacementResult quantile_knots(std::span<const double> samples, int K,
                               double lo, double hi);

/// Tree-derived internal knots: fit, clip, deduplicate, prune to pairwise
/// spacing >= epsilon in descending gain order, truncate to the budget or
/// supplement with quantiles, fall back to quantile knots when no usable
/// split exists. Inputs are assumed min-max scaled by the caller.
PlacementResult target_aware_knots(const VectorXd& x, const VectorXd& y, Task task,
                                   const KnotBudget& budget,
                                   const PlacementStrategy& strategy,
                                   std::uint64_t rng_seed = 0);

/// One clamped KnotVector per feature column over the scaled domain [0, 1].
std::vector<KnotVector> place_all(const MatrixXd& columns, const VectorXd& y,
                                  Task task, const PlacementStrategy& strategy,
                                  const KnotBudget& budget, std::uint64_t seed = 0);

} // namespace numenc
