#pragma once

#include <vector>

#include "numenc/trees.hpp"
#include "numenc/types.hpp"

namespace numenc {

/// Strictly increasing bin boundaries b_0 < ... < b_T.
struct PleBoundaries {
    std::vector<double> bounds;
    bool used_fallback = false;
    int bins() const { return static_cast<int>(bounds.size()) - 1; }
};

enum class PleMode { Uniform, Quantile, Cart };

/// Piecewise linear encoding of x: bins left of x are 1, bins right of x are
/// 0, the containing bin is linearly interpolated. Out-of-range x is clipped
/// to [b_0, b_T] first.
VectorXd encode_ple(double x, const PleBoundaries& bounds);

/// Boundaries for T bins over the sample range: equal width, type-7
/// quantiles, or top CART split thresholds by gain with quantile
/// supplementation. Degenerate distributions fall back to uniform, flagged.
PleBoundaries build_ple_boundaries(const VectorXd& x, const VectorXd& y, Task task,
                                   int T, PleMode mode,
                                   const TreeConstraints& constraints = {1 << 20, 1, 2});

/// Tree-sized binning: CART thresholds with min_samples_leaf regularization
/// decide the bin count, clamped to [min_bins, max_bins], truncated by gain
/// or supplemented by quantiles.
PleBoundaries build_adaptive_ple(const VectorXd& x, const VectorXd& y, Task task,
                                 int min_bins = 5, int max_bins = 50,
                                 int min_samples_leaf = 25);

} // namespace numenc
