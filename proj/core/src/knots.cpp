#include "numenc/knots.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "numenc/errors.hpp"

namespace numenc {

std::vector<double> uniform_knots(double lo, double hi, int K) {
    if (!(lo < hi)) throw DegenerateDomain("uniform_knots: lo >= hi");
    if (K < 0) throw ConfigError("uniform_knots: negative knot count");
    std::vector<double> knots(K);
    for (int l = 1; l <= K; ++l)
        knots[l - 1] = lo + static_cast<double>(l) / (K + 1) * (hi - lo);
    return knots;
}

double sorted_quantile(std::span<const double> sorted, double q) {
    const auto n = sorted.size();
    if (n == 0) throw EmptyInput("sorted_quantile: empty sample");
    if (n == 1) return sorted[0];
    const double pos = q * static_cast<double>(n - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= n) return sorted[n - 1];
    const double frac = pos - static_cast<double>(i);
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

PlacementResult quantile_knots(std::span<const double> samples, int K,
                               double lo, double hi) {
    if (samples.size() < 2) throw EmptyInput("quantile_knots: need at least two samples");
    if (K < 0) throw ConfigError("quantile_knots: negative knot count");
    if (K == 0) return {{}, false};
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> knots;
    knots.reserve(K);
    for (int l = 1; l <= K; ++l) {
        const double q = sorted_quantile(sorted, static_cast<double>(l) / (K + 1));
        if (q <= lo || q >= hi) continue;
        if (!knots.empty() && q <= knots.back()) continue;
        knots.push_back(q);
    }
    if (static_cast<int>(knots.size()) < K)
        return {uniform_knots(lo, hi, K), true}; // degenerate distribution
    return {std::move(knots), false};
}

namespace {

// Greedy spacing filter in descending-gain order, so high-gain thresholds
// survive the pruning, then budget enforcement per the placement pipeline.
PlacementResult select_target_aware(std::vector<SplitRecord> records,
                                    const VectorXd& x, int K, double eps,
                                    double lo, double hi) {
    const double xmin = x.minCoeff();
    const double xmax = x.maxCoeff();
    // clip to the observed range, nudge boundary hits inward, deduplicate
    std::map<double, double> by_threshold; // threshold -> best gain
    for (auto& rec : records) {
        double thr = std::clamp(rec.threshold, xmin, xmax);
        if (thr <= lo) thr = lo + eps / 2.0;
        if (thr >= hi) thr = hi - eps / 2.0;
        auto [it, fresh] = by_threshold.try_emplace(thr, rec.gain);
        if (!fresh) it->second = std::max(it->second, rec.gain);
    }
    std::vector<std::pair<double, double>> candidates(by_threshold.begin(),
                                                      by_threshold.end());
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    std::vector<double> kept;
    auto respects_spacing = [&](double v) {
        for (double k : kept)
            if (std::abs(v - k) < eps) return false;
        return true;
    };
    for (const auto& [thr, gain] : candidates) {
        if (static_cast<int>(kept.size()) >= K) break; // top-K by gain
        if (respects_spacing(thr)) kept.push_back(thr);
    }

    // supplement with training quantiles, then uniform positions, then
    // midpoints of the largest gaps so the budget is always met
    if (static_cast<int>(kept.size()) < K) {
        std::vector<double> sorted(x.data(), x.data() + x.size());
        std::sort(sorted.begin(), sorted.end());
        for (int l = 1; l <= K && static_cast<int>(kept.size()) < K; ++l) {
            const double q = sorted_quantile(sorted, static_cast<double>(l) / (K + 1));
            if (q > lo && q < hi && respects_spacing(q)) kept.push_back(q);
        }
        for (int l = 1; l <= K && static_cast<int>(kept.size()) < K; ++l) {
            const double u = lo + static_cast<double>(l) / (K + 1) * (hi - lo);
            if (respects_spacing(u)) kept.push_back(u);
        }
        while (static_cast<int>(kept.size()) < K) {
            std::vector<double> walls = kept;
            walls.push_back(lo);
            walls.push_back(hi);
            std::sort(walls.begin(), walls.end());
            double best_mid = 0.0, best_gap = -1.0;
            for (std::size_t i = 0; i + 1 < walls.size(); ++i) {
                const double gap = walls[i + 1] - walls[i];
                if (gap > best_gap) {
                    best_gap = gap;
                    best_mid = 0.5 * (walls[i] + walls[i + 1]);
                }
            }
            kept.push_back(best_mid);
        }
    }
    std::sort(kept.begin(), kept.end());
    return {std::move(kept), false};
}

} // namespace

PlacementResult target_aware_knots(const VectorXd& x, const VectorXd& y, Task task,
                                   const KnotBudget& budget,
                                   const PlacementStrategy& strategy,
                                   std::uint64_t /*rng_seed*/) {
    if (x.size() == 0) throw EmptyInput("target_aware_knots: empty input");
    const int K = budget.internal();
    if (K < 0) throw ConfigError("target_aware_knots: m < p + 1");
    if (K == 0) return {{}, false};
    const double lo = 0.0, hi = 1.0;

    std::vector<SplitRecord> records;
    try {
        if (strategy.kind == PlacementStrategy::Kind::Cart) {
            TreeConstraints tc{strategy.cart_max_depth, 1, 2};
            records = extract_splits(fit_cart(x, y, task, tc));
        } else if (strategy.kind == PlacementStrategy::Kind::Boosted) {
            records = aggregate_boosted_gains(fit_boosted(x, y, task, strategy.boosted));
        } else {
            throw ConfigError("target_aware_knots: strategy must be Cart or Boosted");
        }
    } catch (const DataError&) {
        records.clear(); // tree failure falls back to quantiles below
    }

    if (records.empty()) {
        std::vector<double> samples(x.data(), x.data() + x.size());
        auto fallback = quantile_knots(samples, K, lo, hi);
        fallback.used_fallback = true;
        return fallback;
    }
    return select_target_aware(std::move(records), x, K, strategy.min_knot_spacing,
                               lo, hi);
}

std::vector<KnotVector> place_all(const MatrixXd& columns, const VectorXd& y,
                                  Task task, const PlacementStrategy& strategy,
                                  const KnotBudget& budget, std::uint64_t seed) {
    const int K = budget.internal();
    if (K < 0) throw ConfigError("place_all: m < p + 1");
    std::vector<KnotVector> out;
    out.reserve(columns.cols());
    for (Eigen::Index j = 0; j < columns.cols(); ++j) {
        std::vector<double> knots;
        try {
            switch (strategy.kind) {
                case PlacementStrategy::Kind::Uniform:
                case PlacementStrategy::Kind::Learnable:
                    knots = uniform_knots(0.0, 1.0, K);
                    break;
                case PlacementStrategy::Kind::Quantile: {
                    const VectorXd col = columns.col(j);
                    std::vector<double> samples(col.data(), col.data() + col.size());
                    knots = quantile_knots(samples, K, 0.0, 1.0).knots;
                    break;
                }
                case PlacementStrategy::Kind::Cart:
                case PlacementStrategy::Kind::Boosted:
                    knots = target_aware_knots(columns.col(j), y, task, budget,
                                               strategy, seed + j)
                                .knots;
                    break;
            }
        } catch (const Error& e) {
            throw DataError("place_all: feature " + std::to_string(j) + ": " + e.what());
        }
        out.push_back(build_clamped_knots(knots, budget.degree, 0.0, 1.0));
    }
    return out;
}

} // namespace numenc
