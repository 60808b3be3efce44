#include "numenc/ple.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "numenc/errors.hpp"
#include "numenc/knots.hpp"

namespace numenc {

VectorXd encode_ple(double x, const PleBoundaries& pb) {
    const auto& b = pb.bounds;
    const int T = pb.bins();
    if (T < 1) throw ConfigError("encode_ple: need at least one bin");
    x = std::clamp(x, b.front(), b.back());
    VectorXd e(T);
    for (int t = 1; t <= T; ++t) {
        if (x < b[t - 1] && t > 1)
            e[t - 1] = 0.0;
        else if (x >= b[t] && t < T)
            e[t - 1] = 1.0;
        else
            e[t - 1] = (x - b[t - 1]) / (b[t] - b[t - 1]);
    }
    return e;
}

namespace {

PleBoundaries uniform_bounds(double lo, double hi, int T) {
    PleBoundaries pb;
    pb.bounds.resize(T + 1);
    for (int t = 0; t <= T; ++t)
        pb.bounds[t] = lo + static_cast<double>(t) / T * (hi - lo);
    return pb;
}

// Inner boundaries from split records: dedupe, rank by gain, keep the best
// n_inner with strict ordering, supplement with quantiles then uniform
// positions. Mirrors the target-aware knot pipeline without a spacing
// constraint (bins only need strict monotonicity).
std::vector<double> inner_from_records(std::vector<SplitRecord> records,
                                       const VectorXd& x, int n_inner,
                                       double lo, double hi) {
    std::map<double, double> by_threshold;
    for (const auto& rec : records) {
        const double thr = std::clamp(rec.threshold, lo, hi);
        if (thr <= lo || thr >= hi) continue;
        auto [it, fresh] = by_threshold.try_emplace(thr, rec.gain);
        if (!fresh) it->second = std::max(it->second, rec.gain);
    }
    std::vector<std::pair<double, double>> cand(by_threshold.begin(), by_threshold.end());
    std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<double> inner;
    for (const auto& [thr, gain] : cand) {
        if (static_cast<int>(inner.size()) >= n_inner) break;
        inner.push_back(thr);
    }
    auto distinct = [&](double v) {
        for (double k : inner)
            if (v == k) return false;
        return true;
    };
    if (static_cast<int>(inner.size()) < n_inner) {
        std::vector<double> sorted(x.data(), x.data() + x.size());
        std::sort(sorted.begin(), sorted.end());
        for (int l = 1; l <= n_inner && static_cast<int>(inner.size()) < n_inner; ++l) {
            const double q =
                sorted_quantile(sorted, static_cast<double>(l) / (n_inner + 1));
            if (q > lo && q < hi && distinct(q)) inner.push_back(q);
        }
        for (int l = 1; l <= n_inner && static_cast<int>(inner.size()) < n_inner; ++l) {
            const double u = lo + static_cast<double>(l) / (n_inner + 1) * (hi - lo);
            if (distinct(u)) inner.push_back(u);
        }
    }
    std::sort(inner.begin(), inner.end());
    return inner;
}

} // namespace

PleBoundaries build_ple_boundaries(const VectorXd& x, const VectorXd& y, Task task,
                                   int T, PleMode mode,
                                   const TreeConstraints& constraints) {
    if (T < 1) throw ConfigError("build_ple_boundaries: T must be >= 1");
    if (x.size() == 0) throw EmptyInput("build_ple_boundaries: empty input");
    const double lo = x.minCoeff();
    const double hi = x.maxCoeff();
    if (!(lo < hi)) throw DegenerateDomain("build_ple_boundaries: constant feature");
    if (mode == PleMode::Uniform || T == 1) return uniform_bounds(lo, hi, T);
    if (mode == PleMode::Quantile) {
        std::vector<double> sorted(x.data(), x.data() + x.size());
        std::sort(sorted.begin(), sorted.end());
        std::vector<double> inner;
        for (int t = 1; t < T; ++t) {
            const double q = sorted_quantile(sorted, static_cast<double>(t) / T);
            if (q <= lo || q >= hi) continue;
            if (!inner.empty() && q <= inner.back()) continue;
            inner.push_back(q);
        }
        if (static_cast<int>(inner.size()) < T - 1) {
            PleBoundaries pb = uniform_bounds(lo, hi, T);
            pb.used_fallback = true;
            return pb;
        }
        PleBoundaries pb;
        pb.bounds.push_back(lo);
        pb.bounds.insert(pb.bounds.end(), inner.begin(), inner.end());
        pb.bounds.push_back(hi);
        return pb;
    }
    // CART mode
    std::vector<SplitRecord> records;
    try {
        records = extract_splits(fit_cart(x, y, task, constraints));
    } catch (const DataError&) {
        records.clear();
    }
    std::vector<double> inner = inner_from_records(std::move(records), x, T - 1, lo, hi);
    if (static_cast<int>(inner.size()) < T - 1) {
        PleBoundaries pb = uniform_bounds(lo, hi, T);
        pb.used_fallback = true;
        return pb;
    }
    PleBoundaries pb;
    pb.bounds.push_back(lo);
    pb.bounds.insert(pb.bounds.end(), inner.begin(), inner.end());
    pb.bounds.push_back(hi);
    return pb;
}

PleBoundaries build_adaptive_ple(const VectorXd& x, const VectorXd& y, Task task,
                                 int min_bins, int max_bins, int min_samples_leaf) {
    if (x.size() == 0) throw EmptyInput("build_adaptive_ple: empty input");
    if (x.size() <= min_samples_leaf)
        throw EmptyInput("build_adaptive_ple: need more samples than min_samples_leaf");
    const TreeConstraints tc{1 << 20, min_samples_leaf, 2};
    std::vector<SplitRecord> records;
    try {
        records = extract_splits(fit_cart(x, y, task, tc));
    } catch (const DataError&) {
        records.clear();
    }
    std::map<double, double> distinct;
    for (const auto& rec : records) {
        auto [it, fresh] = distinct.try_emplace(rec.threshold, rec.gain);
        if (!fresh) it->second = std::max(it->second, rec.gain);
    }
    const int T = std::clamp(static_cast<int>(distinct.size()) + 1, min_bins, max_bins);
    return build_ple_boundaries(x, y, task, T, PleMode::Cart, tc);
}

} // namespace numenc
