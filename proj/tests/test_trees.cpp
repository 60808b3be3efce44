#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "numenc/errors.hpp"
#include "numenc/rng.hpp"
#include "numenc/trees.hpp"

using namespace numenc;

namespace {

VectorXd vec(std::initializer_list<double> v) {
    VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

double variance(const std::vector<double>& y) {
    if (y.empty()) return 0.0;
    double s = 0.0;
    for (double v : y) s += v;
    const double mean = s / y.size();
    double ss = 0.0;
    for (double v : y) ss += (v - mean) * (v - mean);
    return ss / y.size();
}

double gini(const std::vector<double>& y) {
    if (y.empty()) return 0.0;
    std::map<int, int> counts;
    for (double v : y) counts[static_cast<int>(v)]++;
    double g = 1.0;
    for (auto& [label, c] : counts) {
        const double p = static_cast<double>(c) / y.size();
        g -= p * p;
    }
    return g;
}

// Exhaustive best-split search over midpoints of consecutive distinct values.
struct BruteSplit {
    double threshold = 0.0;
    double gain = 0.0;
    bool found = false;
};
BruteSplit brute_force_split(const VectorXd& x, const VectorXd& y, bool classification) {
    std::vector<std::pair<double, double>> pairs;
    for (Eigen::Index i = 0; i < x.size(); ++i) pairs.push_back({x[i], y[i]});
    std::sort(pairs.begin(), pairs.end());
    std::vector<double> all;
    for (auto& [a, b] : pairs) all.push_back(b);
    const double parent = classification ? gini(all) : variance(all);
    BruteSplit best;
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i].first == pairs[i - 1].first) continue;
        const double thr = 0.5 * (pairs[i].first + pairs[i - 1].first);
        std::vector<double> left, right;
        for (auto& [a, b] : pairs) (a <= thr ? left : right).push_back(b);
        const double il = classification ? gini(left) : variance(left);
        const double ir = classification ? gini(right) : variance(right);
        const double gain = parent - (left.size() * il + right.size() * ir) / pairs.size();
        if (!best.found || gain > best.gain + 1e-15) {
            best = {thr, gain, true};
        }
    }
    return best;
}

} // namespace

TEST_CASE("constant target yields a single leaf") {
    const VectorXd x = vec({1, 2, 3, 4});
    const VectorXd y = vec({5, 5, 5, 5});
    const UnivariateTree tree = fit_cart(x, y, Task::Regression, {6, 1, 2});
    CHECK(tree.nodes().size() == 1);
    CHECK(tree.nodes()[0].is_leaf);
    CHECK(extract_splits(tree).empty());
    CHECK(tree.predict(2.5) == 5.0);
}

TEST_CASE("depth-1 classification step splits at the midpoint with Gini gain 0.5") {
    const VectorXd x = vec({0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9});
    VectorXd y(8);
    for (int i = 0; i < 8; ++i) y[i] = x[i] > 0.5 ? 1.0 : 0.0;
    const UnivariateTree tree = fit_cart(x, y, Task::Binary, {1, 1, 2});
    const auto splits = extract_splits(tree);
    REQUIRE(splits.size() == 1);
    CHECK(splits[0].threshold == doctest::Approx(0.5));
    CHECK(splits[0].gain == doctest::Approx(0.5));
    CHECK(splits[0].node_samples == 8);
}

TEST_CASE("depth-1 regression split matches exhaustive enumeration") {
    const VectorXd x = vec({0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9});
    const VectorXd y = x;
    const UnivariateTree tree = fit_cart(x, y, Task::Regression, {1, 1, 2});
    const auto splits = extract_splits(tree);
    REQUIRE(splits.size() == 1);
    const BruteSplit oracle = brute_force_split(x, y, false);
    CHECK(splits[0].threshold == doctest::Approx(oracle.threshold));
    CHECK(splits[0].gain == doctest::Approx(oracle.gain));
}

TEST_CASE("split gains recompute from the induced partitions") {
    Rng rng(5);
    VectorXd x(40), y(40);
    for (int i = 0; i < 40; ++i) {
        x[i] = rng.uniform();
        y[i] = std::sin(6.0 * x[i]) + 0.1 * rng.normal();
    }
    const UnivariateTree tree = fit_cart(x, y, Task::Regression, {2, 1, 2});
    // weighted local gains telescope into root minus leaf impurity
    double removed = 0.0;
    for (const TreeNode& node : tree.nodes())
        if (!node.is_leaf) removed += node.n_samples * node.gain;
    std::vector<double> all(y.data(), y.data() + y.size());
    double leaf_impurity = 0.0;
    for (const TreeNode& node : tree.nodes()) {
        if (!node.is_leaf) continue;
        std::vector<double> member;
        for (int i = 0; i < 40; ++i) {
            // membership by walking the tree
            int cur = 0;
            while (!tree.nodes()[cur].is_leaf)
                cur = x[i] <= tree.nodes()[cur].threshold ? tree.nodes()[cur].left
                                                          : tree.nodes()[cur].right;
            if (&tree.nodes()[cur] == &node) member.push_back(y[i]);
        }
        leaf_impurity += member.size() * variance(member);
    }
    CHECK(removed ==
          doctest::Approx(40.0 * variance(all) - leaf_impurity).epsilon(1e-9));
}

TEST_CASE("greedy split is optimal against brute force on small inputs") {
    Rng rng(7);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 4 + static_cast<int>(rng.uniform_index(61));
        VectorXd x(n), y(n);
        const bool classification = rep % 2 == 0;
        for (int i = 0; i < n; ++i) {
            x[i] = rng.uniform();
            y[i] = classification ? static_cast<double>(rng.uniform_index(3))
                                  : rng.normal();
        }
        const Task task = classification ? Task::Multiclass : Task::Regression;
        const UnivariateTree tree = fit_cart(x, y, task, {1, 1, 2});
        const BruteSplit oracle = brute_force_split(x, y, classification);
        const auto splits = extract_splits(tree);
        if (!oracle.found || oracle.gain <= 1e-12) {
            CHECK(splits.empty());
        } else {
            REQUIRE(splits.size() == 1);
            CHECK(splits[0].gain == doctest::Approx(oracle.gain).epsilon(1e-9));
        }
    }
}

TEST_CASE("constraints are respected") {
    Rng rng(11);
    VectorXd x(64), y(64);
    for (int i = 0; i < 64; ++i) {
        x[i] = rng.uniform();
        y[i] = rng.normal();
    }
    const TreeConstraints tc{4, 5, 12};
    const UnivariateTree tree = fit_cart(x, y, Task::Regression, tc);
    CHECK(tree.depth() <= 4);
    for (const TreeNode& node : tree.nodes()) {
        if (!node.is_leaf) {
            CHECK(node.n_samples >= tc.min_samples_split);
            CHECK(tree.nodes()[node.left].n_samples >= tc.min_samples_leaf);
            CHECK(tree.nodes()[node.right].n_samples >= tc.min_samples_leaf);
        }
    }
}

TEST_CASE("identical inputs give identical trees regardless of row order") {
    Rng rng(13);
    VectorXd x(50), y(50);
    for (int i = 0; i < 50; ++i) {
        x[i] = rng.uniform_index(10) * 0.1; // deliberate ties
        y[i] = rng.normal();
    }
    const UnivariateTree a = fit_cart(x, y, Task::Regression, {6, 1, 2});
    // reversed row order
    VectorXd xr = x.reverse();
    VectorXd yr = y.reverse();
    const UnivariateTree b = fit_cart(xr, yr, Task::Regression, {6, 1, 2});
    REQUIRE(a.nodes().size() == b.nodes().size());
    for (std::size_t i = 0; i < a.nodes().size(); ++i) {
        CHECK(a.nodes()[i].is_leaf == b.nodes()[i].is_leaf);
        CHECK(a.nodes()[i].threshold == b.nodes()[i].threshold);
        CHECK(a.nodes()[i].gain == b.nodes()[i].gain);
    }
}

TEST_CASE("boosting: constant target and zero learning rate") {
    const VectorXd x = vec({0.1, 0.3, 0.6, 0.9});
    const VectorXd y = vec({2, 2, 2, 2});
    const BoostedStumps constant = fit_boosted(x, y, Task::Regression, {10, 3, 0.1});
    CHECK(aggregate_boosted_gains(constant).empty());
    CHECK(constant.predict_raw(0.5) == doctest::Approx(2.0));

    const VectorXd y2 = vec({0, 1, 2, 3});
    const BoostedStumps frozen = fit_boosted(x, y2, Task::Regression, {10, 3, 0.0});
    CHECK(frozen.predict_raw(0.5) == doctest::Approx(y2.mean()));
}

TEST_CASE("boosting training loss decreases round over round") {
    Rng rng(17);
    VectorXd x(128), y(128);
    for (int i = 0; i < 128; ++i) {
        x[i] = rng.uniform();
        y[i] = (x[i] > 0.4 ? 1.0 : 0.0) + 0.05 * rng.normal();
    }
    const BoostedStumps model = fit_boosted(x, y, Task::Regression, {5, 3, 0.5});
    // recompute the loss after each round
    VectorXd f = VectorXd::Constant(128, model.initial_prediction());
    double prev = (y - f).squaredNorm();
    for (const auto& tree : model.trees()) {
        for (int i = 0; i < 128; ++i)
            f[i] += model.learning_rate() * tree.predict(x[i]);
        const double cur = (y - f).squaredNorm();
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("single-class classification yields zero trees") {
    const VectorXd x = vec({0.1, 0.5, 0.9});
    const VectorXd y = vec({1, 1, 1});
    const BoostedStumps model = fit_boosted(x, y, Task::Binary, {10, 3, 0.1});
    CHECK(model.trees().empty());
    CHECK(aggregate_boosted_gains(model).empty());
}

TEST_CASE("aggregate_boosted_gains sums identical thresholds") {
    // a two-level step refit across rounds reuses the same midpoints
    const VectorXd x = vec({0.0, 0.25, 0.5, 0.75, 1.0});
    const VectorXd y = vec({0.0, 0.0, 1.0, 1.0, 1.0});
    const BoostedStumps model = fit_boosted(x, y, Task::Regression, {3, 1, 1.0});
    const auto agg = aggregate_boosted_gains(model);
    std::set<double> distinct;
    long node_count = 0;
    double total_gain = 0.0;
    for (const auto& tree : model.trees())
        for (const TreeNode& node : tree.nodes())
            if (!node.is_leaf) {
                distinct.insert(node.threshold);
                ++node_count;
                total_gain += node.n_samples * node.gain;
            }
    CHECK(agg.size() == distinct.size());
    CHECK(node_count >= static_cast<long>(agg.size()));
    double agg_total = 0.0;
    for (const auto& rec : agg) agg_total += rec.gain;
    CHECK(agg_total == doctest::Approx(total_gain));
}

TEST_CASE("aggregated gains equal the ensemble SSE reduction") {
    Rng rng(23);
    VectorXd x(100), y(100);
    for (int i = 0; i < 100; ++i) {
        x[i] = rng.uniform();
        y[i] = std::cos(5.0 * x[i]) + 0.2 * rng.normal();
    }
    const BoostedConfig cfg{8, 3, 0.3};
    const BoostedStumps model = fit_boosted(x, y, Task::Regression, cfg);
    // oracle: recompute each round's residual SSE drop caused by that tree
    VectorXd f = VectorXd::Constant(100, model.initial_prediction());
    double oracle_total = 0.0;
    for (const auto& tree : model.trees()) {
        const VectorXd residual = y - f;
        // SSE reduction of tree t on its own targets: SSE(root) - sum_leaf SSE(leaf)
        std::vector<std::vector<double>> leaf_members(tree.nodes().size());
        for (int i = 0; i < 100; ++i) {
            int cur = 0;
            while (!tree.nodes()[cur].is_leaf)
                cur = x[i] <= tree.nodes()[cur].threshold ? tree.nodes()[cur].left
                                                          : tree.nodes()[cur].right;
            leaf_members[cur].push_back(residual[i]);
        }
        double root_sse = 100.0 * variance(std::vector<double>(
                                      residual.data(), residual.data() + 100));
        for (std::size_t l = 0; l < leaf_members.size(); ++l)
            if (tree.nodes()[l].is_leaf && !leaf_members[l].empty())
                root_sse -= leaf_members[l].size() * variance(leaf_members[l]);
        oracle_total += root_sse;
        for (int i = 0; i < 100; ++i)
            f[i] += model.learning_rate() * tree.predict(x[i]);
    }
    double agg_total = 0.0;
    for (const auto& rec : aggregate_boosted_gains(model)) agg_total += rec.gain;
    CHECK(agg_total == doctest::Approx(oracle_total).epsilon(1e-8));
}

TEST_CASE("empty input is rejected") {
    const VectorXd empty(0);
    CHECK_THROWS_AS(fit_cart(empty, empty, Task::Regression, {6, 1, 2}), EmptyInput);
    CHECK_THROWS_AS(fit_boosted(empty, empty, Task::Regression, {}), EmptyInput);
}
