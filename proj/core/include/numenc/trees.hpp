#pragma once

#include <vector>

#include "numenc/types.hpp"

namespace numenc {

/// One internal-node split. gain is the local impurity reduction
/// I(v) - (n_L/n_v) I(L) - (n_R/n_v) I(R); for boosted aggregation the
/// absolute SSE reduction is n_v * gain.
struct SplitRecord {
    double threshold = 0.0;
    double gain = 0.0;
    int node_samples = 0;
};

struct TreeConstraints {
    int max_depth = 6;
    int min_samples_leaf = 1;
    int min_samples_split = 2;
};

struct TreeNode {
    bool is_leaf = true;
    double threshold = 0.0; // x <= threshold goes left
    double gain = 0.0;
    int n_samples = 0;
    double leaf_value = 0.0;
    int left = -1;
    int right = -1;
};

/// Greedy best-split tree on a single feature. Split candidates are the
/// midpoints between consecutive distinct sorted values; equal gains break
/// toward the lowest threshold so fits are reproducible.
class UnivariateTree {
public:
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    bool empty() const { return nodes_.empty(); }
    double predict(double x) const;
    int depth() const;

private:
    friend UnivariateTree fit_cart(const VectorXd&, const VectorXd&, Task,
                                   const TreeConstraints&);
    std::vector<TreeNode> nodes_;
};

/// Impurity: variance for regression, Gini for classification. Classification
/// labels are nonnegative integers stored in y. Throws EmptyInput.
UnivariateTree fit_cart(const VectorXd& x, const VectorXd& y, Task task,
                        const TreeConstraints& constraints);

/// One record per internal node, in node order (multiset semantics).
std::vector<SplitRecord> extract_splits(const UnivariateTree& tree);

struct BoostedConfig {
    int n_estimators = 100;
    int max_depth = 3;
    double learning_rate = 0.1;
};

/// Gradient boosting with exact univariate regression trees on the negative
/// gradients: squared loss for regression, logistic loss for binary targets.
/// Multiclass targets are binarized as most-frequent class vs rest, since the
/// ensemble only exists to surface split thresholds.
class BoostedStumps {
public:
    const std::vector<UnivariateTree>& trees() const { return trees_; }
    double initial_prediction() const { return init_; }
    double learning_rate() const { return learning_rate_; }
    double predict_raw(double x) const;

private:
    friend BoostedStumps fit_boosted(const VectorXd&, const VectorXd&, Task,
                                     const BoostedConfig&);
    std::vector<UnivariateTree> trees_;
    double init_ = 0.0;
    double learning_rate_ = 0.1;
};

BoostedStumps fit_boosted(const VectorXd& x, const VectorXd& y, Task task,
                          const BoostedConfig& config = {});

/// Threshold importance summed over the ensemble: w(s) = sum_t g_t(s) with
/// g_t(s) the SSE reduction of that split inside tree t. Records are sorted
/// by threshold.
std::vector<SplitRecord> aggregate_boosted_gains(const BoostedStumps& model);

} // namespace numenc
