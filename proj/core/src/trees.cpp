#include "numenc/trees.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "numenc/errors.hpp"

namespace numenc {

namespace {

struct SortedData {
    std::vector<double> x;
    std::vector<double> y;
};

// Sorting by (x, y) fixes the summation order, so fits depend only on the
// multiset of pairs, not on the row order of the caller.
SortedData sort_pairs(const VectorXd& x, const VectorXd& y) {
    const auto n = static_cast<std::size_t>(x.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });
    SortedData d;
    d.x.resize(n);
    d.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        d.x[i] = x[idx[i]];
        d.y[i] = y[idx[i]];
    }
    return d;
}

struct Range {
    int begin;
    int end;
    int depth;
    int node;
};

class CartBuilder {
public:
    CartBuilder(const SortedData& data, Task task, const TreeConstraints& c)
        : d_(data), classification_(is_classification(task)), c_(c) {
        if (classification_) {
            int maxlab = 0;
            for (double v : d_.y) {
                if (std::round(v) != v || v < 0.0)
                    throw ConfigError("classification targets must be nonnegative integer labels");
                maxlab = std::max(maxlab, static_cast<int>(v));
            }
            n_classes_ = maxlab + 1;
        }
    }

    std::vector<TreeNode> build() {
        std::vector<TreeNode> nodes;
        nodes.push_back({});
        std::vector<Range> stack{{0, static_cast<int>(d_.x.size()), 0, 0}};
        while (!stack.empty()) {
            const Range r = stack.back();
            stack.pop_back();
            grow(nodes, r, stack);
        }
        return nodes;
    }

private:
    // Fills counts (classification) or sum/sumsq (regression) for the range.
    double impurity(int begin, int end, std::vector<double>& counts,
                    double& sum, double& sumsq) const {
        const int n = end - begin;
        if (classification_) {
            counts.assign(n_classes_, 0.0);
            for (int i = begin; i < end; ++i) counts[static_cast<int>(d_.y[i])] += 1.0;
            double g = 1.0;
            for (double cnt : counts) g -= (cnt / n) * (cnt / n);
            return g;
        }
        sum = 0.0;
        sumsq = 0.0;
        for (int i = begin; i < end; ++i) {
            sum += d_.y[i];
            sumsq += d_.y[i] * d_.y[i];
        }
        const double mean = sum / n;
        return std::max(0.0, sumsq / n - mean * mean);
    }

    double leaf_value(int begin, int end) const {
        const int n = end - begin;
        if (!classification_) {
            double s = 0.0;
            for (int i = begin; i < end; ++i) s += d_.y[i];
            return s / n;
        }
        std::vector<int> counts(n_classes_, 0);
        for (int i = begin; i < end; ++i) counts[static_cast<int>(d_.y[i])]++;
        return static_cast<double>(std::max_element(counts.begin(), counts.end()) -
                                   counts.begin());
    }

    void grow(std::vector<TreeNode>& nodes, const Range& r, std::vector<Range>& stack) {
        const int n = r.end - r.begin;
        std::vector<double> counts;
        double range_sum = 0.0, range_sumsq = 0.0;
        const double parent_impurity =
            impurity(r.begin, r.end, counts, range_sum, range_sumsq);
        nodes[r.node].n_samples = n;
        nodes[r.node].leaf_value = leaf_value(r.begin, r.end);

        const double impurity_floor = 1e-12 * (std::abs(parent_impurity) + 1.0);
        if (r.depth >= c_.max_depth || n < c_.min_samples_split ||
            parent_impurity <= impurity_floor)
            return;

        int best_pos = -1;
        double best_gain = 0.0;
        double best_threshold = 0.0;
        // Incremental left statistics over the sorted range.
        std::vector<double> left_counts(classification_ ? n_classes_ : 0, 0.0);
        double left_sum = 0.0, left_sumsq = 0.0;
        for (int pos = r.begin + 1; pos < r.end; ++pos) {
            const double yv = d_.y[pos - 1];
            if (classification_)
                left_counts[static_cast<int>(yv)] += 1.0;
            else {
                left_sum += yv;
                left_sumsq += yv * yv;
            }
            if (d_.x[pos] == d_.x[pos - 1]) continue; // not a distinct boundary
            const int nl = pos - r.begin;
            const int nr = r.end - pos;
            if (nl < c_.min_samples_leaf || nr < c_.min_samples_leaf) continue;
            double il, ir;
            if (classification_) {
                il = 1.0;
                ir = 1.0;
                for (int cls = 0; cls < n_classes_; ++cls) {
                    const double cl = left_counts[cls] / nl;
                    const double cr = (counts[cls] - left_counts[cls]) / nr;
                    il -= cl * cl;
                    ir -= cr * cr;
                }
            } else {
                const double ml = left_sum / nl;
                il = std::max(0.0, left_sumsq / nl - ml * ml);
                const double mr = (range_sum - left_sum) / nr;
                ir = std::max(0.0, (range_sumsq - left_sumsq) / nr - mr * mr);
            }
            const double gain = parent_impurity -
                                (static_cast<double>(nl) / n) * il -
                                (static_cast<double>(nr) / n) * ir;
            if (gain > best_gain) { // ties keep the lowest threshold
                best_gain = gain;
                best_pos = pos;
                best_threshold = 0.5 * (d_.x[pos - 1] + d_.x[pos]);
            }
        }
        if (best_pos < 0 || best_gain <= impurity_floor) return;

        const int left_id = static_cast<int>(nodes.size());
        const int right_id = left_id + 1;
        nodes.push_back({});
        nodes.push_back({}); // may reallocate; write the parent via its index
        nodes[r.node].is_leaf = false;
        nodes[r.node].threshold = best_threshold;
        nodes[r.node].gain = best_gain;
        nodes[r.node].left = left_id;
        nodes[r.node].right = right_id;
        stack.push_back({best_pos, r.end, r.depth + 1, right_id});
        stack.push_back({r.begin, best_pos, r.depth + 1, left_id});
    }

    const SortedData& d_;
    bool classification_;
    TreeConstraints c_;
    int n_classes_ = 0;
};

} // namespace

double UnivariateTree::predict(double x) const {
    int cur = 0;
    while (!nodes_[cur].is_leaf)
        cur = x <= nodes_[cur].threshold ? nodes_[cur].left : nodes_[cur].right;
    return nodes_[cur].leaf_value;
}

int UnivariateTree::depth() const {
    if (nodes_.empty()) return 0;
    std::vector<std::pair<int, int>> stack{{0, 0}};
    int depth = 0;
    while (!stack.empty()) {
        auto [node, d] = stack.back();
        stack.pop_back();
        depth = std::max(depth, d);
        if (!nodes_[node].is_leaf) {
            stack.push_back({nodes_[node].left, d + 1});
            stack.push_back({nodes_[node].right, d + 1});
        }
    }
    return depth;
}

UnivariateTree fit_cart(const VectorXd& x, const VectorXd& y, Task task,
                        const TreeConstraints& constraints) {
    if (x.size() == 0) throw EmptyInput("fit_cart: empty input");
    if (x.size() != y.size()) throw ShapeMismatch("fit_cart: x and y lengths differ");
    const SortedData data = sort_pairs(x, y);
    CartBuilder builder(data, task, constraints);
    UnivariateTree tree;
    tree.nodes_ = builder.build();
    return tree;
}

std::vector<SplitRecord> extract_splits(const UnivariateTree& tree) {
    std::vector<SplitRecord> out;
    for (const TreeNode& node : tree.nodes()) {
        if (!node.is_leaf) out.push_back({node.threshold, node.gain, node.n_samples});
    }
    return out;
}

double BoostedStumps::predict_raw(double x) const {
    double f = init_;
    for (const auto& tree : trees_) f += learning_rate_ * tree.predict(x);
    return f;
}

BoostedStumps fit_boosted(const VectorXd& x, const VectorXd& y, Task task,
                          const BoostedConfig& config) {
    if (x.size() == 0) throw EmptyInput("fit_boosted: empty input");
    if (x.size() < 2) throw EmptyInput("fit_boosted: needs at least two samples");
    if (x.size() != y.size()) throw ShapeMismatch("fit_boosted: x and y lengths differ");

    const auto n = x.size();
    BoostedStumps model;
    model.learning_rate_ = config.learning_rate;
    const TreeConstraints tc{config.max_depth, 1, 2};

    if (task == Task::Regression) {
        model.init_ = y.mean();
        VectorXd f = VectorXd::Constant(n, model.init_);
        for (int t = 0; t < config.n_estimators; ++t) {
            const VectorXd residual = y - f;
            UnivariateTree tree = fit_cart(x, residual, Task::Regression, tc);
            for (Eigen::Index i = 0; i < n; ++i)
                f[i] += config.learning_rate * tree.predict(x[i]);
            model.trees_.push_back(std::move(tree));
        }
        return model;
    }

    // Binary labels; multiclass is binarized as the most frequent class vs
    // the rest, which is all the threshold extraction needs.
    VectorXd bin(n);
    if (task == Task::Multiclass) {
        std::map<int, int> freq;
        for (Eigen::Index i = 0; i < n; ++i) freq[static_cast<int>(y[i])]++;
        int top = freq.begin()->first;
        for (const auto& [label, count] : freq)
            if (count > freq[top]) top = label;
        for (Eigen::Index i = 0; i < n; ++i)
            bin[i] = static_cast<int>(y[i]) == top ? 1.0 : 0.0;
    } else {
        bin = y;
    }
    const double pos_rate = bin.mean();
    if (pos_rate <= 0.0 || pos_rate >= 1.0) {
        // single class: nothing to fit
        model.init_ = pos_rate >= 1.0 ? 25.0 : -25.0;
        return model;
    }
    model.init_ = std::log(pos_rate / (1.0 - pos_rate));
    VectorXd f = VectorXd::Constant(n, model.init_);
    for (int t = 0; t < config.n_estimators; ++t) {
        VectorXd grad(n); // negative gradient of the logistic loss
        for (Eigen::Index i = 0; i < n; ++i)
            grad[i] = bin[i] - 1.0 / (1.0 + std::exp(-f[i]));
        UnivariateTree tree = fit_cart(x, grad, Task::Regression, tc);
        for (Eigen::Index i = 0; i < n; ++i)
            f[i] += config.learning_rate * tree.predict(x[i]);
        model.trees_.push_back(std::move(tree));
    }
    return model;
}

std::vector<SplitRecord> aggregate_boosted_gains(const BoostedStumps& model) {
    std::map<double, SplitRecord> agg;
    for (const auto& tree : model.trees()) {
        for (const TreeNode& node : tree.nodes()) {
            if (node.is_leaf) continue;
            auto& rec = agg[node.threshold];
            rec.threshold = node.threshold;
            rec.gain += node.n_samples * node.gain; // SSE reduction of the split
            rec.node_samples += node.n_samples;
        }
    }
    std::vector<SplitRecord> out;
    out.reserve(agg.size());
    for (const auto& [thr, rec] : agg) out.push_back(rec);
    return out;
}

} // namespace numenc
