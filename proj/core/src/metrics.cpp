#include "numenc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "numenc/errors.hpp"

namespace numenc {

namespace {

double rmse(const VectorXd& predictions, const VectorXd& targets) {
    if (predictions.size() == 0) throw EmptyInput("rmse: empty input");
    if (predictions.size() != targets.size())
        throw ShapeMismatch("rmse: length mismatch");
    return std::sqrt((predictions - targets).squaredNorm() /
                     static_cast<double>(targets.size()));
}

} // namespace

double nrmse(const VectorXd& predictions, const VectorXd& targets) {
    const double range = targets.maxCoeff() - targets.minCoeff();
    if (!(range > 0.0)) throw ZeroRange("nrmse: target range is zero");
    return rmse(predictions, targets) / range;
}

double nrmse_std(const VectorXd& predictions, const VectorXd& targets) {
    const double mean = targets.mean();
    const double n = static_cast<double>(targets.size());
    const double var = (targets.array() - mean).square().sum() / std::max(1.0, n - 1.0);
    if (!(var > 0.0)) throw ZeroRange("nrmse_std: target variance is zero");
    return rmse(predictions, targets) / std::sqrt(var);
}

namespace {

// Average ranks (1-based) of a value vector, ascending, ties averaged.
VectorXd average_ranks_ascending(const VectorXd& values) {
    const auto n = values.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return values[a] < values[b]; });
    VectorXd ranks(n);
    Eigen::Index i = 0;
    while (i < n) {
        Eigen::Index j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (Eigen::Index t = i; t <= j; ++t) ranks[order[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

} // namespace

double roc_auc(const VectorXd& scores, const VectorXi& labels) {
    if (scores.size() != labels.size()) throw ShapeMismatch("roc_auc: length mismatch");
    const auto n = scores.size();
    long n_pos = 0;
    for (Eigen::Index i = 0; i < n; ++i) n_pos += labels[i] != 0;
    const long n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) throw SingleClass("roc_auc: both classes required");
    const VectorXd ranks = average_ranks_ascending(scores);
    double rank_sum_pos = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (labels[i] != 0) rank_sum_pos += ranks[i];
    const double u = rank_sum_pos - 0.5 * static_cast<double>(n_pos) * (n_pos + 1.0);
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double weighted_ovr_auc(const MatrixXd& scores, const VectorXi& labels) {
    if (scores.rows() != labels.size())
        throw ShapeMismatch("weighted_ovr_auc: row count mismatch");
    const auto n = labels.size();
    const int n_classes = static_cast<int>(scores.cols());
    double total = 0.0;
    long covered = 0;
    for (int c = 0; c < n_classes; ++c) {
        long n_c = 0;
        for (Eigen::Index i = 0; i < n; ++i) n_c += labels[i] == c;
        if (n_c == 0 || n_c == n) continue; // weight zero / degenerate rest
        VectorXi ovr(n);
        for (Eigen::Index i = 0; i < n; ++i) ovr[i] = labels[i] == c ? 1 : 0;
        total += static_cast<double>(n_c) / static_cast<double>(n) *
                 roc_auc(scores.col(c), ovr);
        covered += n_c;
    }
    if (covered == 0) throw SingleClass("weighted_ovr_auc: only one class present");
    return total * static_cast<double>(n) / static_cast<double>(covered);
}

double brier(const VectorXd& scores, const VectorXi& labels) {
    if (scores.size() != labels.size()) throw ShapeMismatch("brier: length mismatch");
    if (scores.size() == 0) throw EmptyInput("brier: empty input");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < scores.size(); ++i) {
        const double d = scores[i] - (labels[i] != 0 ? 1.0 : 0.0);
        acc += d * d;
    }
    return acc / static_cast<double>(scores.size());
}

VectorXd rank_block(const VectorXd& values, bool higher_is_better) {
    if (values.size() < 2) throw ConfigError("rank_block: need at least two methods");
    return average_ranks_ascending(higher_is_better ? VectorXd(-values) : values);
}

MatrixXd compute_rank_matrix(const MatrixXd& values, bool higher_is_better) {
    MatrixXd ranks(values.rows(), values.cols());
    for (Eigen::Index i = 0; i < values.rows(); ++i)
        ranks.row(i) = rank_block(values.row(i), higher_is_better);
    return ranks;
}

double nemenyi_q(int k, double alpha) {
    // Critical values of the Studentized range statistic divided by sqrt(2),
    // infinite degrees of freedom (Demsar 2006 and standard extensions).
    static const double q05[] = {1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031,
                                 3.102, 3.164, 3.219, 3.268, 3.313, 3.354, 3.391,
                                 3.426, 3.458, 3.489, 3.517, 3.544};
    static const double q10[] = {1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780,
                                 2.855, 2.920, 2.978, 3.030, 3.077, 3.120, 3.159,
                                 3.196, 3.230, 3.261, 3.291, 3.319};
    if (k < 2 || k > 20) throw UnsupportedK("nemenyi_q: k must be in [2, 20]");
    if (alpha == 0.05) return q05[k - 2];
    if (alpha == 0.10) return q10[k - 2];
    throw UnsupportedK("nemenyi_q: alpha must be 0.05 or 0.10");
}

FriedmanResult friedman_nemenyi(const MatrixXd& ranks, double alpha) {
    const int N = static_cast<int>(ranks.rows());
    const int k = static_cast<int>(ranks.cols());
    if (N < 2) throw ConfigError("friedman_nemenyi: need at least two blocks");
    if (k < 2) throw ConfigError("friedman_nemenyi: need at least two methods");
    FriedmanResult res;
    res.blocks = N;
    res.methods = k;
    res.alpha = alpha;
    res.avg_ranks = ranks.colwise().mean();
    const double center = (k + 1.0) / 2.0;
    double ss = 0.0;
    for (int j = 0; j < k; ++j) {
        const double d = res.avg_ranks[j] - center;
        ss += d * d;
    }
    res.chi_squared = 12.0 * N / (k * (k + 1.0)) * ss;
    const double denom = N * (k - 1.0) - res.chi_squared;
    res.iman_davenport = denom > 0.0
                             ? (N - 1.0) * res.chi_squared / denom
                             : std::numeric_limits<double>::infinity();
    res.critical_difference =
        nemenyi_q(k, alpha) * std::sqrt(k * (k + 1.0) / (6.0 * N));
    return res;
}

std::vector<std::vector<int>> nemenyi_cliques(const VectorXd& avg_ranks, double cd) {
    const int k = static_cast<int>(avg_ranks.size());
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return avg_ranks[a] < avg_ranks[b]; });
    std::vector<std::vector<int>> cliques;
    int prev_end = -1;
    for (int i = 0; i < k; ++i) {
        int end = i;
        while (end + 1 < k && avg_ranks[order[end + 1]] - avg_ranks[order[i]] <= cd)
            ++end;
        if (end > prev_end) { // keep only maximal intervals
            std::vector<int> clique;
            for (int t = i; t <= end; ++t) clique.push_back(order[t]);
            cliques.push_back(std::move(clique));
            prev_end = end;
        }
    }
    return cliques;
}

} // namespace numenc
