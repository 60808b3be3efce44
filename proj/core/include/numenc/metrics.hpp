#pragma once

#include <vector>

#include "numenc/types.hpp"

namespace numenc {

/// RMSE divided by the target range (max - min) on the original scale.
/// Throws ZeroRange for constant targets.
double nrmse(const VectorXd& predictions, const VectorXd& targets);

/// Same RMSE normalized by the sample standard deviation instead of the
/// range, for sensitivity checks against the range convention.
double nrmse_std(const VectorXd& predictions, const VectorXd& targets);

/// Mann-Whitney ROC-AUC with ties counted 1/2. Labels are 0/1.
double roc_auc(const VectorXd& scores, const VectorXi& labels);

/// Weighted one-vs-rest AUC over a n x C score matrix; absent classes get
/// weight zero. Throws SingleClass when only one class is present.
double weighted_ovr_auc(const MatrixXd& scores, const VectorXi& labels);

/// Mean squared difference between probability scores and binary labels.
double brier(const VectorXd& scores, const VectorXi& labels);

/// Within-block ranks, 1 = best, ties averaged.
VectorXd rank_block(const VectorXd& values, bool higher_is_better);

/// Rank every row of values (N blocks x k methods).
MatrixXd compute_rank_matrix(const MatrixXd& values, bool higher_is_better);

/// Nemenyi critical value of the Studentized range for k methods; supported
/// for k in [2, 20], alpha in {0.05, 0.10}.
double nemenyi_q(int k, double alpha);

struct FriedmanResult {
    int blocks = 0;   // N
    int methods = 0;  // k
    double alpha = 0.05;
    VectorXd avg_ranks;
    double chi_squared = 0.0;
    double iman_davenport = 0.0;
    double critical_difference = 0.0;
};

/// Friedman chi-squared with the Iman-Davenport correction and the Nemenyi
/// critical difference CD = q_alpha sqrt(k (k+1) / (6 N)).
FriedmanResult friedman_nemenyi(const MatrixXd& ranks, double alpha = 0.05);

/// Maximal index groups of rank-sorted methods whose average ranks lie
/// within one critical difference of each other.
std::vector<std::vector<int>> nemenyi_cliques(const VectorXd& avg_ranks, double cd);

} // namespace numenc
