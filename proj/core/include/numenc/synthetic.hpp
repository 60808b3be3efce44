#pragma once

#include <cstdint>

#include "numenc/types.hpp"

namespace numenc {

/// Noiseless ablation target: a sine, a step at 0.55 and a narrow Gaussian
/// bump at 0.78.
double ablation_target(double x0);

/// Two-feature synthetic regression set: x0 is a skewed Beta mixture, x1 a
/// correlated nuisance, y = f(x0) + N(0, 0.10^2).
struct AblationData {
    MatrixXd features; // n x 2
    VectorXd target;
};
AblationData gen_ablation(int n, std::uint64_t seed);

/// Smooth illustration target on [0, 1].
double illustration_truth(double x);

struct IllustrationRegressionData {
    VectorXd x;
    VectorXd y; // truth + N(0, 0.04) read as variance 0.04 (std 0.2)
};
IllustrationRegressionData gen_illustration_regression(int n = 2500,
                                                       std::uint64_t seed = 0);

/// Clipped two-sigmoid band probability for the illustration classifier.
double illustration_probability(double x);

struct IllustrationClassificationData {
    VectorXd x;
    VectorXi labels; // Bernoulli(p(x))
};
IllustrationClassificationData gen_illustration_classification(int n = 2500,
                                                               std::uint64_t seed = 0);

/// Ridge fit with an unregularized intercept: solves
/// (Phi^T Phi + reg I) w = Phi^T y with the intercept appended as the last
/// weight. reg = 0 requires full column rank (throws SingularSystem).
VectorXd ridge_fit(const MatrixXd& phi, const VectorXd& y, double reg_strength = 1e-3);
VectorXd ridge_predict(const MatrixXd& phi, const VectorXd& weights);

/// Full-batch gradient descent on the mean logistic loss plus an L2 penalty
/// l2 * ||w||^2 on the non-intercept weights (the standard logistic-ridge
/// default; pass 0 for the unpenalized fit). Stops at gradient norm <= tol
/// or the step cap.
VectorXd logistic_fit(const MatrixXd& phi, const VectorXi& labels,
                      int max_steps = 5000, double lr = 0.5, double tol = 1e-6,
                      double l2 = 2e-4);
VectorXd logistic_predict_proba(const MatrixXd& phi, const VectorXd& weights);

} // namespace numenc
