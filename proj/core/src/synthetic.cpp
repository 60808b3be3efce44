#include "numenc/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "numenc/errors.hpp"
#include "numenc/rng.hpp"

namespace numenc {

double ablation_target(double x0) {
    const double bump = (x0 - 0.78) / 0.03;
    return 0.8 * std::sin(2.0 * M_PI * x0) + (x0 > 0.55 ? 1.5 : 0.0) +
           2.0 * std::exp(-0.5 * bump * bump);
}

AblationData gen_ablation(int n, std::uint64_t seed) {
    if (n < 1) throw EmptyInput("gen_ablation: n must be >= 1");
    Rng rng(seed);
    AblationData data;
    data.features.resize(n, 2);
    data.target.resize(n);
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        double x0;
        if (u < 0.70)
            x0 = rng.beta(2.0, 8.0);
        else if (u < 0.90)
            x0 = rng.beta(8.0, 2.0);
        else
            x0 = rng.uniform();
        const double x1 = 0.6 * x0 + 0.4 * rng.uniform();
        data.features(i, 0) = x0;
        data.features(i, 1) = x1;
        data.target[i] = ablation_target(x0) + rng.normal(0.0, 0.10);
    }
    return data;
}

double illustration_truth(double x) {
    return std::sin(3.0 * M_PI * x) +
           0.5 * std::cos(7.0 * M_PI * x) * std::exp(-2.0 * x) + 0.3 * x * x;
}

IllustrationRegressionData gen_illustration_regression(int n, std::uint64_t seed) {
    if (n < 1) throw EmptyInput("gen_illustration_regression: n must be >= 1");
    Rng rng(seed);
    IllustrationRegressionData data;
    data.x.resize(n);
    data.y.resize(n);
    const double noise_std = std::sqrt(0.04);
    for (int i = 0; i < n; ++i) {
        data.x[i] = rng.uniform();
        data.y[i] = illustration_truth(data.x[i]) + rng.normal(0.0, noise_std);
    }
    return data;
}

double illustration_probability(double x) {
    auto sigmoid = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };
    const double v = sigmoid(25.0 * (x - 0.33)) - sigmoid(25.0 * (x - 0.72)) + 0.04;
    return std::clamp(v, 0.04, 0.96);
}

IllustrationClassificationData gen_illustration_classification(int n,
                                                               std::uint64_t seed) {
    if (n < 1) throw EmptyInput("gen_illustration_classification: n must be >= 1");
    Rng rng(seed);
    IllustrationClassificationData data;
    data.x.resize(n);
    data.labels.resize(n);
    for (int i = 0; i < n; ++i) {
        data.x[i] = rng.uniform();
        data.labels[i] = rng.bernoulli(illustration_probability(data.x[i]));
    }
    return data;
}

namespace {

MatrixXd with_intercept(const MatrixXd& phi) {
    MatrixXd ext(phi.rows(), phi.cols() + 1);
    ext.leftCols(phi.cols()) = phi;
    ext.col(phi.cols()).setOnes();
    return ext;
}

} // namespace

VectorXd ridge_fit(const MatrixXd& phi, const VectorXd& y, double reg_strength) {
    if (phi.rows() == 0) throw EmptyInput("ridge_fit: empty design matrix");
    if (phi.rows() != y.size()) throw ShapeMismatch("ridge_fit: row count mismatch");
    const MatrixXd ext = with_intercept(phi);
    MatrixXd gram = ext.transpose() * ext;
    for (Eigen::Index j = 0; j + 1 < gram.cols(); ++j) gram(j, j) += reg_strength;
    if (reg_strength == 0.0) {
        Eigen::FullPivLU<MatrixXd> lu(gram);
        if (!lu.isInvertible())
            throw SingularSystem("ridge_fit: rank-deficient design with reg = 0");
    }
    return Eigen::LDLT<MatrixXd>(gram).solve(ext.transpose() * y);
}

VectorXd ridge_predict(const MatrixXd& phi, const VectorXd& weights) {
    if (phi.cols() + 1 != weights.size())
        throw ShapeMismatch("ridge_predict: weight length mismatch");
    return (phi * weights.head(phi.cols())).array() + weights[phi.cols()];
}

VectorXd logistic_fit(const MatrixXd& phi, const VectorXi& labels, int max_steps,
                      double lr, double tol, double l2) {
    if (phi.rows() == 0) throw EmptyInput("logistic_fit: empty design matrix");
    if (phi.rows() != labels.size())
        throw ShapeMismatch("logistic_fit: row count mismatch");
    const MatrixXd ext = with_intercept(phi);
    const auto n = static_cast<double>(ext.rows());
    VectorXd y(labels.size());
    for (Eigen::Index i = 0; i < labels.size(); ++i) y[i] = labels[i] != 0 ? 1.0 : 0.0;
    VectorXd w = VectorXd::Zero(ext.cols());
    for (int step = 0; step < max_steps; ++step) {
        const VectorXd z = ext * w;
        const VectorXd p = (1.0 / (1.0 + (-z.array()).exp())).matrix();
        VectorXd grad = ext.transpose() * (p - y) / n;
        grad.head(phi.cols()) += 2.0 * l2 * w.head(phi.cols()); // intercept unpenalized
        if (grad.norm() <= tol) break;
        w -= lr * grad;
    }
    return w;
}

VectorXd logistic_predict_proba(const MatrixXd& phi, const VectorXd& weights) {
    if (phi.cols() + 1 != weights.size())
        throw ShapeMismatch("logistic_predict_proba: weight length mismatch");
    const VectorXd z =
        (phi * weights.head(phi.cols())).array() + weights[phi.cols()];
    return (1.0 / (1.0 + (-z.array()).exp())).matrix();
}

} // namespace numenc
