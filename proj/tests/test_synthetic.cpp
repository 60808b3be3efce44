#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "numenc/errors.hpp"
#include "numenc/synthetic.hpp"

using namespace numenc;

TEST_CASE("ablation target hand values") {
    // 0.8 sin(2 pi 0.78) + 1.5 + 2 e^0
    CHECK(ablation_target(0.78) == doctest::Approx(2.714170199417049).epsilon(1e-12));
    // indicator off at 0.55, bump negligible
    CHECK(std::abs(ablation_target(0.5)) <= 1e-12);
    CHECK(ablation_target(0.25) == doctest::Approx(0.8).epsilon(1e-12));
    // step discontinuity at 0.55
    CHECK(ablation_target(0.5500001) - ablation_target(0.5499999) ==
          doctest::Approx(1.5).epsilon(1e-4));
}

TEST_CASE("ablation generator is seeded and skewed toward small x0") {
    const AblationData a = gen_ablation(512, 42);
    const AblationData b = gen_ablation(512, 42);
    CHECK((a.features - b.features).norm() == 0.0);
    CHECK((a.target - b.target).norm() == 0.0);
    const AblationData c = gen_ablation(512, 43);
    CHECK((a.target - c.target).norm() > 0.0);

    const AblationData big = gen_ablation(10000, 7);
    CHECK(big.features.col(0).mean() < 0.45); // Beta(2,8) dominates the mixture
    CHECK(big.features.col(0).minCoeff() >= 0.0);
    CHECK(big.features.col(0).maxCoeff() <= 1.0);
    // x1 = 0.6 x0 + 0.4 U stays in [0, 1]
    CHECK(big.features.col(1).minCoeff() >= 0.0);
    CHECK(big.features.col(1).maxCoeff() <= 1.0);
}

TEST_CASE("illustration targets match hand evaluation") {
    CHECK(illustration_truth(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(illustration_truth(1.0) ==
          doctest::Approx(0.232332358381694).epsilon(1e-12));
    CHECK(illustration_probability(0.5) == doctest::Approx(0.96));
    CHECK(illustration_probability(0.0) ==
          doctest::Approx(0.04026117508911621).epsilon(1e-12));
    CHECK(illustration_probability(10.0) >= 0.04);
}

TEST_CASE("illustration generators are deterministic under the seed") {
    const auto r1 = gen_illustration_regression(200, 5);
    const auto r2 = gen_illustration_regression(200, 5);
    CHECK((r1.x - r2.x).norm() == 0.0);
    CHECK((r1.y - r2.y).norm() == 0.0);

    const auto c1 = gen_illustration_classification(200, 5);
    const auto c2 = gen_illustration_classification(200, 5);
    CHECK((c1.x - c2.x).norm() == 0.0);
    CHECK(c1.labels == c2.labels);
    // labels are Bernoulli draws, clipped band keeps both classes present
    CHECK(c1.labels.minCoeff() == 0);
    CHECK(c1.labels.maxCoeff() == 1);
}

TEST_CASE("ridge recovers an exact line and satisfies the normal equations") {
    MatrixXd phi(5, 1);
    VectorXd y(5);
    for (int i = 0; i < 5; ++i) {
        phi(i, 0) = i;
        y[i] = 2.0 * i + 3.0;
    }
    const VectorXd w = ridge_fit(phi, y, 0.0);
    CHECK(w[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(w[1] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK((ridge_predict(phi, w) - y).norm() <= 1e-9);

    // strong regularization shrinks the slope toward zero, intercept to mean
    const VectorXd ws = ridge_fit(phi, y, 1e9);
    CHECK(std::abs(ws[0]) <= 1e-3);
    CHECK(ws[1] == doctest::Approx(y.mean()).epsilon(1e-3));

    // residual of the regularized normal equations
    MatrixXd ext(5, 2);
    ext.col(0) = phi.col(0);
    ext.col(1).setOnes();
    const double reg = 1e-3;
    const VectorXd wr = ridge_fit(phi, y, reg);
    MatrixXd gram = ext.transpose() * ext;
    gram(0, 0) += reg;
    const VectorXd resid = gram * wr - ext.transpose() * y;
    CHECK(resid.norm() / std::max(1.0, (ext.transpose() * y).norm()) <= 1e-10);
}

TEST_CASE("ridge rejects rank-deficient unregularized systems") {
    MatrixXd phi(4, 2);
    phi << 1, 2, 2, 4, 3, 6, 4, 8; // second column is twice the first
    const VectorXd y = VectorXd::Ones(4);
    CHECK_THROWS_AS(ridge_fit(phi, y, 0.0), SingularSystem);
    CHECK_NOTHROW(ridge_fit(phi, y, 1e-6));
}

TEST_CASE("logistic fit converges to a small gradient") {
    const auto data = gen_illustration_classification(400, 11);
    MatrixXd phi(400, 1);
    phi.col(0) = data.x;
    const VectorXd w = logistic_fit(phi, data.labels, 20000, 0.5, 1e-6, 0.0);

    // gradient norm at the solution
    MatrixXd ext(400, 2);
    ext.col(0) = data.x;
    ext.col(1).setOnes();
    VectorXd yv(400);
    for (int i = 0; i < 400; ++i) yv[i] = data.labels[i];
    const VectorXd z = ext * w;
    const VectorXd p = (1.0 / (1.0 + (-z.array()).exp())).matrix();
    CHECK((ext.transpose() * (p - yv) / 400.0).norm() <= 1e-6);

    const VectorXd probs = logistic_predict_proba(phi, w);
    CHECK(probs.minCoeff() >= 0.0);
    CHECK(probs.maxCoeff() <= 1.0);
}

TEST_CASE("logistic loss decreases monotonically on separable data") {
    MatrixXd phi(6, 1);
    phi << -3, -2, -1, 1, 2, 3;
    const VectorXi labels = (VectorXi(6) << 0, 0, 0, 1, 1, 1).finished();
    auto loss_at = [&](const VectorXd& w) {
        double acc = 0.0;
        for (int i = 0; i < 6; ++i) {
            const double z = phi(i, 0) * w[0] + w[1];
            const double p = 1.0 / (1.0 + std::exp(-z));
            acc -= labels[i] ? std::log(p) : std::log(1.0 - p);
        }
        return acc / 6.0;
    };
    double prev = loss_at(VectorXd::Zero(2));
    for (int steps : {5, 20, 80, 320}) {
        const VectorXd w = logistic_fit(phi, labels, steps, 0.5, 0.0, 0.0);
        const double cur = loss_at(w);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }
}
