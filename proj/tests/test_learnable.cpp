#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gradcheck.hpp"
#include "numenc/errors.hpp"
#include "numenc/learnable.hpp"
#include "numenc/rng.hpp"
#include "support.hpp"

using namespace numenc;
using namespace numenc::testing;

namespace {

KnotLogits make_logits(std::initializer_list<double> values, double delta) {
    KnotLogits l;
    l.a.resize(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double v : values) l.a[i++] = v;
    l.delta = delta;
    return l;
}

} // namespace

TEST_CASE("uniform logits give uniform knots for any delta") {
    for (double delta : {0.0, 1e-3, 0.1}) {
        const KnotWidths kw = knots_from_logits(make_logits({0, 0, 0, 0}, delta));
        CHECK(kw.widths.isApproxToConstant(0.25, 1e-14));
        CHECK(kw.knots[0] == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(kw.knots[1] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(kw.knots[2] == doctest::Approx(0.75).epsilon(1e-14));
    }
}

TEST_CASE("softmax width map hand example") {
    const KnotWidths kw = knots_from_logits(make_logits({std::log(2.0), 0, 0, 0}, 0.0));
    CHECK(kw.widths[0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(kw.knots[0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(kw.knots[1] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(kw.knots[2] == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("delta must satisfy (K+1) delta < 1") {
    CHECK_THROWS_AS(knots_from_logits(make_logits({0, 0, 0, 0}, 0.3)), InvalidDelta);
    CHECK_THROWS_AS(knots_from_logits(make_logits({0, 0}, 0.5)), InvalidDelta);
    CHECK_NOTHROW(knots_from_logits(make_logits({0, 0, 0, 0}, 0.2)));
}

TEST_CASE("spacing regularizer hand values") {
    const KnotLogits uniform = make_logits({0, 0, 0, 0}, 0.0);
    const std::vector<KnotLogits> one{uniform};
    CHECK(spacing_regularizer(one, 0.0) == doctest::Approx(4.0));

    // identical features average to the same value
    const std::vector<KnotLogits> two{uniform, uniform};
    CHECK(spacing_regularizer(two, 0.0) == doctest::Approx(4.0));

    // pushing widths toward delta grows the barrier toward 1/(delta+eps)
    const double delta = 1e-3;
    const KnotLogits skew = make_logits({50, 0, 0, 0}, delta);
    const std::vector<KnotLogits> skewed{skew};
    const double eps = 1e-6;
    CHECK(spacing_regularizer(skewed, eps) >
          0.75 / (delta + eps) / 4.0); // three widths pinned near delta
    CHECK(std::isfinite(spacing_regularizer(skewed, eps)));
}

TEST_CASE("equal widths minimize the regularizer") {
    Rng rng(3);
    const std::vector<KnotLogits> uniform{make_logits({0, 0, 0, 0, 0}, 1e-3)};
    const double base = spacing_regularizer(uniform, 1e-6);
    for (int rep = 0; rep < 200; ++rep) {
        KnotLogits l = uniform[0];
        for (Eigen::Index i = 0; i < l.a.size(); ++i) l.a[i] = rng.uniform(-3.0, 3.0);
        const std::vector<KnotLogits> v{l};
        CHECK(spacing_regularizer(v, 1e-6) >= base - 1e-12);
    }
}

TEST_CASE("knot gradient hand example and zero cases") {
    const KnotLogits uniform = make_logits({0, 0, 0, 0}, 0.0);
    const KnotRegularizerConfig no_reg{0.0, 1e-6};
    VectorXd upstream = VectorXd::Zero(3);
    CHECK(knot_logit_gradient(uniform, upstream, no_reg).norm() == 0.0);

    upstream[0] = 1.0; // dL/dkappa_1 = 1
    const VectorXd grad = knot_logit_gradient(uniform, upstream, no_reg);
    CHECK(grad[0] == doctest::Approx(0.1875)); // pi_1 (1 - pi_1)
}

TEST_CASE("knot gradient matches finite differences of the mapped objective") {
    Rng rng(5);
    const KnotRegularizerConfig reg{1e-3, 1e-6};
    for (int rep = 0; rep < 50; ++rep) {
        const int K = 1 + static_cast<int>(rng.uniform_index(6));
        KnotLogits logits;
        logits.a.resize(K + 1);
        for (int i = 0; i <= K; ++i) logits.a[i] = rng.uniform(-2.0, 2.0);
        logits.delta = 1e-3;
        VectorXd upstream(K);
        for (int i = 0; i < K; ++i) upstream[i] = rng.normal();
        const VectorXd grad = knot_logit_gradient(logits, upstream, reg, 1);

        auto objective = [&](const KnotLogits& l) {
            const KnotWidths kw = knots_from_logits(l);
            double obj = upstream.dot(kw.knots);
            const std::vector<KnotLogits> v{l};
            return obj + reg.lambda * spacing_regularizer(v, reg.epsilon);
        };
        const double h = 1e-6;
        for (int i = 0; i <= K; ++i) {
            KnotLogits up = logits, down = logits;
            up.a[i] += h;
            down.a[i] -= h;
            const double fd = (objective(up) - objective(down)) / (2.0 * h);
            CHECK(mixed_rel_err(grad[i], fd) <= 1e-5);
        }
    }
}

TEST_CASE("parameter count d (m - p)") {
    CHECK(learnable_param_count(14, 7, 3) == 56);
    CHECK(learnable_param_count(14, 15, 3) == 168);
    CHECK(learnable_param_count(14, 30, 3) == 378);
    CHECK(learnable_param_count(0, 7, 3) == 0);
    CHECK_THROWS_AS(learnable_param_count(2, 3, 3), ConfigError);
}

TEST_CASE("knots stay ordered with minimum spacing for extreme logits") {
    Rng rng(7);
    for (int rep = 0; rep < 300; ++rep) {
        const int K = 1 + static_cast<int>(rng.uniform_index(26));
        KnotLogits logits;
        logits.a.resize(K + 1);
        for (int i = 0; i <= K; ++i) logits.a[i] = rng.uniform(-50.0, 50.0);
        logits.delta = 1e-3;
        const KnotWidths kw = knots_from_logits(logits);
        CHECK(kw.widths.minCoeff() >= logits.delta - 1e-15);
        CHECK(kw.knots[0] > 0.0);
        CHECK(kw.knots[K - 1] < 1.0);
        for (int i = 1; i < K; ++i) CHECK(kw.knots[i] > kw.knots[i - 1]);
        CHECK(std::abs(kw.widths.sum() - 1.0) <= 1e-12);
    }
}

TEST_CASE("end-to-end gradient through the MLP, basis and softmax-cumsum") {
    Rng rng(11);
    const KnotRegularizerConfig reg{1e-4, 1e-6};
    for (BasisFamily family :
         {BasisFamily::BSpline, BasisFamily::MSpline, BasisFamily::ISpline}) {
        const int d = 2, m = 7, p = 3;
        LearnableEncoder enc = make_learnable_encoder(family, d, m, p, 1e-3);
        enc.layer_norm = false; // LayerNorm is exercised by the backbone tests
        for (auto& logits : enc.knots.logits)
            for (Eigen::Index i = 0; i < logits.a.size(); ++i)
                logits.a[i] = rng.uniform(-0.5, 0.5);

        Rng init(13);
        const MlpModel model = MlpModel::init(d * m, 1, {{8, 4}, 0.0}, init);
        const int n = 6;
        MatrixXd num(n, d);
        VectorXd y(n);
        for (int i = 0; i < n; ++i) {
            for (int f = 0; f < d; ++f) num(i, f) = rng.uniform(0.05, 0.95);
            y[i] = rng.normal();
        }
        const auto grads = learnable_logit_gradients(model, enc, num, y, reg);
        for (int f = 0; f < d; ++f)
            for (int i = 0; i <= enc.knots.logits[f].num_internal(); ++i) {
                const double fd = fd_logit_derivative(model, enc, num, y, reg, f, i);
                CHECK(mixed_rel_err(grads[f][i], fd) <= 1e-4);
            }
    }
}
