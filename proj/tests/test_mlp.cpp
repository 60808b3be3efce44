#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "numenc/errors.hpp"
#include "numenc/mlp.hpp"
#include "support.hpp"

using namespace numenc;
using namespace numenc::testing;

namespace {

MlpModel tiny_model(int in, int out, std::vector<int> hidden, double dropout,
                    std::uint64_t seed) {
    Rng rng(seed);
    return MlpModel::init(in, out, {std::move(hidden), dropout}, rng);
}

double param_fd(MlpModel& model, double* slot, const MatrixXd& x, const VectorXd& y,
                const VectorXi* labels, double h = 1e-5) {
    const double saved = *slot;
    auto loss = [&]() {
        const MatrixXd pred = model.forward(x, false, nullptr);
        return labels ? softmax_cross_entropy(pred, *labels, nullptr)
                      : squared_loss(pred, y, nullptr);
    };
    *slot = saved + h;
    const double up = loss();
    *slot = saved - h;
    const double down = loss();
    *slot = saved;
    return (up - down) / (2.0 * h);
}

} // namespace

TEST_CASE("forward basics") {
    MlpModel model = tiny_model(3, 1, {4}, 0.0, 1);
    for (auto& w : model.weights()) w.setZero();
    MatrixXd x(2, 3);
    x << 1, -2, 3, 0.5, 0.5, 0.5;
    CHECK(model.forward(x, false, nullptr).norm() == 0.0);

    // identity weights pass ReLU(input) through
    MlpModel relu = tiny_model(2, 2, {2}, 0.0, 2);
    relu.weights()[0] = MatrixXd::Identity(2, 2);
    relu.weights()[1] = MatrixXd::Identity(2, 2);
    relu.biases()[0].setZero();
    relu.biases()[1].setZero();
    MatrixXd xin(1, 2);
    xin << -1.5, 2.5;
    const MatrixXd out = relu.forward(xin, false, nullptr);
    CHECK(out(0, 0) == 0.0);
    CHECK(out(0, 1) == 2.5);

    // eval mode is deterministic even with a dropout rate configured
    MlpModel drop = tiny_model(3, 1, {8}, 0.3, 3);
    const MatrixXd a = drop.forward(x, false, nullptr);
    const MatrixXd b = drop.forward(x, false, nullptr);
    CHECK((a - b).norm() == 0.0);

    MatrixXd bad(2, 4);
    CHECK_THROWS_AS(drop.forward(bad, false, nullptr), ShapeMismatch);
}

TEST_CASE("backward matches finite differences on a 2-2-1 network") {
    MlpModel model = tiny_model(2, 1, {2}, 0.0, 5);
    Rng rng(7);
    MatrixXd x(5, 2);
    VectorXd y(5);
    for (int i = 0; i < 5; ++i) {
        x(i, 0) = rng.normal();
        x(i, 1) = rng.normal();
        y[i] = rng.normal();
    }
    ForwardCache cache;
    const MatrixXd pred = model.forward(x, true, &rng, &cache);
    MatrixXd lg;
    squared_loss(pred, y, &lg);
    const MlpGradients grads = model.backward(cache, lg);
    for (int l = 0; l < model.num_layers(); ++l) {
        for (Eigen::Index i = 0; i < model.weights()[l].size(); ++i) {
            const double fd =
                param_fd(model, model.weights()[l].data() + i, x, y, nullptr);
            CHECK(mixed_rel_err(grads.weight_grads[l].data()[i], fd) <= 1e-5);
        }
        for (Eigen::Index i = 0; i < model.biases()[l].size(); ++i) {
            const double fd =
                param_fd(model, model.biases()[l].data() + i, x, y, nullptr);
            CHECK(mixed_rel_err(grads.bias_grads[l][i], fd) <= 1e-5);
        }
    }
    // input gradient against finite differences
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        MatrixXd xp = x, xm = x;
        xp.data()[i] += 1e-5;
        xm.data()[i] -= 1e-5;
        const double up = squared_loss(model.forward(xp, false, nullptr), y, nullptr);
        const double dn = squared_loss(model.forward(xm, false, nullptr), y, nullptr);
        CHECK(mixed_rel_err(grads.input_grad.data()[i], (up - dn) / 2e-5) <= 1e-5);
    }
}

TEST_CASE("softmax cross-entropy gradients match finite differences") {
    MlpModel model = tiny_model(3, 4, {5}, 0.0, 11);
    Rng rng(13);
    MatrixXd x(6, 3);
    VectorXi labels(6);
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 3; ++j) x(i, j) = rng.normal();
        labels[i] = static_cast<int>(rng.uniform_index(4));
    }
    ForwardCache cache;
    const MatrixXd logits = model.forward(x, false, nullptr, &cache);
    MatrixXd lg;
    softmax_cross_entropy(logits, labels, &lg);
    const MlpGradients grads = model.backward(cache, lg);
    const VectorXd dummy;
    for (int l = 0; l < model.num_layers(); ++l)
        for (Eigen::Index i = 0; i < model.weights()[l].size(); ++i) {
            const double fd =
                param_fd(model, model.weights()[l].data() + i, x, dummy, &labels);
            CHECK(mixed_rel_err(grads.weight_grads[l].data()[i], fd) <= 1e-5);
        }
}

TEST_CASE("zero loss gradient and perfect predictions") {
    MlpModel model = tiny_model(2, 1, {3}, 0.0, 17);
    MatrixXd x(3, 2);
    x << 0.1, 0.2, 0.3, 0.4, 0.5, 0.6;
    ForwardCache cache;
    const MatrixXd pred = model.forward(x, false, nullptr, &cache);
    const MlpGradients grads = model.backward(cache, MatrixXd::Zero(3, 1));
    for (const auto& g : grads.weight_grads) CHECK(g.norm() == 0.0);
    CHECK(grads.input_grad.norm() == 0.0);

    // squared loss at the exact targets has zero input gradient
    MatrixXd lg;
    squared_loss(pred, pred.col(0), &lg);
    const MlpGradients g2 = model.backward(cache, lg);
    CHECK(g2.input_grad.norm() == 0.0);
}

TEST_CASE("layernorm forward/backward against finite differences") {
    Rng rng(19);
    LayerNormBlock block = LayerNormBlock::identity(5);
    for (int i = 0; i < 5; ++i) {
        block.gamma[i] = rng.uniform(0.5, 1.5);
        block.beta[i] = rng.normal();
    }
    MatrixXd x(4, 5), upstream(4, 5);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 5; ++j) {
            x(i, j) = rng.normal();
            upstream(i, j) = rng.normal();
        }
    LayerNormCache cache;
    layernorm_forward(block, x, &cache);
    VectorXd dgamma, dbeta;
    const MatrixXd dx = layernorm_backward(block, cache, upstream, dgamma, dbeta);

    auto objective = [&](const MatrixXd& xin, const LayerNormBlock& b) {
        return (layernorm_forward(b, xin).array() * upstream.array()).sum();
    };
    const double h = 1e-6;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        MatrixXd xp = x, xm = x;
        xp.data()[i] += h;
        xm.data()[i] -= h;
        const double fd = (objective(xp, block) - objective(xm, block)) / (2 * h);
        CHECK(mixed_rel_err(dx.data()[i], fd) <= 1e-5);
    }
    for (int j = 0; j < 5; ++j) {
        LayerNormBlock bp = block, bm = block;
        bp.gamma[j] += h;
        bm.gamma[j] -= h;
        CHECK(mixed_rel_err(dgamma[j],
                            (objective(x, bp) - objective(x, bm)) / (2 * h)) <= 1e-5);
        bp = block;
        bm = block;
        bp.beta[j] += h;
        bm.beta[j] -= h;
        CHECK(mixed_rel_err(dbeta[j],
                            (objective(x, bp) - objective(x, bm)) / (2 * h)) <= 1e-5);
    }
}

TEST_CASE("adamw single steps") {
    VectorXd theta = VectorXd::Constant(1, 1.0);
    VectorXd grad = VectorXd::Zero(1);
    AdamState state;
    adamw_step(theta, grad, state, 0.1, 0.0);
    CHECK(theta[0] == 1.0); // zero gradient, zero decay

    theta[0] = 1.0;
    grad[0] = 1.0;
    state = AdamState{};
    adamw_step(theta, grad, state, 0.1, 0.0);
    CHECK(theta[0] == doctest::Approx(0.9).epsilon(1e-7));

    theta[0] = 2.0;
    grad[0] = 0.0;
    state = AdamState{};
    adamw_step(theta, grad, state, 0.1, 0.5);
    CHECK(theta[0] == doctest::Approx(2.0 * (1.0 - 0.1 * 0.5)).epsilon(1e-12));
}

namespace {

TrainData toy_regression(int n_train, int n_val, std::uint64_t seed) {
    Rng rng(seed);
    TrainData td;
    td.task = Task::Regression;
    td.phi_train.resize(n_train, 2);
    td.y_train.resize(n_train);
    for (int i = 0; i < n_train; ++i) {
        td.phi_train(i, 0) = rng.uniform();
        td.phi_train(i, 1) = rng.uniform();
        td.y_train[i] = td.phi_train(i, 0) - 0.5 * td.phi_train(i, 1) + 0.01 * rng.normal();
    }
    td.phi_val.resize(n_val, 2);
    td.y_val.resize(n_val);
    for (int i = 0; i < n_val; ++i) {
        td.phi_val(i, 0) = rng.uniform();
        td.phi_val(i, 1) = rng.uniform();
        td.y_val[i] = td.phi_val(i, 0) - 0.5 * td.phi_val(i, 1);
    }
    return td;
}

} // namespace

TEST_CASE("train runs exactly one epoch when asked") {
    const TrainData td = toy_regression(64, 16, 23);
    const MlpModel model = tiny_model(2, 1, {8}, 0.0, 23);
    TrainConfig cfg;
    cfg.max_epochs = 1;
    cfg.batch_size = 16;
    cfg.lr = 1e-2;
    const TrainResult res = train(model, std::nullopt, td, cfg);
    CHECK(res.history.size() == 1);
    CHECK(res.best_epoch == 1);
}

TEST_CASE("constant validation metric stops after patience epochs") {
    TrainData td = toy_regression(32, 8, 29);
    td.y_val.setZero();
    td.phi_val.setZero(); // constant validation loss regardless of weights
    const MlpModel model = tiny_model(2, 1, {4}, 0.0, 29);
    TrainConfig cfg;
    cfg.max_epochs = 200;
    cfg.batch_size = 32;
    cfg.lr = 0.0; // freeze the model so the metric cannot move
    cfg.early_stop_patience = 15;
    const TrainResult res = train(model, std::nullopt, td, cfg);
    CHECK(res.history.size() == 16); // first epoch improves from +inf
    CHECK(res.best_epoch == 1);
    // plateau scheduler fired once at epoch 11
    CHECK(res.history[9].lr == 0.0);
    CHECK(res.history.back().lr == 0.0);
}

TEST_CASE("plateau scheduler decays both learning rates") {
    TrainData td = toy_regression(32, 8, 31);
    td.phi_val.setZero();
    td.y_val.setZero();
    const MlpModel model = tiny_model(2, 1, {4}, 0.0, 31);
    TrainConfig cfg;
    cfg.max_epochs = 30;
    cfg.batch_size = 32;
    cfg.lr = 1e-3;
    cfg.knot_lr = 2e-3;
    cfg.early_stop_patience = 1000;
    cfg.plateau_patience = 10;
    const TrainResult res = train(model, std::nullopt, td, cfg);
    // epoch 1 improves from +inf; the counter fills over epochs 2-11, so the
    // decayed rate is first used in epoch 12 (history index 11)
    CHECK(res.history[10].lr == doctest::Approx(1e-3));
    CHECK(res.history[11].lr == doctest::Approx(1e-4));
    CHECK(res.history[11].knot_lr == doctest::Approx(2e-4));
    CHECK(res.history[21].lr == doctest::Approx(1e-5));
}

TEST_CASE("identical seeds give bitwise-identical histories") {
    const TrainData td = toy_regression(64, 16, 37);
    const MlpModel model = tiny_model(2, 1, {8}, 0.3, 37);
    TrainConfig cfg;
    cfg.max_epochs = 8;
    cfg.batch_size = 16;
    cfg.lr = 1e-3;
    cfg.seed = 99;
    const TrainResult a = train(model, std::nullopt, td, cfg);
    const TrainResult b = train(model, std::nullopt, td, cfg);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].train_loss == b.history[i].train_loss);
        CHECK(a.history[i].val_metric == b.history[i].val_metric);
    }
}

TEST_CASE("best validation epoch is restored") {
    const TrainData td = toy_regression(128, 32, 41);
    const MlpModel model = tiny_model(2, 1, {8}, 0.0, 41);
    TrainConfig cfg;
    cfg.max_epochs = 25;
    cfg.batch_size = 32;
    cfg.lr = 5e-3;
    const TrainResult res = train(model, std::nullopt, td, cfg);
    double best = res.history.front().val_metric;
    for (const auto& row : res.history) best = std::min(best, row.val_metric);
    CHECK(res.best_val == doctest::Approx(best));
    const MatrixXd pred = res.model.forward(td.phi_val, false, nullptr);
    CHECK(squared_loss(pred, td.y_val, nullptr) == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("weight decay applies to weights only") {
    // final layer zeroed and zero targets: every gradient vanishes, so one
    // epoch is a pure decay update
    MlpModel model = tiny_model(2, 1, {3}, 0.0, 43);
    model.weights()[1].setZero();
    model.biases()[1].setZero();
    model.biases()[0].setConstant(1.7);
    const MatrixXd w0 = model.weights()[0];
    TrainData td;
    td.task = Task::Regression;
    td.phi_train = MatrixXd::Ones(4, 2);
    td.y_train = VectorXd::Zero(4);
    td.phi_val = td.phi_train;
    td.y_val = td.y_train;
    TrainConfig cfg;
    cfg.max_epochs = 1;
    cfg.batch_size = 4;
    cfg.lr = 0.1;
    cfg.weight_decay = 0.5;
    const TrainResult res = train(model, std::nullopt, td, cfg);
    CHECK(res.model.weights()[0].isApprox(w0 * (1.0 - 0.1 * 0.5), 1e-12));
    CHECK(res.model.biases()[0].isApproxToConstant(1.7, 1e-12));
}

TEST_CASE("learnable knots are frozen through the warm-up") {
    Rng rng(47);
    const int d = 1, m = 6, p = 3;
    TrainData td;
    td.task = Task::Regression;
    td.num_train.resize(48, d);
    td.y_train.resize(48);
    for (int i = 0; i < 48; ++i) {
        td.num_train(i, 0) = rng.uniform();
        td.y_train[i] = std::sin(6.0 * td.num_train(i, 0));
    }
    td.num_val = td.num_train.topRows(8);
    td.y_val = td.y_train.head(8);
    td.extra_train.resize(48, 0);
    td.extra_val.resize(8, 0);

    const LearnableEncoder enc = make_learnable_encoder(BasisFamily::BSpline, d, m, p);
    const MlpModel model = tiny_model(d * m, 1, {8}, 0.0, 47);
    TrainConfig cfg;
    cfg.max_epochs = 6;
    cfg.warmup_epochs = 3;
    cfg.batch_size = 16;
    cfg.lr = 0.05;
    cfg.knot_lr = 0.1;
    cfg.early_stop_patience = 100;
    const TrainResult res = train(model, enc, td, cfg);

    // knot history: one row per (epoch, knot); K = 2
    const int K = m - p - 1;
    REQUIRE(res.knot_history.size() == static_cast<std::size_t>((6 + 1) * K));
    auto knot_at = [&](int epoch, int idx) {
        for (const auto& row : res.knot_history)
            if (row.epoch == epoch && row.knot_index == idx) return row.value;
        return -1.0;
    };
    for (int epoch = 1; epoch <= 3; ++epoch)
        for (int idx = 0; idx < K; ++idx)
            CHECK(knot_at(epoch, idx) == knot_at(0, idx));
    bool moved = false;
    for (int idx = 0; idx < K; ++idx)
        if (knot_at(4, idx) != knot_at(3, idx)) moved = true;
    CHECK(moved);

    // trained encoder still yields ordered knots with the minimum spacing
    const KnotWidths kw = knots_from_logits(res.encoder->knots.logits[0]);
    for (int i = 0; i < K; ++i) CHECK(kw.widths[i] >= res.encoder->knots.logits[0].delta);
}
