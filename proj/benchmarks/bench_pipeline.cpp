#include <benchmark/benchmark.h>

#include "numenc/knots.hpp"
#include "numenc/mlp.hpp"
#include "numenc/ple.hpp"
#include "numenc/rng.hpp"
#include "numenc/trees.hpp"

using namespace numenc;

namespace {

void BM_PleEncode(benchmark::State& state) {
    PleBoundaries pb;
    const int T = static_cast<int>(state.range(0));
    pb.bounds.resize(T + 1);
    for (int t = 0; t <= T; ++t) pb.bounds[t] = static_cast<double>(t) / T;
    Rng rng(1);
    for (auto _ : state) {
        const VectorXd e = encode_ple(rng.uniform(), pb);
        benchmark::DoNotOptimize(e.data());
    }
}

void BM_TargetAwareKnots(benchmark::State& state) {
    Rng rng(2);
    const int n = static_cast<int>(state.range(0));
    VectorXd x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = rng.uniform();
        y[i] = (x[i] > 0.4 ? 1.0 : 0.0) + 0.2 * rng.normal();
    }
    for (auto _ : state) {
        const auto res = target_aware_knots(x, y, Task::Regression, KnotBudget{15, 3},
                                            PlacementStrategy::cart());
        benchmark::DoNotOptimize(res.knots.data());
    }
}

void BM_BoostedFit(benchmark::State& state) {
    Rng rng(3);
    const int n = static_cast<int>(state.range(0));
    VectorXd x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = rng.uniform();
        y[i] = std::sin(7.0 * x[i]) + 0.3 * rng.normal();
    }
    for (auto _ : state) {
        const BoostedStumps model = fit_boosted(x, y, Task::Regression, {100, 3, 0.1});
        benchmark::DoNotOptimize(&model);
    }
}

void BM_MlpTrainStep(benchmark::State& state) {
    const int width = static_cast<int>(state.range(0));
    Rng rng(4);
    MlpModel model = MlpModel::init(width, 1, MlpConfig{}, rng);
    MatrixXd x(512, width);
    VectorXd y(512);
    for (int i = 0; i < 512; ++i) {
        for (int j = 0; j < width; ++j) x(i, j) = rng.uniform();
        y[i] = rng.normal();
    }
    std::vector<AdamState> wstate(model.num_layers()), bstate(model.num_layers());
    for (auto _ : state) {
        ForwardCache cache;
        const MatrixXd pred = model.forward(x, true, &rng, &cache);
        MatrixXd lg;
        squared_loss(pred, y, &lg);
        MlpGradients grads = model.backward(cache, lg);
        for (int l = 0; l < model.num_layers(); ++l) {
            adamw_step_flat(model.weights()[l].data(), grads.weight_grads[l].data(),
                            model.weights()[l].size(), wstate[l], 1e-4, 1e-5);
            adamw_step(model.biases()[l], grads.bias_grads[l], bstate[l], 1e-4, 0.0);
        }
        benchmark::DoNotOptimize(model.weights()[0].data());
    }
    state.SetItemsProcessed(state.iterations() * 512);
}

} // namespace

BENCHMARK(BM_PleEncode)->Arg(7)->Arg(30);
BENCHMARK(BM_TargetAwareKnots)->Arg(1000)->Arg(8000);
BENCHMARK(BM_BoostedFit)->Arg(1000)->Arg(4000);
BENCHMARK(BM_MlpTrainStep)->Arg(14)->Arg(100)->Arg(420);

BENCHMARK_MAIN();
