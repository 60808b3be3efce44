#include <benchmark/benchmark.h>

#include "numenc/basis.hpp"
#include "numenc/knots.hpp"
#include "numenc/rng.hpp"

using namespace numenc;

namespace {

KnotVector uniform_kv(int m, int degree = 3) {
    return build_clamped_knots(uniform_knots(0.0, 1.0, m - degree - 1), degree, 0.0, 1.0);
}

void BM_EvalBasis(benchmark::State& state, BasisFamily family) {
    const KnotVector kv = uniform_kv(static_cast<int>(state.range(0)));
    const BasisEvaluator ev(family, kv);
    Rng rng(1);
    VectorXd out;
    for (auto _ : state) {
        ev.value(rng.uniform(), out);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_KnotJacobian(benchmark::State& state, BasisFamily family) {
    const KnotVector kv = uniform_kv(static_cast<int>(state.range(0)));
    const BasisEvaluator ev(family, kv, true);
    Rng rng(1);
    VectorXd out;
    MatrixXd jac;
    for (auto _ : state) {
        ev.value_and_jacobian(rng.uniform(), out, jac);
        benchmark::DoNotOptimize(jac.data());
    }
}

void BM_BatchEncode(benchmark::State& state) {
    const KnotVector kv = uniform_kv(static_cast<int>(state.range(0)));
    Rng rng(1);
    std::vector<double> xs(512);
    for (auto& x : xs) x = rng.uniform();
    for (auto _ : state) {
        const MatrixXd phi = eval_basis_batch(BasisFamily::BSpline, kv, xs);
        benchmark::DoNotOptimize(phi.data());
    }
    state.SetItemsProcessed(state.iterations() * 512);
}

} // namespace

BENCHMARK_CAPTURE(BM_EvalBasis, bspline, BasisFamily::BSpline)->Arg(7)->Arg(15)->Arg(30);
BENCHMARK_CAPTURE(BM_EvalBasis, mspline, BasisFamily::MSpline)->Arg(7)->Arg(15)->Arg(30);
BENCHMARK_CAPTURE(BM_EvalBasis, ispline, BasisFamily::ISpline)->Arg(7)->Arg(15)->Arg(30);
BENCHMARK_CAPTURE(BM_KnotJacobian, bspline, BasisFamily::BSpline)->Arg(7)->Arg(30);
BENCHMARK_CAPTURE(BM_KnotJacobian, ispline, BasisFamily::ISpline)->Arg(7)->Arg(30);
BENCHMARK(BM_BatchEncode)->Arg(7)->Arg(30);

BENCHMARK_MAIN();
