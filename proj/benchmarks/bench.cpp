#include <benchmark/benchmark.h>

#include <cmath>

#include "sgcolloc/fem.hpp"
#include "sgcolloc/indexset.hpp"
#include "sgcolloc/model.hpp"
#include "sgcolloc/nodes.hpp"
#include "sgcolloc/orthopoly.hpp"
#include "sgcolloc/sparse.hpp"

using namespace sgc;

static void BM_HermiteRoots(benchmark::State& state) {
  const int m = int(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(orthopoly::hermite_roots(m));
}
BENCHMARK(BM_HermiteRoots)->Arg(8)->Arg(32)->Arg(128);

static void BM_BuildG(benchmark::State& state) {
  auto spec1 = indexset::WeightSpec::lognormal_power(1.5, 2.6, 0.7, 3);
  auto spec2 = indexset::WeightSpec::lognormal_power(1.5, 1.4, 1.6, 3);
  const double xi = double(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(indexset::build_G(
        xi, 1.0, spec1, spec2, indexset::Regime::Expansion));
}
BENCHMARK(BM_BuildG)->Arg(15)->Arg(60)->Arg(240);

static void BM_CombinedQuadWeights(benchmark::State& state) {
  auto spec = indexset::WeightSpec::lognormal_power(1.2, 1.3, 1.5, 2);
  auto plan = indexset::build_Lambda(double(state.range(0)), spec);
  nodes::NodeFamily gh(nodes::FamilyTag::GaussHermite);
  auto slice = plan.lambda0();
  for (auto _ : state)
    benchmark::DoNotOptimize(sparse::combined_quad_weights(slice, gh));
}
BENCHMARK(BM_CombinedQuadWeights)->Arg(50)->Arg(200);

static void BM_FemSolve(benchmark::State& state) {
  const int level = int(state.range(0));
  const double pi = 3.14159265358979323846;
  auto a = [](double x) { return 1.0 + 0.3 * x; };
  auto f = [=](double x) { return pi * pi * std::sin(pi * x); };
  for (auto _ : state) benchmark::DoNotOptimize(fem::solve(level, a, f));
}
BENCHMARK(BM_FemSolve)->Arg(6)->Arg(10)->Arg(14);

static void BM_EvaluatorQuadrature(benchmark::State& state) {
  auto mdl = model::CoefficientModel::lognormal_power_sine(4, 0.1, 3.0);
  auto rho = model::rho_defaults(mdl);
  auto plan = indexset::build_G(double(state.range(0)), 1.0, rho.spec1,
                                rho.spec2, indexset::Regime::Expansion,
                                indexset::Parity::Even);
  nodes::NodeFamily gh(nodes::FamilyTag::GaussHermite);
  for (auto _ : state) {
    sparse::FullyDiscreteEvaluator ev(mdl, gh, plan);
    benchmark::DoNotOptimize(ev.quadrature());
  }
}
BENCHMARK(BM_EvaluatorQuadrature)->Arg(20)->Arg(80);

BENCHMARK_MAIN();
