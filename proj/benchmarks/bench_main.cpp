#include <benchmark/benchmark.h>

#include <random>

#include "gcalc/graphs.hpp"
#include "gcalc/integrator.hpp"
#include "gcalc/polyfields.hpp"
#include "gcalc/propagators.hpp"
#include "gcalc/theory.hpp"

using namespace gcalc;

static void BM_CanonicalUnlabeled(benchmark::State& state) {
  auto g = graphs::parse_graph("6;9;1>2,2>3,3>4,4>5,5>6,6>1,1>4,2>5,3>6");
  for (auto _ : state) benchmark::DoNotOptimize(graphs::canonical_unlabeled(g));
}
BENCHMARK(BM_CanonicalUnlabeled);

static void BM_EnumerateG45(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(graphs::enumerate_graphs(4, 5, true));
}
BENCHMARK(BM_EnumerateG45);

static void BM_PhiWheel(benchmark::State& state) {
  poly::Algebra alg{poly::Grading(3), 1};
  auto biv =
      poly::parse_poly(alg, "1*x1*psi2*psi3 + -1*x2*psi1*psi3 + 1*x3*psi1*psi2");
  int n = (int)state.range(0);
  std::vector<poly::Poly> args((size_t)n + 1, biv);
  auto w = graphs::wheel(n);
  for (auto _ : state) benchmark::DoNotOptimize(poly::phi(w, args));
}
BENCHMARK(BM_PhiWheel)->Arg(2)->Arg(3);

static void BM_McWeightCn(benchmark::State& state) {
  auto g = graphs::parse_graph("4;5;3>1,3>2,4>1,4>2,2>1");
  auto rho = prop::boundary_restriction(prop::parse_propagator("kontsevich"),
                                        prop::Side::Outer);
  mc::McOptions opt;
  opt.samples = state.range(0);
  opt.seed = 1;
  opt.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(mc::mc_weight_Cn(g, rho, opt));
  state.SetItemsProcessed(state.iterations() * opt.samples);
}
BENCHMARK(BM_McWeightCn)->Arg(20000);

static void BM_McWeightCn0Renormalized(benchmark::State& state) {
  auto g = graphs::parse_graph("3;4;3>1,1>3,2>3,2>1");
  auto K = prop::parse_propagator("kontsevich");
  mc::McOptions opt;
  opt.samples = state.range(0);
  opt.seed = 1;
  opt.threads = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(mc::mc_weight_Cn0(g, K, prop::MapMode::Renormalized, opt));
  state.SetItemsProcessed(state.iterations() * opt.samples);
}
BENCHMARK(BM_McWeightCn0Renormalized)->Arg(20000);

static void BM_DufloTransform(benchmark::State& state) {
  poly::Algebra alg{poly::Grading(3), 1};
  auto g2 =
      poly::parse_poly(alg, "1*x1*psi2*psi3 + -1*x2*psi1*psi3 + 1*x3*psi1*psi2");
  auto g0 = poly::parse_poly(alg, "1*x1^2 + 1*x2^2 + 1*x3^2");
  for (auto _ : state)
    benchmark::DoNotOptimize(
        theory::duflo_transform(g2, g0, theory::DufloVariant::Bernoulli, 4));
}
BENCHMARK(BM_DufloTransform);

BENCHMARK_MAIN();
