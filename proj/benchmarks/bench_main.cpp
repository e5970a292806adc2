#include <benchmark/benchmark.h>

#include "dskg/integrate.hpp"

using namespace dskg;

namespace {

void BM_JetExpChain(benchmark::State& state) {
  const auto s = seed<4>({0.3, -0.2, 0.7}, cplx(0.1, 0.4));
  const J4 x = s[0] * s[1] + s[2] - s[3];
  for (auto _ : state) benchmark::DoNotOptimize(exp(x * sin(x)) / cosh(x));
}
BENCHMARK(BM_JetExpChain);

void BM_Gamma(benchmark::State& state) {
  const cplx z(0.37, 1.4);
  for (auto _ : state) benchmark::DoNotOptimize(sf::gamma(z));
}
BENCHMARK(BM_Gamma);

void BM_WhittakerW(benchmark::State& state) {
  const J4 z = J4::variable(0, 1.7);
  for (auto _ : state) benchmark::DoNotOptimize(sf::whittaker_w(cplx(0.2, 0.3), cplx(0.6, 0.1), z));
}
BENCHMARK(BM_WhittakerW);

void BM_LegendreQ(benchmark::State& state) {
  const J4 x = J4::variable(0, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(sf::legendre_q(cplx(0.8, 0.2), cplx(0.3), x));
}
BENCHMARK(BM_LegendreQ);

void BM_SecondOrderSolve(benchmark::State& state) {
  auto p = [](double x) { return cplx(1.0 / x); };
  auto q = [](double x) { return 1.0 - 0.25 / (x * x); };
  for (auto _ : state) benchmark::DoNotOptimize(sf::SecondOrderSolution(p, q, 1.0, 1.0, 0.0, 0.5, 3.0));
}
BENCHMARK(BM_SecondOrderSolve);

void BM_SymmetryCheck(benchmark::State& state) {
  const auto cfg = fields::make_config(CaseId::G34);
  for (auto _ : state) benchmark::DoNotOptimize(ops::symmetry_check(cfg, {1, 5, 7}));
}
BENCHMARK(BM_SymmetryCheck)->Unit(benchmark::kMillisecond);

void BM_SolutionBasis(benchmark::State& state) {
  const auto id = static_cast<CaseId>(state.range(0));
  integrate::SolveParams p;
  if (has_parameter(id)) p.field.a = 1.0;
  const auto an = integrate::ansatz(id, p);
  const auto b = integrate::solution_basis(id, p);
  const auto grid = integrate::ansatz_grid(an, 4);
  for (auto _ : state)
    for (const auto& x : grid) benchmark::DoNotOptimize(an.assemble(x, b.phi1));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_SolutionBasis)
    ->Arg(static_cast<int>(CaseId::G31))
    ->Arg(static_cast<int>(CaseId::G32))
    ->Arg(static_cast<int>(CaseId::G33a))
    ->Arg(static_cast<int>(CaseId::G34))
    ->Arg(static_cast<int>(CaseId::G35));

}  // namespace

BENCHMARK_MAIN();
