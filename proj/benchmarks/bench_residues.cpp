#include <benchmark/benchmark.h>

#include "corad/geometry.hpp"
#include "corad/residues.hpp"

using namespace corad;

namespace {

Polynomial p2(std::initializer_list<std::pair<std::array<int, 2>, Cx>> terms) {
  Polynomial p(2);
  for (const auto& [e, c] : terms) p.add_term(MultiIndex{{e[0], e[1]}}, c);
  return p;
}

VarietySpec conic_variety() {
  VarietySpec v;
  v.n = 2;
  v.generators = {HomPoly(2, {{MultiIndex{{1, 0, 1}}, Cx(1.0, 0.0)},
                              {MultiIndex{{0, 2, 0}}, Cx(-1.0, 0.0)}})};
  v.weight = -1;
  v.param = MonomialCurve{{0, 1, 2}, 1e6};
  return v;
}

const BallComplementDomain kDom{2, 1.0, 0.0};

void BM_GrothendieckResidue(benchmark::State& state) {
  std::vector<Polynomial> f{p2({{{1, 0}, 1.0}, {{0, 2}, -1.0}}),
                            p2({{{0, 1}, 1.0}})};
  Polynomial h = p2({{{1, 0}, 1.0}, {{0, 0}, 1.0}});
  CxVec center{0.0, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(grothendieck_residue(f, h, center));
  }
}
BENCHMARK(BM_GrothendieckResidue);

void BM_TubeIntegral(benchmark::State& state) {
  std::vector<Polynomial> f{p2({{{1, 0}, 1.0}, {{0, 2}, -1.0}}),
                            p2({{{0, 1}, 1.0}})};
  Polynomial h = p2({{{1, 0}, 1.0}, {{0, 0}, 1.0}});
  AdmissibleSchedule sched;
  LocalTube tube{f, h, {0.0, 0.0}, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tube_integral(tube, sched));
  }
}
BENCHMARK(BM_TubeIntegral);

void BM_ResiduePairing(benchmark::State& state) {
  VarietySpec v = conic_variety();
  ResidualForm form = ResidualForm::from_leray(
      [](Cx s) { return 1.0 / (s * s); }, -1);
  Cycle cycle =
      boundary_cycle(kDom, *v.param, 0.1, static_cast<int>(state.range(0)));
  auto h = [](std::span<const Cx> z) { return z[1] / z[0]; };
  for (auto _ : state) {
    benchmark::DoNotOptimize(residue_pairing(v, form, h, cycle));
  }
}
BENCHMARK(BM_ResiduePairing)->Arg(128)->Arg(256)->Arg(512);

void BM_BoundaryCycle(benchmark::State& state) {
  VarietySpec v = conic_variety();
  for (auto _ : state) {
    benchmark::DoNotOptimize(boundary_cycle(kDom, *v.param, 0.1, 256));
  }
}
BENCHMARK(BM_BoundaryCycle);

}  // namespace

BENCHMARK_MAIN();
