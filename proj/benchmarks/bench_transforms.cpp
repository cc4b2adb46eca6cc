#include <benchmark/benchmark.h>

#include "corad/transforms.hpp"

using namespace corad;

namespace {

const BallComplementDomain kDom{2, 1.0, 0.0};

VarietySpec conic_variety() {
  VarietySpec v;
  v.n = 2;
  v.generators = {HomPoly(2, {{MultiIndex{{1, 0, 1}}, Cx(1.0, 0.0)},
                              {MultiIndex{{0, 2, 0}}, Cx(-1.0, 0.0)}})};
  v.weight = -1;
  v.param = MonomialCurve{{0, 1, 2}, 1e6};
  return v;
}

ResidualForm cube_class() {
  return ResidualForm::from_leray([](Cx s) { return 1.0 / (s * s * s); }, -1);
}

void BM_RadonPoint(benchmark::State& state) {
  CurveTransform tr(kDom, conic_variety(), cube_class(), 0.1);
  CxVec xi{1.0, Cx(0.2, 0.05), Cx(-0.15, 0.1)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tr.radon(xi));
  }
}
BENCHMARK(BM_RadonPoint);

void BM_RadonPotential(benchmark::State& state) {
  CurveTransform tr(kDom, conic_variety(), cube_class(), 0.1);
  CxVec xi{1.0, Cx(0.2, 0.05), Cx(-0.15, 0.1)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tr.potential(xi));
  }
}
BENCHMARK(BM_RadonPotential);

void BM_VerifySystemPoint(benchmark::State& state) {
  CurveTransform tr(kDom, conic_variety(), cube_class(), 0.1);
  std::vector<HomPoly> system{conic_variety().generators};
  CxVec xi{1.0, Cx(0.2, 0.05), Cx(-0.15, 0.1)};
  auto g = [&](std::span<const Cx> p) { return tr.potential(p); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_system_at(g, system, xi, kDom, 0.12));
  }
}
BENCHMARK(BM_VerifySystemPoint);

void BM_MartineauBuild(benchmark::State& state) {
  auto g = [](std::span<const Cx> xi) { return xi[1] / xi[0]; };
  auto d2g = [](std::span<const Cx> xi) {
    return 2.0 * xi[1] / (xi[0] * xi[0] * xi[0]);
  };
  int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    MartineauFunctional mu(g, d2g, kDom, 0.2, grid);
    benchmark::DoNotOptimize(mu.sphere_radius());
  }
}
BENCHMARK(BM_MartineauBuild)->Arg(16)->Arg(32)->Arg(48);

void BM_MartineauFantappie(benchmark::State& state) {
  auto g = [](std::span<const Cx> xi) { return xi[1] / xi[0]; };
  auto d2g = [](std::span<const Cx> xi) {
    return 2.0 * xi[1] / (xi[0] * xi[0] * xi[0]);
  };
  MartineauFunctional mu(g, d2g, kDom, 0.2, static_cast<int>(state.range(0)));
  CxVec xi{1.0, 0.15, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mu.fantappie(xi));
  }
}
BENCHMARK(BM_MartineauFantappie)->Arg(16)->Arg(48);

}  // namespace

BENCHMARK_MAIN();
