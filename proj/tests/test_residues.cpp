#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corad/geometry.hpp"
#include "corad/residues.hpp"
#include "residue_bases.hpp"
#include "test_util.hpp"

using namespace corad;
using test::Rng;
using test::p1;
using test::p2;

namespace {

VarietySpec conic_variety() {
  VarietySpec v;
  v.n = 2;
  v.generators = {test::conic()};
  v.weight = -1;
  v.param = MonomialCurve{{0, 1, 2}, 1e6};
  return v;
}

VarietySpec cubic_variety() {
  VarietySpec v;
  v.n = 2;
  v.generators = {test::cuspidal_cubic()};
  v.weight = 0;
  v.param = MonomialCurve{{0, 2, 3}, 1e6};
  return v;
}

Cycle unit_circle_ccw(Cx center, double radius, int m) {
  Cycle c;
  c.orientation = +1;
  c.nodes.resize(m + 1);
  c.weights.resize(m);
  for (int k = 0; k <= m; ++k) {
    double ang = 2.0 * kPi * k / m;
    c.nodes[k] = center + radius * Cx(std::cos(ang), std::sin(ang));
  }
  c.nodes[m] = c.nodes[0];
  for (int k = 0; k < m; ++k)
    c.weights[k] = Cx(0.0, 1.0) * (c.nodes[k] - center) * (2.0 * kPi / m);
  return c;
}

const BallComplementDomain kDom{2, 1.0, 0.0};

}  // namespace

TEST_CASE("tube_integral: double Cauchy normalization") {
  AdmissibleSchedule sched;
  LocalTube t{{p2({{{1, 0}, 1.0}}), p2({{{0, 1}, 1.0}})},
              p2({{{0, 0}, 1.0}}),
              {0.0, 0.0},
              1.0};
  TubeResult r = tube_integral(t, sched);
  CHECK(r.status == RowStatus::ok);
  CHECK(test::close(r.value, 1.0, 1e-9));
}

TEST_CASE("tube_integral: coefficient extraction and scaling") {
  AdmissibleSchedule sched;
  // F = (z1^2, z2), h = z1: the derivative coefficient, equals 1.
  LocalTube t1{{p2({{{2, 0}, 1.0}}), p2({{{0, 1}, 1.0}})},
               p2({{{1, 0}, 1.0}}),
               {0.0, 0.0},
               1.0};
  CHECK(test::close(tube_integral(t1, sched).value, 1.0, 1e-8));

  // F = (2 z1, 3 z2), h = 1 -> 1/6.
  LocalTube t2{{p2({{{1, 0}, 2.0}}), p2({{{0, 1}, 3.0}})},
               p2({{{0, 0}, 1.0}}),
               {0.0, 0.0},
               1.0};
  CHECK(test::close(tube_integral(t2, sched).value, Cx(1.0 / 6.0, 0.0), 1e-9));

  // Numerator in the ideal: h = z1 * (1 + z2) -> 0.
  LocalTube t3{{p2({{{1, 0}, 1.0}}), p2({{{0, 1}, 1.0}})},
               p2({{{1, 0}, 1.0}, {{1, 1}, 1.0}}),
               {0.0, 0.0},
               1.0};
  CHECK(test::close_abs(tube_integral(t3, sched).value, 0.0, 1e-9));
}

TEST_CASE("tube_integral: tube escaping the region is a geometry error") {
  AdmissibleSchedule sched;
  sched.base = 0.5;
  LocalTube t{{p1({{1, 1.0}})}, p1({{0, 1.0}}), {0.0}, 0.1};
  CHECK_THROWS_AS(tube_integral(t, sched), Error);
}

TEST_CASE("tube_integral: unstabilized schedule is reported, not hidden") {
  AdmissibleSchedule sched;
  sched.tolerance = 1e-18;  // below quadrature noise
  sched.halvings = 3;
  LocalTube t{{p2({{{1, 0}, 1.0}, {{0, 2}, -1.0}}), p2({{{0, 1}, 1.0}})},
              p2({{{1, 0}, 1.0}, {{0, 0}, 1.0}}),
              {0.0, 0.0},
              1.0};
  TubeResult r = tube_integral(t, sched);
  CHECK(r.status == RowStatus::not_stabilized);
  CHECK(test::close(r.value, 1.0, 1e-6));  // the value itself is still fine
}

TEST_CASE("grothendieck_residue examples") {
  // Substitute z1 = z2^2 into h = z1 + 1, evaluate at z2 = 0.
  CHECK(test::close(
      grothendieck_residue({p2({{{1, 0}, 1.0}, {{0, 2}, -1.0}}),
                            p2({{{0, 1}, 1.0}})},
                           p2({{{1, 0}, 1.0}, {{0, 0}, 1.0}}), {0.0, 0.0}),
      1.0, 1e-12));

  // Monomial Cauchy coefficients.
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      Cx got = grothendieck_residue(
          {p2({{{1, 0}, 1.0}}), p2({{{0, 1}, 1.0}})},
          Polynomial::monomial(1.0, MultiIndex{{a, b}}), {0.0, 0.0});
      CHECK(test::close_abs(got, (a == 0 && b == 0) ? 1.0 : 0.0, 1e-13));
    }

  CHECK(test::close(
      grothendieck_residue({p2({{{1, 0}, 2.0}}), p2({{{0, 1}, 3.0}})},
                           p2({{{0, 0}, 1.0}}), {0.0, 0.0}),
      Cx(1.0 / 6.0, 0.0), 1e-13));
}

TEST_CASE("grothendieck_residue rejects unsupported bases") {
  // z1^2 - z2^3 and z2^2 - z1^3: no variable admits a monomial or sheared
  // linear form.
  CHECK_THROWS_AS(
      grothendieck_residue({p2({{{2, 0}, 1.0}, {{0, 3}, -1.0}}),
                            p2({{{0, 2}, 1.0}, {{3, 0}, -1.0}})},
                           p2({{{0, 0}, 1.0}}), {0.0, 0.0}),
      Error);
}

TEST_CASE("oracle equivalence: tube quadrature matches series residues") {
  AdmissibleSchedule sched;
  for (const auto& basis : test::residue_bases()) {
    CAPTURE(std::string(basis.name));
    CxVec center(basis.denominators.size(), Cx{});
    Cx exact = grothendieck_residue(basis.denominators, basis.numerator, center);
    CHECK(test::close(exact, basis.expected, 1e-12));
    LocalTube tube{basis.denominators, basis.numerator, center, 1.0};
    TubeResult quad = tube_integral(tube, sched);
    CHECK(quad.status == RowStatus::ok);
    CHECK(std::abs(quad.value - exact) <=
          1e-6 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("schedule sanity: value stable under kappa change") {
  LocalTube t{{p2({{{1, 0}, 1.0}, {{0, 2}, -1.0}}), p2({{{0, 1}, 1.0}})},
              p2({{{1, 0}, 1.0}, {{0, 0}, 1.0}}),
              {0.0, 0.0},
              1.0};
  AdmissibleSchedule s2;
  s2.kappa = 2;
  AdmissibleSchedule s4;
  s4.kappa = 4;
  s4.base = 0.2;
  Cx v2 = tube_integral(t, s2).value;
  Cx v4 = tube_integral(t, s4).value;
  CHECK(std::abs(v2 - v4) <= 1e-6 * std::max(1.0, std::abs(v2)));
}

TEST_CASE("transformation law: unit determinant shear") {
  AdmissibleSchedule sched;
  std::vector<Polynomial> p_basis{p2({{{1, 0}, 1.0}}), p2({{{0, 1}, 1.0}})};
  // A = [[1, 0], [z1, 1]], det = 1; F = (z1, z1^2 + z2).
  std::vector<std::vector<Polynomial>> a{
      {Polynomial::constant(1.0, 2), Polynomial::constant(0.0, 2)},
      {p2({{{1, 0}, 1.0}}), Polynomial::constant(1.0, 2)}};
  Polynomial h = p2({{{0, 0}, Cx(0.7, 0.3)}, {{1, 1}, 1.0}});
  auto rep = transformation_law_check(p_basis, a, h, {0.0, 0.0}, 1.0, sched);
  CHECK(test::close(rep.lhs, Cx(0.7, 0.3), 1e-12));  // h(0)
  CHECK(rep.discrepancy <= 1e-6);
}

TEST_CASE("transformation law: diagonal scaling and negative control") {
  AdmissibleSchedule sched;
  std::vector<Polynomial> p_basis{p2({{{1, 0}, 1.0}}), p2({{{0, 1}, 1.0}})};
  std::vector<std::vector<Polynomial>> a{
      {Polynomial::constant(2.0, 2), Polynomial::constant(0.0, 2)},
      {Polynomial::constant(0.0, 2), Polynomial::constant(3.0, 2)}};
  Polynomial h = p2({{{0, 0}, 1.5}});
  auto rep = transformation_law_check(p_basis, a, h, {0.0, 0.0}, 1.0, sched);
  CHECK(rep.discrepancy <= 1e-8);

  // Omitting det A: res_F(h) = h(0)/6 against res_P(h) = h(0).
  LocalTube wrong{{p2({{{1, 0}, 2.0}}), p2({{{0, 1}, 3.0}})}, h, {0.0, 0.0}, 1.0};
  Cx rhs = tube_integral(wrong, sched).value;
  Cx lhs = grothendieck_residue(p_basis, h, {0.0, 0.0});
  double rel = std::abs(lhs - rhs) / std::abs(lhs);
  CHECK(rel >= 0.5);
}

TEST_CASE("transformation law: random triangular matrices") {
  AdmissibleSchedule sched;
  Rng rng(404);
  std::vector<Polynomial> p_basis{p2({{{1, 0}, 1.0}}), p2({{{0, 1}, 1.0}})};
  for (int trial = 0; trial < 5; ++trial) {
    // Upper triangular, unit diagonal, linear off-diagonal entry.
    Polynomial off(2);
    off.add_term(MultiIndex{{0, 0}}, rng.complex_in_disc(0.8));
    off.add_term(MultiIndex{{1, 0}}, rng.complex_in_disc(0.8));
    off.add_term(MultiIndex{{0, 1}}, rng.complex_in_disc(0.8));
    std::vector<std::vector<Polynomial>> a{
        {Polynomial::constant(1.0, 2), off},
        {Polynomial::constant(0.0, 2), Polynomial::constant(1.0, 2)}};
    Polynomial h(2);
    h.add_term(MultiIndex{{0, 0}}, rng.complex_in_disc(2.0) + Cx(0.5, 0.0));
    h.add_term(MultiIndex{{1, 0}}, rng.complex_in_disc(1.0));
    h.add_term(MultiIndex{{0, 1}}, rng.complex_in_disc(1.0));
    h.add_term(MultiIndex{{1, 1}}, rng.complex_in_disc(1.0));
    auto rep = transformation_law_check(p_basis, a, h, {0.0, 0.0}, 1.0, sched);
    CAPTURE(trial);
    CHECK(rep.discrepancy <= 1e-6);
  }
}

TEST_CASE("transformation law rejects vanishing determinant") {
  AdmissibleSchedule sched;
  std::vector<Polynomial> p_basis{p2({{{1, 0}, 1.0}}), p2({{{0, 1}, 1.0}})};
  std::vector<std::vector<Polynomial>> a{
      {p2({{{1, 0}, 1.0}}), Polynomial::constant(0.0, 2)},
      {Polynomial::constant(0.0, 2), Polynomial::constant(1.0, 2)}};
  CHECK_THROWS_AS(transformation_law_check(p_basis, a, p2({{{0, 0}, 1.0}}),
                                           {0.0, 0.0}, 1.0, sched),
                  Error);
}

TEST_CASE("fibered_residue: reduction to a single Cauchy integral") {
  // V = {z1 = 0}: the fiber residue is h(0, z2); pick h with a base pole.
  Polynomial f = p2({{{1, 0}, 1.0}});
  auto h = [](std::span<const Cx> z) { return 1.0 / z[1] + z[0]; };
  Cycle base = unit_circle_ccw(0.0, 1.0, 256);
  Cx got = fibered_residue(f, h, base, 0, 0.5);
  CHECK(test::close(got, 1.0, 1e-10));
}

TEST_CASE("fibered_residue matches residue_pairing on the conic") {
  VarietySpec v = conic_variety();
  v.validate();
  Cycle cycle = boundary_cycle(kDom, *v.param, 0.0, 256);

  auto phi = [](std::span<const Cx> u) { return 1.0 / (u[0] * u[0]); };
  ResidualForm form = ResidualForm::from_affine(phi, -1);
  auto h = [](std::span<const Cx> z) { return z[1]; };
  Cx pairing_value = residue_pairing(v, form, h, cycle);
  CHECK(test::close(pairing_value, 1.0, 1e-10));

  // Same value through per-fiber residues over the u1 base circle: the
  // graph direction is u2, so fiber_var = 1.
  Polynomial f_affine = dehomogenize(v.generators[0]);
  auto numerator = [&](std::span<const Cx> u) {
    CxVec z{1.0, u[0], u[1]};
    return phi(u) * h(z);
  };
  Cycle base = unit_circle_ccw(0.0, std::abs(cycle.nodes[0]), 256);
  Cx fib = fibered_residue(f_affine, numerator, base, 1, 1.0);
  CHECK(test::close(fib, pairing_value, 1e-9));
}

TEST_CASE("fibered_residue: branch point on the base cycle fails loudly") {
  // z1^2 - z2 + 1 branches at z2 = 1, which lies on the base cycle.
  Polynomial f = p2({{{2, 0}, 1.0}, {{0, 1}, -1.0}, {{0, 0}, 1.0}});
  auto h = [](std::span<const Cx>) { return Cx(1.0, 0.0); };
  Cycle base = unit_circle_ccw(0.0, 1.0, 256);
  CHECK_THROWS_AS(fibered_residue(f, h, base, 0, 0.75), Error);
}

TEST_CASE("leray_residue_density: conic with phi = 1 gives J = 1") {
  VarietySpec v = conic_variety();
  ResidualForm form =
      ResidualForm::from_affine([](std::span<const Cx>) { return Cx(1.0, 0.0); }, -1);
  Cycle cycle = boundary_cycle(kDom, *v.param, 0.0, 128);
  auto j = leray_residue_density(v, form, cycle);
  for (Cx s : {Cx(0.5, 0.2), Cx(-0.3, 0.6), Cx(0.78, 0.0)})
    CHECK(test::close(j(s), 1.0, 1e-12));
}

TEST_CASE("leray_residue_density: leray mode passes through") {
  VarietySpec v = conic_variety();
  ResidualForm form = ResidualForm::from_leray(
      [](Cx s) { return 1.0 / (s * s); }, -1);
  Cycle cycle = boundary_cycle(kDom, *v.param, 0.0, 128);
  auto j = leray_residue_density(v, form, cycle);
  Cx s(0.4, 0.3);
  CHECK(test::close(j(s), 1.0 / (s * s), 1e-15));
}

TEST_CASE("leray_residue_density: cubic density and cusp rejection") {
  VarietySpec v = cubic_variety();
  ResidualForm form =
      ResidualForm::from_affine([](std::span<const Cx>) { return Cx(1.0, 0.0); }, 0);
  Cycle cycle = boundary_cycle(kDom, *v.param, 0.0, 128);
  auto j = leray_residue_density(v, form, cycle);
  // sigma pullback: J = 1 / s^2 for the constant numerator.
  for (Cx s : {Cx(0.9, 0.1), Cx(-0.4, 0.8)})
    CHECK(test::close(j(s), 1.0 / (s * s), 1e-12));

  // A cycle through s = 0 grazes the cusp and must be rejected.
  Cycle bad = unit_circle_ccw(0.05, 0.05, 64);  // passes through 0
  CHECK_THROWS_AS(leray_residue_density(v, form, bad), Error);
}

TEST_CASE("tube over the boundary cycle matches the contour integral") {
  VarietySpec v = conic_variety();
  ResidualForm form = ResidualForm::from_affine(
      [](std::span<const Cx> u) { return 1.0 / (u[0] * u[0]); }, -1);
  Cycle cycle = boundary_cycle(kDom, *v.param, 0.0, 128);
  auto h = [](std::span<const Cx> z) { return z[1]; };  // pairs to 1

  AdmissibleSchedule sched;
  sched.tolerance = 1e-8;
  TubeResult raw = tube_integral_on_cycle(v, form, h, cycle, sched);
  CHECK(raw.status == RowStatus::ok);
  Cx pairing_value = residue_pairing(v, form, h, cycle);
  CHECK(std::abs(raw.value - kTwoPiI * pairing_value) <=
        1e-6 * std::max(1.0, std::abs(raw.value)));
}

TEST_CASE("tube over the cubic cycle exercises the swapped fiber branch") {
  // At the cubic's cycle radius |dF/du1| > |dF/du2|, so the fibered tube
  // runs transverse in u1 with the reversed wedge ordering.
  VarietySpec v = cubic_variety();
  // phi = u2/u1^2 pulls back to 1/s, so J = 1/s^3 and pairing with z1/z0
  // extracts the [s^2] coefficient of s^2: exactly 1.
  ResidualForm form = ResidualForm::from_affine(
      [](std::span<const Cx> u) { return u[1] / (u[0] * u[0]); }, 0);
  Cycle cycle = boundary_cycle(kDom, *v.param, 0.0, 128);
  auto h = [](std::span<const Cx> z) { return z[1] / z[0]; };

  Cx pairing_value = residue_pairing(v, form, h, cycle);
  CHECK(test::close(pairing_value, 1.0, 1e-9));

  AdmissibleSchedule sched;
  sched.tolerance = 1e-8;
  TubeResult raw = tube_integral_on_cycle(v, form, h, cycle, sched);
  CHECK(raw.status == RowStatus::ok);
  CHECK(std::abs(raw.value - kTwoPiI * pairing_value) <=
        1e-6 * std::max(1.0, std::abs(raw.value)));
}

TEST_CASE("residue_pairing example values on the conic") {
  VarietySpec v = conic_variety();
  ResidualForm form = ResidualForm::from_leray(
      [](Cx s) { return 1.0 / (s * s); }, -1);
  Cycle cycle = boundary_cycle(kDom, *v.param, 0.0, 256);

  // h = z1/z0 = s: the first Taylor coefficient of s -> 1.
  auto h1 = [](std::span<const Cx> z) { return z[1] / z[0]; };
  CHECK(test::close(residue_pairing(v, form, h1, cycle), 1.0, 1e-10));

  // h = defining polynomial: ideal annihilation.
  HomPoly p = test::conic();
  auto hp = [&](std::span<const Cx> z) { return p(z); };
  CHECK(test::close_abs(residue_pairing(v, form, hp, cycle), 0.0, 1e-12));

  // h = 1: no residue term.
  auto hone = [](std::span<const Cx>) { return Cx(1.0, 0.0); };
  CHECK(test::close_abs(residue_pairing(v, form, hone, cycle), 0.0, 1e-12));
}

TEST_CASE("ideal annihilation for random numerators") {
  Rng rng(909);
  struct Case {
    VarietySpec v;
    ResidualForm form;
  };
  std::vector<Case> cases;
  cases.push_back({conic_variety(),
                   ResidualForm::from_leray([](Cx s) { return 1.0 / (s * s); }, -1)});
  cases.push_back({cubic_variety(),
                   ResidualForm::from_leray(
                       [](Cx s) { return 1.0 / (s * s * s); }, 0)});
  for (auto& c : cases) {
    Cycle cycle = boundary_cycle(kDom, *c.v.param, 0.1, 256);
    const HomPoly& gen = c.v.generators[0];
    for (int trial = 0; trial < 10; ++trial) {
      // Random affine polynomial numerator h(z) of small degree.
      Polynomial h(3);
      for (int k = 0; k < 4; ++k)
        h.add_term(MultiIndex{{0, rng.integer(0, 2), rng.integer(0, 2)}},
                   rng.complex_in_disc(2.0));
      double hnorm = 0.0;
      for (size_t k = 0; k < cycle.segment_count(); ++k) {
        CxVec z = c.v.param->point(cycle.nodes[k]);
        hnorm = std::max(hnorm, std::abs(h.eval(z)));
      }
      auto hp = [&](std::span<const Cx> z) { return h.eval(z) * gen(z); };
      Cx got = residue_pairing(c.v, c.form, hp, cycle);
      CHECK(std::abs(got) <= 1e-8 * std::max(1.0, hnorm));
    }
  }
}

TEST_CASE("pairing is independent of the exhaustion parameter") {
  VarietySpec v = conic_variety();
  ResidualForm form = ResidualForm::from_leray(
      [](Cx s) { return 1.0 / (s * s); }, -1);
  auto h = [](std::span<const Cx> z) {
    return z[1] / z[0] + 0.5 * z[2] / z[0];  // holomorphic on V cap D closure
  };
  CxVec values;
  for (double delta : {0.05, 0.1, 0.2}) {
    Cycle cycle = boundary_cycle(kDom, *v.param, delta, 256);
    values.push_back(residue_pairing(v, form, h, cycle));
  }
  CHECK(std::abs(values[0] - values[1]) <= 1e-7);
  CHECK(std::abs(values[1] - values[2]) <= 1e-7);
}

TEST_CASE("pole of the density on the cycle is rejected") {
  VarietySpec v = conic_variety();
  // J with a pole exactly on the delta = 0 cycle radius.
  Cycle cycle = boundary_cycle(kDom, *v.param, 0.0, 128);
  Cx pole = cycle.nodes[0];
  ResidualForm form = ResidualForm::from_leray(
      [pole](Cx s) { return 1.0 / (s - pole); }, -1);
  auto h = [](std::span<const Cx>) { return Cx(1.0, 0.0); };
  CHECK_THROWS_AS(residue_pairing(v, form, h, cycle), Error);
}

TEST_CASE("VarietySpec validation") {
  VarietySpec v = conic_variety();
  CHECK_NOTHROW(v.validate());
  v.weight = 0;  // violates w = sum(deg) - (n+1) = -1
  CHECK_THROWS_AS(v.validate(), Error);

  VarietySpec mismatched = conic_variety();
  mismatched.param = MonomialCurve{{0, 2, 3}, 1e6};  // cubic param, conic gen
  CHECK_THROWS_AS(mismatched.validate(), Error);
}

TEST_CASE("charted variety transition validation") {
  // Conic in the chart z0 != 0: F0(u) = u2 - u1^2 with u = (z1/z0, z2/z0),
  // and in z2 != 0: F2(v) = v0 - v1^2 with v = (z0/z2, z1/z2). On the
  // overlap F0 = u2^2 * F2 (divide z0 z2 - z1^2 by z0^2 and by z2^2).
  ChartedVariety cv;
  cv.charts.push_back({"z0", {p2({{{0, 1}, 1.0}, {{2, 0}, -1.0}})}});
  cv.charts.push_back({"z2", {p2({{{1, 0}, 1.0}, {{0, 2}, -1.0}})}});
  ChartedVariety::Overlap ov;
  ov.chart_a = 0;
  ov.chart_b = 1;
  ov.transition = {{p2({{{0, 2}, 1.0}})}};  // A(u) = u2^2

  auto add_sample = [&](Cx u1, Cx u2) {
    CxVec ua{u1, u2};
    CxVec vb{1.0 / u2, u1 / u2};  // the same projective point in chart z2
    ov.sample_points.push_back({ua, vb});
  };
  add_sample(Cx(0.4, 0.2), Cx(1.3, -0.5));
  add_sample(Cx(-0.7, 0.1), Cx(0.9, 0.8));
  add_sample(Cx(0.1, -0.9), Cx(-1.1, 0.3));
  cv.overlaps.push_back(ov);
  CHECK_NOTHROW(cv.validate());

  // Corrupt the transition matrix: validation must fail.
  cv.overlaps[0].transition = {{p2({{{0, 1}, 1.0}})}};
  CHECK_THROWS_AS(cv.validate(), Error);
}
