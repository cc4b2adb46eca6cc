// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "corad/numeric.hpp"
#include "corad/transforms.hpp"
#include "oracles.hpp"
#include "residue_bases.hpp"
#include "test_util.hpp"

using namespace corad;

namespace {

const BallComplementDomain kDom{2, 1.0, 0.0};

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

ResidualForm pole_class(int k) {
  return ResidualForm::from_leray([k](Cx s) {
    Cx p = 1.0;
    for (int i = 0; i < k; ++i) p *= s;
    return 1.0 / p;
  });
}

std::vector<CxVec> sample_points() {
  return {
      {Cx(1.0, 0.0), Cx(0.20, 0.05), Cx(-0.15, 0.10)},
      {Cx(1.0, 0.0), Cx(-0.30, 0.00), Cx(0.10, -0.20)},
      {Cx(1.0, 0.1), Cx(0.05, 0.22), Cx(0.18, 0.06)},
      {Cx(0.9, -0.2), Cx(0.12, -0.08), Cx(-0.22, -0.05)},
      {Cx(1.0, 0.0), Cx(0.00, 0.00), Cx(-1.0 / 9.0, 0.0)},
      {Cx(1.0, 0.0), Cx(0.25, 0.00), Cx(0.10, 0.10)},
      {Cx(1.0, 0.0), Cx(-0.15, 0.15), Cx(-0.20, 0.00)},
      {Cx(1.0, 0.0), Cx(0.05, -0.28), Cx(0.12, 0.12)},
      {Cx(1.0, 0.05), Cx(0.30, 0.00), Cx(0.00, -0.18)},
      {Cx(1.0, 0.0), Cx(-0.05, -0.05), Cx(0.28, 0.05)},
      {Cx(0.95, 0.1), Cx(0.18, 0.12), Cx(-0.08, 0.16)},
      {Cx(1.0, 0.0), Cx(0.10, 0.20), Cx(0.22, -0.10)},
  };
}

struct Harness {
  int failures = 0;

  void run(int id, const std::string& label, double time_budget_s,
           const std::function<std::pair<bool, std::string>()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
      auto [ok, d] = body();
      pass = ok;
      detail = d;
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (time_budget_s > 0 && secs > time_budget_s) {
      pass = false;
      detail += " [over time budget]";
    }
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d: %s (%s) [%.1f s]\n",
                pass ? "PASS" : "FAIL", id, label.c_str(), detail.c_str(),
                secs);
    std::fflush(stdout);
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

}  // namespace

int main() {
  Harness h;
  auto suite_start = std::chrono::steady_clock::now();

  // 1. tube quadrature vs series residues on 12 supported bases.
  h.run(1, "residue oracle equivalence, 12 bases", 60.0, [] {
    AdmissibleSchedule sched;
    double worst = 0.0;
    auto bases = corad::test::residue_bases();
    if (bases.size() != 12) return std::make_pair(false, std::string("need 12 bases"));
    for (const auto& basis : bases) {
      CxVec center(basis.denominators.size(), Cx{});
      Cx exact = grothendieck_residue(basis.denominators, basis.numerator, center);
      if (std::abs(exact - basis.expected) > 1e-10)
        return std::make_pair(false, "frozen value mismatch on " +
                                         std::string(basis.name));
      TubeResult quad =
          tube_integral({basis.denominators, basis.numerator, center, 1.0}, sched);
      if (quad.status != RowStatus::ok)
        return std::make_pair(false, "tube not stabilized on " +
                                         std::string(basis.name));
      worst = std::max(worst, std::abs(quad.value - exact) /
                                  std::max(1.0, std::abs(exact)));
    }
    return std::make_pair(worst <= 1e-6, "max rel " + fmt(worst));
  });

  // 2. transformation law with the det A factor; negative control without it.
  h.run(2, "transformation law + negative control", 0.0, [] {
    AdmissibleSchedule sched;
    test::Rng rng(505);
    std::vector<Polynomial> p_basis{test::p2({{{1, 0}, 1.0}}),
                                    test::p2({{{0, 1}, 1.0}})};
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      Polynomial off(2);
      off.add_term(MultiIndex{{0, 0}}, rng.complex_in_disc(0.8));
      off.add_term(MultiIndex{{1, 0}}, rng.complex_in_disc(0.8));
      off.add_term(MultiIndex{{0, 1}}, rng.complex_in_disc(0.8));
      std::vector<std::vector<Polynomial>> a{
          {Polynomial::constant(1.0, 2), off},
          {Polynomial::constant(0.0, 2), Polynomial::constant(1.0, 2)}};
      Polynomial hnum(2);
      hnum.add_term(MultiIndex{{0, 0}}, rng.complex_in_disc(2.0) + Cx(0.5, 0.0));
      hnum.add_term(MultiIndex{{1, 0}}, rng.complex_in_disc(1.0));
      hnum.add_term(MultiIndex{{0, 1}}, rng.complex_in_disc(1.0));
      auto rep = transformation_law_check(p_basis, a, hnum, {0.0, 0.0}, 1.0, sched);
      worst = std::max(worst, rep.discrepancy);
    }
    if (worst > 1e-6)
      return std::make_pair(false, "law discrepancy " + fmt(worst));

    // Negative control: omit det A for A = diag(2, 3).
    Polynomial hc = Polynomial::constant(Cx(1.3, -0.4), 2);
    Cx lhs = grothendieck_residue(p_basis, hc, {0.0, 0.0});
    LocalTube wrong{{test::p2({{{1, 0}, 2.0}}), test::p2({{{0, 1}, 3.0}})},
                    hc,
                    {0.0, 0.0},
                    1.0};
    Cx rhs = tube_integral(wrong, sched).value;
    double miss = std::abs(lhs - rhs) / std::abs(lhs);
    return std::make_pair(miss >= 0.5,
                          "law " + fmt(worst) + ", control misses by " + fmt(miss));
  });

  // 3. ideal annihilation across fixtures.
  h.run(3, "ideal annihilation mu(h P) = 0", 0.0, [] {
    test::Rng rng(606);
    double worst = 0.0;
    struct Fixture {
      VarietySpec v;
      int k;
    };
    std::vector<Fixture> fixtures{{conic_variety(), 2},
                                  {conic_variety(), 3},
                                  {cubic_variety(), 3},
                                  {cubic_variety(), 4}};
    for (auto& fx : fixtures) {
      Cycle cycle = boundary_cycle(kDom, *fx.v.param, 0.1, 256);
      ResidualForm form = pole_class(fx.k);
      const HomPoly& gen = fx.v.generators[0];
      for (int trial = 0; trial < 10; ++trial) {
        Polynomial hr(3);
        for (int t = 0; t < 4; ++t)
          hr.add_term(MultiIndex{{0, rng.integer(0, 2), rng.integer(0, 2)}},
                      rng.complex_in_disc(2.0));
        double hnorm = 1.0;
        for (size_t kk = 0; kk < cycle.segment_count(); ++kk) {
          CxVec z = fx.v.param->point(cycle.nodes[kk]);
          hnorm = std::max(hnorm, std::abs(hr.eval(z)));
        }
        auto hp = [&](std::span<const Cx> z) { return hr.eval(z) * gen(z); };
        Cx got = residue_pairing(fx.v, form, hp, cycle);
        worst = std::max(worst, std::abs(got) / hnorm);
      }
    }
    return std::make_pair(worst <= 1e-8, "max residual " + fmt(worst));
  });

  // 4. Radon outputs independent of the exhaustion parameter.
  h.run(4, "delta-independence of the Radon transform", 0.0, [] {
    double worst = 0.0;
    for (int k : {2, 3}) {
      CurveTransform a(kDom, conic_variety(), pole_class(k), 0.05);
      CurveTransform b(kDom, conic_variety(), pole_class(k), 0.1);
      CurveTransform c(kDom, conic_variety(), pole_class(k), 0.2);
      for (const CxVec& xi : sample_points()) {
        auto fa = a.radon(xi), fb = b.radon(xi), fc = c.radon(xi);
        if (fa.status != RowStatus::ok || fb.status != RowStatus::ok ||
            fc.status != RowStatus::ok)
          return std::make_pair(false, std::string("unexpected skip"));
        for (int j = 0; j < 3; ++j) {
          worst = std::max(worst, std::abs(fa.form.components[j] -
                                           fb.form.components[j]));
          worst = std::max(worst, std::abs(fb.form.components[j] -
                                           fc.form.components[j]));
        }
      }
    }
    return std::make_pair(worst <= 1e-7, "max drift " + fmt(worst));
  });

  // 5. fundamental principle on the conic + closed-form cross-check.
  h.run(5, "conic fundamental principle", 30.0, [] {
    std::vector<HomPoly> system{test::conic()};
    double worst_pde = 0.0, worst_oracle = 0.0;
    int points_checked = 0;
    for (int k : {3, 4}) {
      CurveTransform tr(kDom, conic_variety(), pole_class(k), 0.1);
      auto g = [&](std::span<const Cx> xi) { return tr.potential(xi); };
      for (const CxVec& xi : sample_points()) {
        if (tr.potential_status(xi) != RowStatus::ok) continue;
        Cx oracle = corad::test::potential_series_oracle({0, 1, 2}, k, xi);
        worst_oracle = std::max(
            worst_oracle,
            std::abs(tr.potential(xi) - oracle) / std::max(1.0, std::abs(oracle)));
        SystemResidual res = verify_system_at(g, system, xi, kDom, 0.12);
        if (res.status != RowStatus::ok) continue;
        worst_pde = std::max(worst_pde, res.relative);
        ++points_checked;
      }
    }
    bool ok = points_checked >= 10 && worst_pde <= 1e-6 && worst_oracle <= 1e-8;
    return std::make_pair(ok, std::to_string(points_checked) + " pts, pde " +
                                  fmt(worst_pde) + ", oracle " +
                                  fmt(worst_oracle));
  });

  // 6. fundamental principle on the singular cubic.
  h.run(6, "cuspidal cubic fundamental principle", 0.0, [] {
    std::vector<HomPoly> system{test::cuspidal_cubic()};
    double worst = 0.0;
    int points_checked = 0;
    for (int k : {3, 7}) {
      CurveTransform tr(kDom, cubic_variety(), pole_class(k), 0.1);
      auto g = [&](std::span<const Cx> xi) { return tr.potential(xi); };
      for (const CxVec& xi : sample_points()) {
        if (tr.potential_status(xi) != RowStatus::ok) continue;
        SystemResidual res = verify_system_at(g, system, xi, kDom, 0.15);
        if (res.status != RowStatus::ok) continue;
        worst = std::max(worst, res.relative);
        ++points_checked;
      }
    }
    bool ok = points_checked >= 10 && worst <= 1e-5;
    return std::make_pair(ok, std::to_string(points_checked) + " pts, pde " +
                                  fmt(worst));
  });

  // 7. R-F compatibility.
  h.run(7, "(2 pi i)^(m+1) R = F", 0.0, [] {
    double worst = 0.0;
    for (auto make : {&conic_variety, &cubic_variety}) {
      CurveTransform tr(kDom, make(), pole_class(3), 0.1);
      for (const CxVec& xi : sample_points()) {
        auto r = tr.radon(xi);
        auto f = tr.fantappie(xi);
        if (r.status != RowStatus::ok) continue;
        for (int j = 0; j < 3; ++j) {
          Cx lhs = kTwoPiI * kTwoPiI * r.form.components[j];
          worst = std::max(worst, std::abs(lhs - f.form.components[j]) /
                                      std::max(1.0, std::abs(lhs)));
        }
      }
    }
    return std::make_pair(worst <= 1e-8, "max rel " + fmt(worst));
  });

  // 8. kernel vanishing for the cubic's global class + injectivity proxy.
  h.run(8, "kernel vanishing + injectivity proxy", 0.0, [] {
    CurveTransform kernel(kDom, cubic_variety(), pole_class(2), 0.1);
    double worst = 0.0;
    for (const CxVec& xi : sample_points()) {
      auto ev = kernel.radon(xi);
      if (ev.status != RowStatus::ok) continue;
      worst = std::max(worst, norm2(ev.form.components));
    }
    if (worst > 1e-6)
      return std::make_pair(false, "kernel class |f| " + fmt(worst));

    std::vector<CurveTransform> trs;
    for (int k : {2, 3, 4})
      trs.emplace_back(kDom, conic_variety(), pole_class(k), 0.1);
    std::array<CxVec, 3> vecs;
    for (int c = 0; c < 3; ++c)
      for (const CxVec& xi : sample_points()) {
        auto ev = trs[c].radon(xi);
        if (ev.status != RowStatus::ok)
          return std::make_pair(false, std::string("unexpected skip"));
        for (const Cx& v : ev.form.components) vecs[c].push_back(v);
      }
    std::array<Cx, 9> gram;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        Cx dot{};
        for (size_t i = 0; i < vecs[a].size(); ++i)
          dot += std::conj(vecs[a][i]) * vecs[b][i];
        gram[3 * a + b] = dot / (norm2(vecs[a]) * norm2(vecs[b]));
      }
    double sigma = hermitian3_min_eigenvalue(gram);
    return std::make_pair(sigma > 1e-4, "kernel |f| " + fmt(worst) +
                                            ", gram sigma_min " + fmt(sigma));
  });

  // 9. Euler contraction of every Radon output.
  h.run(9, "euler contraction of Radon outputs", 0.0, [] {
    double worst = 0.0;
    for (auto make : {&conic_variety, &cubic_variety})
      for (int k : {2, 3, 4}) {
        CurveTransform tr(kDom, make(), pole_class(k), 0.1);
        for (const CxVec& xi : sample_points()) {
          auto ev = tr.radon(xi);
          if (ev.status != RowStatus::ok) continue;
          worst = std::max(worst, std::abs(ev.form.euler_contraction()));
        }
      }
    return std::make_pair(worst <= 1e-8, "max |sum xi_j f_j| " + fmt(worst));
  });

  // 10. Martineau inversion roundtrip at grid 48 with one refinement.
  h.run(10, "martineau inversion roundtrip", 300.0, [] {
    struct CaseDef {
      std::function<Cx(std::span<const Cx>)> g;
      std::function<Cx(std::span<const Cx>)> d2g;
      std::function<CxVec(std::span<const Cx>)> dg;
    };
    std::vector<CaseDef> cases;
    cases.push_back({[](std::span<const Cx> xi) { return xi[1] / xi[0]; },
                     [](std::span<const Cx> xi) {
                       return 2.0 * xi[1] / (xi[0] * xi[0] * xi[0]);
                     },
                     [](std::span<const Cx> xi) -> CxVec {
                       return {-xi[1] / (xi[0] * xi[0]), 1.0 / xi[0], Cx{}};
                     }});
    cases.push_back({[](std::span<const Cx> xi) { return xi[2] / xi[0]; },
                     [](std::span<const Cx> xi) {
                       return 2.0 * xi[2] / (xi[0] * xi[0] * xi[0]);
                     },
                     [](std::span<const Cx> xi) -> CxVec {
                       return {-xi[2] / (xi[0] * xi[0]), Cx{}, 1.0 / xi[0]};
                     }});
    cases.push_back(
        {[](std::span<const Cx> xi) {
           return xi[1] * xi[1] / (xi[0] * xi[0]) - 2.0 * xi[2] / xi[0];
         },
         [](std::span<const Cx> xi) {
           Cx x0 = xi[0];
           return 6.0 * xi[1] * xi[1] / (x0 * x0 * x0 * x0) -
                  4.0 * xi[2] / (x0 * x0 * x0);
         },
         [](std::span<const Cx> xi) -> CxVec {
           Cx x0 = xi[0];
           return {-2.0 * xi[1] * xi[1] / (x0 * x0 * x0) +
                       2.0 * xi[2] / (x0 * x0),
                   2.0 * xi[1] / (x0 * x0), -2.0 / x0};
         }});

    std::vector<CxVec> points = {{1.0, 0.15, 0.1},
                                 {1.0, Cx(-0.2, 0.1), Cx(0.1, 0.05)},
                                 {1.0, Cx(0.0, 0.18), Cx(0.22, 0.0)},
                                 {1.0, Cx(0.25, 0.0), Cx(0.0, -0.15)},
                                 {1.0, Cx(-0.1, -0.1), Cx(-0.12, 0.08)}};
    double worst = 0.0;
    for (auto& c : cases) {
      MartineauFunctional mu(c.g, c.d2g, kDom, 0.2, 48);
      for (const CxVec& xi : points) {
        auto f = mu.fantappie(xi);
        if (f.status != RowStatus::ok)
          return std::make_pair(false, std::string("quadrature not stabilized"));
        CxVec expect = c.dg(xi);
        for (int j = 0; j < 3; ++j)
          worst = std::max(worst, std::abs(f.form.components[j] - expect[j]) /
                                      std::max(1.0, std::abs(expect[j])));
      }
    }
    return std::make_pair(worst <= 1e-4, "max rel " + fmt(worst));
  });

  // 11. closedness and homogeneity of outputs.
  h.run(11, "closedness and homogeneity", 0.0, [] {
    CurveTransform tr(kDom, conic_variety(), pole_class(3), 0.1);
    auto radon_at = [&](std::span<const Cx> xi) { return tr.radon(xi).form; };
    double worst_closed = 0.0;
    auto pts = sample_points();
    for (int i = 0; i < 5; ++i)
      worst_closed = std::max(worst_closed,
                              closedness_defect(radon_at, pts[i], 0.08, 16));
    if (worst_closed > 1e-6)
      return std::make_pair(false, "d f defect " + fmt(worst_closed));

    double worst_scale = 0.0;
    Cx lam(0.75, 0.35);
    for (int i = 0; i < 5; ++i) {
      CxVec xis(pts[i]);
      for (Cx& c : xis) c *= lam;
      auto a = tr.radon(pts[i]);
      auto b = tr.radon(xis);
      for (int j = 0; j < 3; ++j)
        worst_scale =
            std::max(worst_scale, std::abs(lam * b.form.components[j] -
                                           a.form.components[j]));
    }
    bool ok = worst_scale <= 1e-10;
    return std::make_pair(ok, "d f " + fmt(worst_closed) + ", scaling " +
                                  fmt(worst_scale));
  });

  double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start)
          .count();
  std::printf("%d of 11 criteria passed in %.1f s\n", 11 - h.failures, total);
  return h.failures == 0 ? 0 : 1;
}
