#include "corad/residues.hpp"

#include <algorithm>
#include <cmath>

#include "corad/numeric.hpp"
#include "corad/series.hpp"

namespace corad {

namespace {

// ---------------------------------------------------------------------------
// Univariate helpers
// ---------------------------------------------------------------------------

Cx poly_eval1(const CxVec& c, Cx x) {
  Cx v{};
  for (size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

CxVec poly_deriv1(const CxVec& c) {
  if (c.size() <= 1) return {Cx{}};
  CxVec d(c.size() - 1);
  for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * double(k);
  return d;
}

// Centroid of the root cluster nearest `near`: the closest root together
// with any root within three times that distance (covers exact multiple
// zeros), floored at a small fraction of the region so genuinely separate
// zeros of the same denominator stay excluded. nullopt when no root lies in
// the region at all.
std::optional<Cx> root_cluster_center(const CxVec& coeffs, Cx near, double radius) {
  std::vector<Cx> roots = polynomial_roots(coeffs);
  double d0 = 1e300;
  for (const Cx& r : roots) d0 = std::min(d0, std::abs(r - near));
  if (d0 > radius) return std::nullopt;
  double cutoff = std::max(3.0 * d0, 0.05 * radius);
  Cx acc{};
  int count = 0;
  for (const Cx& r : roots)
    if (std::abs(r - near) <= cutoff) {
      acc += r;
      ++count;
    }
  if (count == 0) return std::nullopt;
  return acc / double(count);
}

// Radius R with |p(c + R e^{i psi})| = eps, found by expansion + bisection.
// The level set must be radially star-shaped about c, which holds for the
// supported monomial-dominant and sheared-linear shapes at small eps.
std::optional<double> radial_level(const CxVec& p, Cx c, double psi, double eps,
                                   double r_max) {
  Cx dir(std::cos(psi), std::sin(psi));
  auto val = [&](double r) { return std::abs(poly_eval1(p, c + r * dir)); };
  if (val(0.0) >= eps) return std::nullopt;  // center not inside the level set
  double hi = std::min(eps, r_max);  // near-linear factors cross around eps
  int guard = 0;
  while (val(hi) < eps) {
    hi *= 2.0;
    if (hi > r_max || ++guard > 60) return std::nullopt;  // escapes the region
  }
  double lo = 0.0;
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    (val(mid) < eps ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct FiberNode {
  Cx z;         // node coordinate
  Cx dz_dpsi;   // d z / d psi at the node
  Cx f_value;   // denominator value at the node
};

// One circle of the tube: nodes of {|p| = eps} around center c.
std::vector<FiberNode> tube_circle(const CxVec& p, Cx c, double eps, int n,
                                   double r_max) {
  const CxVec dp = poly_deriv1(p);
  std::vector<FiberNode> nodes(n);
  for (int k = 0; k < n; ++k) {
    double psi = 2.0 * kPi * k / n;
    std::optional<double> r = radial_level(p, c, psi, eps, r_max);
    if (!r)
      throw Error(Errc::unsupported_geometry,
                  "tube circle: level set not radially solvable in region");
    Cx dir(std::cos(psi), std::sin(psi));
    Cx z = c + *r * dir;
    Cx f = poly_eval1(p, z);
    Cx chi = std::conj(f) * poly_eval1(dp, z) * dir;
    if (std::abs(chi.real()) < 1e-14 * std::max(1.0, std::abs(chi)))
      throw Error(Errc::unsupported_geometry, "tube circle: grazing level set");
    double dr = *r * chi.imag() / chi.real();
    nodes[k].z = z;
    nodes[k].dz_dpsi = (Cx(dr, 0.0) + Cx(0.0, *r)) * dir;
    nodes[k].f_value = f;
  }
  return nodes;
}

// ---------------------------------------------------------------------------
// Point-mode fibered tube quadrature at fixed eps
// ---------------------------------------------------------------------------

Cx tube_pass_m1(const LocalTube& tube, double eps, int n) {
  CxVec p = tube.denominators[0].restrict_to_variable(0, tube.center);
  std::optional<Cx> c = root_cluster_center(p, tube.center[0], tube.region_radius);
  if (!c)
    throw Error(Errc::unsupported_geometry, "tube: no zero inside the region");
  auto nodes = tube_circle(p, *c, eps, n, tube.region_radius * 4.0);
  Cx acc{};
  const double dpsi = 2.0 * kPi / n;
  for (const FiberNode& nd : nodes) {
    CxVec z = tube.center;
    z[0] = nd.z;
    acc += tube.numerator.eval(z) / nd.f_value * nd.dz_dpsi * dpsi;
  }
  return acc / kTwoPiI;
}

// Variable assignment for the fibered parametrization: the `outer`
// denominator must be univariate in its variable; the other denominator is
// then solvable in the remaining variable once the outer one is frozen.
struct TubeAssignment {
  int outer_den = 1;  // index into denominators
  int outer_var = 1;
  int inner_den = 0;
  int inner_var = 0;
};

std::optional<TubeAssignment> assign_tube_vars(const std::vector<Polynomial>& f) {
  // Prefer the standard triangular ordering (F2 univariate in z2).
  const int prefs[4][2] = {{1, 1}, {1, 0}, {0, 0}, {0, 1}};
  for (const auto& pick : prefs) {
    int den = pick[0], var = pick[1];
    if (f[den].degree_in(1 - var) == 0 && f[den].degree_in(var) > 0)
      return TubeAssignment{den, var, 1 - den, 1 - var};
  }
  return std::nullopt;
}

Cx tube_pass_m2(const LocalTube& tube, double eps1, double eps2, int n) {
  std::optional<TubeAssignment> as = assign_tube_vars(tube.denominators);
  if (!as)
    throw Error(Errc::unsupported_basis,
                "tube: no denominator is univariate in a single variable");
  const Polynomial& f_outer = tube.denominators[as->outer_den];
  const Polynomial& f_inner = tube.denominators[as->inner_den];
  // Schedule radii attach to denominator position: eps_1 << eps_2.
  const double eps_outer = as->outer_den == 1 ? eps2 : eps1;
  const double eps_inner = as->inner_den == 1 ? eps2 : eps1;
  // Two orientation factors: the variable reorder dz_1 ^ dz_2 against
  // dpsi_inner ^ dpsi_outer, and the tube orientation d(arg F_1) ^ d(arg F_2)
  // against the same pair when the denominator roles are swapped.
  const double var_sign = as->inner_var == 0 ? 1.0 : -1.0;
  const double den_sign = as->inner_den == 0 ? 1.0 : -1.0;
  const double sign = var_sign * den_sign;

  CxVec po = f_outer.restrict_to_variable(as->outer_var, tube.center);
  std::optional<Cx> co =
      root_cluster_center(po, tube.center[as->outer_var], tube.region_radius);
  if (!co)
    throw Error(Errc::unsupported_geometry, "tube: outer zero missing in region");
  auto outer_nodes = tube_circle(po, *co, eps_outer, n, tube.region_radius * 4.0);

  Cx acc{};
  const double dpsi = 2.0 * kPi / n;
  CxVec point = tube.center;
  for (const FiberNode& on : outer_nodes) {
    point[as->outer_var] = on.z;
    CxVec pi = f_inner.restrict_to_variable(as->inner_var, point);
    std::optional<Cx> ci =
        root_cluster_center(pi, tube.center[as->inner_var], tube.region_radius);
    if (!ci)
      throw Error(Errc::unsupported_geometry, "tube: inner zero escaped region");
    auto inner_nodes = tube_circle(pi, *ci, eps_inner, n, tube.region_radius * 4.0);
    Cx inner{};
    for (const FiberNode& fn : inner_nodes) {
      CxVec z(2);
      z[as->inner_var] = fn.z;
      z[as->outer_var] = on.z;
      inner += tube.numerator.eval(z) / (fn.f_value * on.f_value) * fn.dz_dpsi;
    }
    acc += sign * inner * dpsi * on.dz_dpsi * dpsi;
  }
  return acc / (kTwoPiI * kTwoPiI);
}

Cx tube_pass(const LocalTube& tube, double t, int kappa, int n) {
  const int m = static_cast<int>(tube.denominators.size());
  if (m == 1) return tube_pass_m1(tube, t, n);
  double eps2 = t;
  double eps1 = std::pow(t, kappa);
  return tube_pass_m2(tube, eps1, eps2, n);
}

// Doubles the angular resolution until two refinements agree.
Cx tube_quadrature(const std::function<Cx(int)>& pass, double tol) {
  int n = 64;
  Cx prev = pass(n);
  for (; n <= 512; n *= 2) {
    Cx next = pass(2 * n);
    if (std::abs(next - prev) <= tol * std::max(1.0, std::abs(next))) return next;
    prev = next;
  }
  return prev;
}

Series2 to_series(const Polynomial& p, int order) {
  Series2 s(order);
  for (const auto& [idx, c] : p.terms()) s.set(idx.exponents[0], idx.exponents[1], c);
  return s;
}

// Monomial form f = var^a * unit with unit(0) != 0; nullopt when f is not of
// that shape up to the truncation order.
struct MonoForm {
  int power = 0;
  Series2 unit;
};

std::optional<MonoForm> monomial_form(const Series2& f, int var, int order,
                                      double scale) {
  int a = order + 1;
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j)
      if (std::abs(f.coeff(i, j)) > 1e-13 * scale) {
        int e = var == 0 ? i : j;
        a = std::min(a, e);
      }
  if (a == 0 || a > order) return std::nullopt;
  Series2 unit(order);
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j)
      unit.set(i, j, var == 0 ? f.coeff(i + a, j) : f.coeff(i, j + a));
  if (std::abs(unit.coeff(0, 0)) < 1e-12 * scale) return std::nullopt;
  return MonoForm{a, unit};
}

// Series root x = g(y) of f(x, y) = 0 with g(0) = 0, by Newton iteration in
// the truncated ring. Requires f(0,0) = 0 and d f / d x (0,0) != 0.
std::optional<Series2> hensel_root_x(const Series2& f, int order, double scale) {
  // dx-derivative as a series.
  Series2 fx(order);
  for (int i = 1; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j)
      fx.set(i - 1, j, f.coeff(i, j) * double(i));
  if (std::abs(f.coeff(0, 0)) > 1e-12 * scale) return std::nullopt;
  if (std::abs(fx.coeff(0, 0)) < 1e-12 * scale) return std::nullopt;

  Series2 g = Series2::constant(Cx{}, order);
  int passes = 1;
  while ((1 << passes) <= order + 1) ++passes;
  for (int p = 0; p <= passes; ++p) {
    Series2 fg = f.substitute_x(g);
    Series2 fxg = fx.substitute_x(g);
    g = g - fg * fxg.inverse();
  }
  return g;
}

Series2 swap_vars(const Series2& f, int order) {
  Series2 r(order);
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j) r.set(j, i, f.coeff(i, j));
  return r;
}

// ---------------------------------------------------------------------------
// Leray density
// ---------------------------------------------------------------------------

struct CurveData {
  MonomialCurve curve;
  Polynomial f_affine;     // dehomogenized generator
  Polynomial df_du1;
  Polynomial df_du2;
  double scale = 1.0;
};

CurveData make_curve_data(const VarietySpec& variety) {
  if (variety.codimension() != 1)
    throw Error(Errc::invalid_input, "leray path requires codimension 1");
  if (!variety.param)
    throw Error(Errc::invalid_input, "leray path requires a parametrization");
  if (variety.n != 2)
    throw Error(Errc::unsupported_geometry, "curve pipeline supports n = 2");
  CurveData cd{*variety.param, dehomogenize(variety.generators[0]), {}, {}, 1.0};
  cd.df_du1 = cd.f_affine.derivative(0);
  cd.df_du2 = cd.f_affine.derivative(1);
  cd.scale = std::max(1.0, cd.f_affine.coeff_scale());
  return cd;
}

}  // namespace

// ---------------------------------------------------------------------------

void VarietySpec::validate() const {
  int degsum = 0;
  for (const HomPoly& p : generators) {
    if (p.ambient_n() != n)
      throw Error(Errc::dimension_mismatch, "VarietySpec: generator dimension");
    degsum += p.degree();
  }
  if (weight != degsum - (n + 1))
    throw Error(Errc::invalid_input,
                "VarietySpec: weight must equal sum(deg) - (n+1)");
  if (codimension() > n - 1)
    throw Error(Errc::invalid_input, "VarietySpec: codimension exceeds n - 1");
  if (param) {
    if (param->ambient_n() != n)
      throw Error(Errc::dimension_mismatch, "VarietySpec: parametrization dim");
    for (double ang : {0.3, 1.1, 2.7, 4.0, 5.5}) {
      Cx s = 0.8 * Cx(std::cos(ang), std::sin(ang));
      CxVec z = param->point(s);
      for (const HomPoly& p : generators) {
        double scale = std::max(1.0, p.poly().coeff_scale());
        if (std::abs(p(z)) > 1e-9 * scale)
          throw Error(Errc::invalid_input,
                      "VarietySpec: generators do not vanish along param");
      }
    }
  }
}

void ChartedVariety::validate(double tol) const {
  for (const Overlap& ov : overlaps) {
    const Chart& a = charts.at(ov.chart_a);
    const Chart& b = charts.at(ov.chart_b);
    const size_t m = a.local_generators.size();
    if (b.local_generators.size() != m || ov.transition.size() != m)
      throw Error(Errc::dimension_mismatch, "ChartedVariety: tuple sizes");
    for (const auto& [pa, pb] : ov.sample_points) {
      for (size_t i = 0; i < m; ++i) {
        Cx lhs = a.local_generators[i].eval(pa);
        Cx rhs{};
        for (size_t j = 0; j < m; ++j)
          rhs += ov.transition[i][j].eval(pa) * b.local_generators[j].eval(pb);
        double scale = std::max(1.0, std::abs(lhs) + std::abs(rhs));
        if (std::abs(lhs - rhs) > tol * scale)
          throw Error(Errc::invalid_input,
                      "ChartedVariety: transition relation fails at sample");
      }
    }
  }
}

ResidualForm ResidualForm::from_leray(std::function<Cx(Cx)> j, int weight) {
  ResidualForm f;
  f.kind = Kind::leray_density;
  f.leray = std::move(j);
  f.weight = weight;
  return f;
}

ResidualForm ResidualForm::from_affine(std::function<Cx(std::span<const Cx>)> phi,
                                       int weight) {
  ResidualForm f;
  f.kind = Kind::affine_numerator;
  f.affine_numerator = std::move(phi);
  f.weight = weight;
  return f;
}

void AdmissibleSchedule::validate() const {
  if (!(base > 0) || base > 0.5)
    throw Error(Errc::invalid_input, "schedule: base must lie in (0, 0.5]");
  if (kappa < 2) throw Error(Errc::invalid_input, "schedule: kappa < 2");
  if (halvings < 3) throw Error(Errc::invalid_input, "schedule: halvings < 3");
  if (!(tolerance > 0)) throw Error(Errc::invalid_input, "schedule: tolerance");
}

TubeResult tube_integral(const LocalTube& tube, const AdmissibleSchedule& sched) {
  sched.validate();
  const int m = static_cast<int>(tube.denominators.size());
  if (m < 1 || m > 2)
    throw Error(Errc::unsupported_basis, "tube_integral: m must be 1 or 2");
  for (const Polynomial& f : tube.denominators)
    if (f.nvars() != m)
      throw Error(Errc::dimension_mismatch, "tube_integral: variable count");
  if (static_cast<int>(tube.center.size()) != m)
    throw Error(Errc::dimension_mismatch, "tube_integral: center length");

  TubeResult res;
  double t = sched.base;
  std::optional<Cx> prev;
  for (int stage = 0; stage <= sched.halvings; ++stage, t *= 0.5) {
    Cx v = tube_quadrature(
        [&](int n) { return tube_pass(tube, t, sched.kappa, n); },
        0.1 * sched.tolerance);
    res.stages_used = stage + 1;
    if (prev && std::abs(v - *prev) <= sched.tolerance * std::max(1.0, std::abs(v))) {
      res.value = v;
      res.status = RowStatus::ok;
      return res;
    }
    prev = v;
  }
  res.value = *prev;
  res.status = RowStatus::not_stabilized;
  return res;
}

TubeResult tube_integral_on_cycle(const VarietySpec& variety,
                                  const ResidualForm& form,
                                  const std::function<Cx(std::span<const Cx>)>& h,
                                  const Cycle& cycle,
                                  const AdmissibleSchedule& sched) {
  sched.validate();
  CurveData cd = make_curve_data(variety);

  // The pairing orientation is positive around the compact side.
  const double orient = cycle.orientation > 0 ? 1.0 : -1.0;

  auto phi = [&](std::span<const Cx> u) -> Cx {
    if (form.kind == ResidualForm::Kind::affine_numerator)
      return form.affine_numerator(u);
    // Leray mode stores J = phi * sigma-pullback; invert the pullback factor
    // so the tube sees the numerator itself. Only used for cross checks.
    throw Error(Errc::invalid_input,
                "tube_integral_on_cycle: needs an affine numerator");
  };

  auto pass = [&](double eps, int n_fiber) -> Cx {
    Cx acc{};
    for (size_t k = 0; k < cycle.segment_count(); ++k) {
      Cx s = cycle.nodes[k];
      CxVec u = cd.curve.affine_point(s);
      CxVec du = cd.curve.affine_velocity(s);
      double d1 = std::abs(cd.df_du1.eval(u));
      double d2 = std::abs(cd.df_du2.eval(u));
      // Fiber along the coordinate with the dominant gradient component;
      // du1 ^ du2 = sign * du_base ^ du_fiber.
      int fiber_var = d2 >= d1 ? 1 : 0;
      int base_var = 1 - fiber_var;
      double sign = fiber_var == 1 ? 1.0 : -1.0;

      CxVec pf = cd.f_affine.restrict_to_variable(fiber_var, u);
      double cluster = 0.3 * std::max(1.0, std::abs(u[fiber_var]));
      std::optional<Cx> cf = root_cluster_center(pf, u[fiber_var], cluster);
      if (!cf)
        throw Error(Errc::unsupported_geometry, "cycle tube: fiber root lost");
      auto fnodes = tube_circle(pf, *cf, eps, n_fiber, 2.0);
      Cx inner{};
      CxVec upt = u;
      CxVec zpt(u.size() + 1);
      for (const FiberNode& fn : fnodes) {
        upt[fiber_var] = fn.z;
        zpt[0] = 1.0;
        for (size_t i = 0; i < upt.size(); ++i) zpt[i + 1] = upt[i];
        inner += phi(upt) * h(zpt) / fn.f_value * fn.dz_dpsi;
      }
      inner *= 2.0 * kPi / n_fiber;
      acc += sign * inner * du[base_var] * (orient * cycle.weights[k]);
    }
    return acc / kTwoPiI;
  };

  TubeResult res;
  double t = sched.base;
  std::optional<Cx> prev;
  for (int stage = 0; stage <= sched.halvings; ++stage, t *= 0.5) {
    Cx v = tube_quadrature([&](int n) { return pass(t, n); }, 0.1 * sched.tolerance);
    res.stages_used = stage + 1;
    if (prev && std::abs(v - *prev) <= sched.tolerance * std::max(1.0, std::abs(v))) {
      res.value = v;
      res.status = RowStatus::ok;
      return res;
    }
    prev = v;
  }
  res.value = *prev;
  res.status = RowStatus::not_stabilized;
  return res;
}

Cx grothendieck_residue(const std::vector<Polynomial>& denominators,
                        const Polynomial& numerator, const CxVec& center) {
  const int m = static_cast<int>(denominators.size());
  if (m < 1 || m > 2)
    throw Error(Errc::unsupported_basis, "grothendieck_residue: m must be 1 or 2");
  for (const Polynomial& f : denominators)
    if (f.nvars() != m)
      throw Error(Errc::dimension_mismatch, "grothendieck_residue: nvars != m");

  if (m == 1) {
    CxVec sh{center[0]};
    Polynomial f0 = denominators[0].translated(sh);
    Polynomial h0 = numerator.translated(sh);
    int order = f0.degree() + h0.degree() + 4;
    Taylor1 f(order), h(order);
    for (const auto& [idx, c] : f0.terms()) f.at(idx.exponents[0]) = c;
    for (const auto& [idx, c] : h0.terms()) h.at(idx.exponents[0]) = c;
    double scale = std::max(1.0, f0.coeff_scale());
    int nu = f.valuation(1e-13 * scale);
    if (nu == 0 || nu > order)
      throw Error(Errc::unsupported_basis,
                  "grothendieck_residue: denominator not vanishing at center");
    Taylor1 unit(order);
    for (int k = 0; k + nu <= order; ++k) unit.at(k) = f.coeff(k + nu);
    return (h * unit.inverse()).coeff(nu - 1);
  }

  // m == 2: shear into monomial form variable by variable.
  int order = 4;
  for (const Polynomial& f : denominators) order += f.degree() + 1;
  order += numerator.degree() >= 0 ? numerator.degree() : 0;
  order = std::clamp(order, 8, 24);

  Polynomial f0 = denominators[0].translated(center);
  Polynomial f1 = denominators[1].translated(center);
  Polynomial h0 = numerator.translated(center);
  double scale = std::max({1.0, f0.coeff_scale(), f1.coeff_scale()});

  Series2 fa = to_series(f0, order);
  Series2 fb = to_series(f1, order);
  Series2 hs = to_series(h0, order);

  for (int perm = 0; perm < 2; ++perm) {
    Series2 fx = perm == 0 ? fa : fb;  // wants monomial in x
    Series2 fy = perm == 0 ? fb : fa;  // wants monomial in y

    Series2 gx = fx, gy = fy, gh = hs;
    // Stage 1: monomial form in x, directly or after a shear x -> x + g(y).
    std::optional<MonoForm> mx = monomial_form(gx, 0, order, scale);
    if (!mx) {
      std::optional<Series2> root = hensel_root_x(gx, order, scale);
      if (!root) continue;
      Series2 xg = Series2::variable(0, order) + *root;
      gx = gx.substitute_x(xg);
      gy = gy.substitute_x(xg);
      gh = gh.substitute_x(xg);
      mx = monomial_form(gx, 0, order, scale);
      if (!mx) continue;
    }
    // Stage 2: monomial form in y; a shear y -> y + g(x) keeps stage 1 intact.
    std::optional<MonoForm> my = monomial_form(gy, 1, order, scale);
    if (!my) {
      Series2 swapped = swap_vars(gy, order);
      std::optional<Series2> root = hensel_root_x(swapped, order, scale);
      if (!root) continue;
      Series2 yg = Series2::variable(1, order) + swap_vars(*root, order);
      gy = gy.substitute_y(yg);
      gh = gh.substitute_y(yg);
      Series2 unit_x = mx->unit.substitute_y(yg);
      mx->unit = unit_x;
      my = monomial_form(gy, 1, order, scale);
      if (!my) continue;
    }
    Series2 res = gh * mx->unit.inverse() * my->unit.inverse();
    return res.coeff(mx->power - 1, my->power - 1);
  }
  throw Error(Errc::unsupported_basis,
              "grothendieck_residue: basis outside triangular/monomial shapes");
}

Cx fibered_residue(const Polynomial& denominator,
                   const std::function<Cx(std::span<const Cx>)>& numerator,
                   const Cycle& base_cycle, int fiber_var, double fiber_region) {
  if (denominator.nvars() != 2)
    throw Error(Errc::dimension_mismatch, "fibered_residue: need two variables");
  if (fiber_var != 0 && fiber_var != 1)
    throw Error(Errc::invalid_input, "fibered_residue: fiber_var must be 0 or 1");
  const int base_var = 1 - fiber_var;
  Polynomial df = denominator.derivative(fiber_var);
  const double orient = base_cycle.orientation > 0 ? 1.0 : -1.0;

  Cx acc{};
  int expected_count = -1;
  for (size_t k = 0; k < base_cycle.segment_count(); ++k) {
    CxVec pt(2, Cx{});
    pt[base_var] = base_cycle.nodes[k];
    CxVec uni = denominator.restrict_to_variable(fiber_var, pt);
    std::vector<Cx> roots = polynomial_roots(uni);
    std::vector<Cx> inside;
    for (const Cx& r : roots)
      if (std::abs(r) <= fiber_region) inside.push_back(r);
    if (expected_count < 0) expected_count = static_cast<int>(inside.size());
    if (static_cast<int>(inside.size()) != expected_count)
      throw Error(Errc::fiber_degenerate,
                  "fibered_residue: fiber count changes along the cycle");
    for (size_t i = 0; i < inside.size(); ++i)
      for (size_t j = i + 1; j < inside.size(); ++j)
        if (std::abs(inside[i] - inside[j]) < 1e-6)
          throw Error(Errc::fiber_degenerate,
                      "fibered_residue: branch point on or near the base cycle; perturb the cycle or fail");
    Cx fiber_sum{};
    for (const Cx& r : inside) {
      pt[fiber_var] = r;
      Cx d = df.eval(pt);
      if (std::abs(d) < 1e-10)
        throw Error(Errc::fiber_degenerate,
                    "fibered_residue: vanishing fiber derivative");
      fiber_sum += numerator(pt) / d;
    }
    acc += fiber_sum * (orient * base_cycle.weights[k]);
  }
  return acc / kTwoPiI;
}

std::function<Cx(Cx)> leray_residue_density(const VarietySpec& variety,
                                            const ResidualForm& form,
                                            const Cycle& cycle) {
  if (form.kind == ResidualForm::Kind::leray_density) return form.leray;
  CurveData cd = make_curve_data(variety);

  // Reject cycles that graze a singular point of the curve.
  for (size_t k = 0; k < cycle.segment_count(); ++k) {
    CxVec u = cd.curve.affine_point(cycle.nodes[k]);
    double g1 = std::abs(cd.df_du1.eval(u));
    double g2 = std::abs(cd.df_du2.eval(u));
    if (std::max(g1, g2) < 1e-8 * cd.scale)
      throw Error(Errc::singular_point,
                  "leray density: cycle passes through a singular point");
  }

  auto phi = form.affine_numerator;
  CurveData data = cd;
  return [phi, data](Cx s) -> Cx {
    CxVec u = data.curve.affine_point(s);
    CxVec du = data.curve.affine_velocity(s);
    Cx g1 = data.df_du1.eval(u);
    Cx g2 = data.df_du2.eval(u);
    // sigma ^ dF = du1 ^ du2:  sigma = phi du1 / (dF/du2) = -phi du2 / (dF/du1).
    if (std::abs(g2) >= std::abs(g1)) return phi(u) * du[0] / g2;
    return -phi(u) * du[1] / g1;
  };
}

Cx residue_pairing(const VarietySpec& variety, const ResidualForm& form,
                   const std::function<Cx(std::span<const Cx>)>& h,
                   const Cycle& cycle) {
  if (!variety.param)
    throw Error(Errc::invalid_input, "residue_pairing: needs a parametrization");
  std::function<Cx(Cx)> j = leray_residue_density(variety, form, cycle);
  const MonomialCurve& curve = *variety.param;
  const double orient = cycle.orientation > 0 ? 1.0 : -1.0;

  Cx acc{};
  for (size_t k = 0; k < cycle.segment_count(); ++k) {
    Cx s = cycle.nodes[k];
    Cx jv = j(s);
    if (!std::isfinite(jv.real()) || !std::isfinite(jv.imag()) ||
        std::abs(jv) > 1e14)
      throw Error(Errc::pole_on_cycle, "residue_pairing: density pole on cycle");
    CxVec z = curve.point(s);
    acc += h(z) * jv * (orient * cycle.weights[k]);
  }
  return acc / kTwoPiI;
}

TransformationLawReport transformation_law_check(
    const std::vector<Polynomial>& p_basis,
    const std::vector<std::vector<Polynomial>>& a_matrix,
    const Polynomial& numerator, const CxVec& center, double region_radius,
    const AdmissibleSchedule& sched) {
  const int m = static_cast<int>(p_basis.size());
  if (m != 2)
    throw Error(Errc::unsupported_basis, "transformation_law_check: m = 2 only");
  if (static_cast<int>(a_matrix.size()) != m)
    throw Error(Errc::dimension_mismatch, "transformation_law_check: A shape");

  // F = A P and det A.
  std::vector<Polynomial> f_basis(m, Polynomial(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      f_basis[i] = f_basis[i] + a_matrix[i][j] * p_basis[j];
  Polynomial det =
      a_matrix[0][0] * a_matrix[1][1] - a_matrix[0][1] * a_matrix[1][0];

  // det A must not vanish on the region: sample the center and a ring.
  double dscale = std::max(1.0, det.coeff_scale());
  if (std::abs(det.eval(center)) < 1e-8 * dscale)
    throw Error(Errc::invalid_input,
                "transformation_law_check: det A vanishes at the center");
  for (int k = 0; k < 17; ++k) {
    double ang = 2.0 * kPi * k / 17.0;
    CxVec z = center;
    z[0] += 0.9 * region_radius * Cx(std::cos(ang), std::sin(ang));
    z[1] += 0.9 * region_radius * Cx(std::sin(1.7 * ang), std::cos(1.3 * ang));
    if (std::abs(det.eval(z)) < 1e-8 * dscale)
      throw Error(Errc::invalid_input,
                  "transformation_law_check: det A vanishes on region");
  }

  TransformationLawReport rep;
  rep.lhs = grothendieck_residue(p_basis, numerator, center);
  LocalTube tube{f_basis, det * numerator, center, region_radius};
  rep.rhs = tube_integral(tube, sched).value;
  double scale = std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1e-30});
  rep.discrepancy = std::abs(rep.lhs - rep.rhs) / scale;
  return rep;
}

}  // namespace corad
