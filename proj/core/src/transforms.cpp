#include "corad/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "corad/numeric.hpp"

namespace corad {

namespace {

CxVec normalize_chart(std::span<const Cx> xi) {
  if (xi.empty() || xi[0] == Cx{})
    throw Error(Errc::invalid_input, "dual point with xi0 = 0");
  CxVec w(xi.size() - 1);
  for (size_t j = 1; j < xi.size(); ++j) w[j - 1] = xi[j] / xi[0];
  return w;
}

}  // namespace

Cx Covector1Form::euler_contraction() const {
  Cx s{};
  for (size_t j = 0; j < xi.size(); ++j) s += xi[j] * components[j];
  return s;
}

Cx euler_contraction(const Covector1Form& f) { return f.euler_contraction(); }

// ---------------------------------------------------------------------------
// CurveTransform
// ---------------------------------------------------------------------------

CurveTransform::CurveTransform(BallComplementDomain dom, VarietySpec variety,
                               ResidualForm form, double delta,
                               TransformSettings settings)
    : dom_(dom),
      variety_(std::move(variety)),
      form_(std::move(form)),
      delta_(delta),
      settings_(settings) {
  variety_.validate();
  if (!variety_.param)
    throw Error(Errc::invalid_input, "CurveTransform: variety needs a param");
  if (variety_.codimension() != 1)
    throw Error(Errc::invalid_input, "CurveTransform: m = 1 pipeline");
  cycle_ = boundary_cycle(dom_, *variety_.param, delta_, settings_.cycle_resolution);
  rho_ = std::abs(cycle_.nodes[0]);
  density_ = leray_residue_density(variety_, form_, cycle_);
  density_values_.resize(cycle_.segment_count());
  curve_points_.resize(cycle_.segment_count());
  for (size_t k = 0; k < cycle_.segment_count(); ++k) {
    density_values_[k] = density_(cycle_.nodes[k]);
    const Cx& jv = density_values_[k];
    if (!std::isfinite(jv.real()) || !std::isfinite(jv.imag()))
      throw Error(Errc::pole_on_cycle, "CurveTransform: density pole on cycle");
    curve_points_[k] = variety_.param->point(cycle_.nodes[k]);
  }
}

CxVec CurveTransform::kernel_coefficients(std::span<const Cx> xi) const {
  const std::vector<int>& powers = variety_.param->powers;
  int maxp = 0;
  for (int p : powers) maxp = std::max(maxp, p);
  CxVec coeffs(maxp + 1, Cx{});
  for (size_t j = 0; j < powers.size(); ++j) coeffs[powers[j]] += xi[j];
  return coeffs;
}

CurveTransform::Incidence CurveTransform::incidence(std::span<const Cx> xi) const {
  Incidence inc;
  inc.roots = polynomial_roots(kernel_coefficients(xi));
  for (const Cx& r : inc.roots) {
    // Signed clearance: kernel roots must stay outside the cycle, otherwise
    // the boundary formula no longer realizes the functional.
    double clr = (std::abs(r) - rho_) / rho_;
    inc.min_clearance = std::min(inc.min_clearance, clr);
  }
  for (size_t i = 0; i < inc.roots.size(); ++i)
    for (size_t j = i + 1; j < inc.roots.size(); ++j) {
      double sep = std::abs(inc.roots[i] - inc.roots[j]) /
                   (1.0 + std::abs(inc.roots[i]) + std::abs(inc.roots[j]));
      inc.min_separation = std::min(inc.min_separation, sep);
    }
  inc.near_cycle =
      !inc.roots.empty() && inc.min_clearance < settings_.near_incidence_tol;
  inc.degenerate_section =
      inc.roots.size() >= 2 &&
      inc.min_separation * inc.min_separation < settings_.discriminant_tol;
  return inc;
}

CurveTransform::Evaluation CurveTransform::fantappie(std::span<const Cx> xi) const {
  if (static_cast<int>(xi.size()) != dom_.n + 1)
    throw Error(Errc::dimension_mismatch, "fantappie: xi dimension");
  if (!dual_contains(dom_, xi))
    throw Error(Errc::invalid_input, "fantappie: xi outside D*");
  Evaluation ev;
  ev.form.xi.assign(xi.begin(), xi.end());
  ev.form.components.assign(xi.size(), Cx{});
  Incidence inc = incidence(xi);
  if (!inc.ok()) {
    ev.status = RowStatus::skipped_near_incidence;
    return ev;
  }
  const double orient = cycle_.orientation > 0 ? 1.0 : -1.0;
  for (size_t k = 0; k < cycle_.segment_count(); ++k) {
    const CxVec& z = curve_points_[k];
    Cx denom = corad::pairing(xi, z);
    Cx common = density_values_[k] * (orient * cycle_.weights[k]) / denom;
    for (size_t j = 0; j < xi.size(); ++j)
      ev.form.components[j] += z[j] * common;
  }
  return ev;
}

CurveTransform::Evaluation CurveTransform::radon(std::span<const Cx> xi) const {
  Evaluation ev = fantappie(xi);
  if (ev.status != RowStatus::ok) return ev;
  const int m = variety_.codimension();
  Cx scale = 1.0;
  for (int k = 0; k < m + 1; ++k) scale /= kTwoPiI;
  for (Cx& c : ev.form.components) c *= scale;
  return ev;
}

Cx CurveTransform::pairing(const std::function<Cx(std::span<const Cx>)>& h) const {
  return residue_pairing(variety_, form_, h, cycle_);
}

RowStatus CurveTransform::potential_status(std::span<const Cx> xi) const {
  CxVec w = normalize_chart(xi);
  // Endpoint clearance in the |u| level guarantees clearance along the whole
  // straight chart path: a kernel root of xi(t) = (1, t w) sits on a
  // hyperplane at affine distance >= 1 / (t |w|) >= 1 / |w| from the origin.
  double wn = norm2(w);
  if (wn * (dom_.effective_radius() + delta_) >= 1.0 - settings_.path_margin)
    return RowStatus::skipped_near_incidence;
  return incidence(xi).ok() ? RowStatus::ok : RowStatus::skipped_near_incidence;
}

Cx CurveTransform::potential(std::span<const Cx> xi) const {
  CxVec w = normalize_chart(xi);
  // Closed form of the segment integral from (1, 0, ..., 0): the t-integral
  // of the kernel collapses to a principal logarithm per cycle node, valid
  // because no kernel root crosses the cycle along the path (see
  // potential_status).
  const double orient = cycle_.orientation > 0 ? 1.0 : -1.0;
  Cx acc{};
  for (size_t k = 0; k < cycle_.segment_count(); ++k) {
    const CxVec& z = curve_points_[k];
    Cx b{};
    for (size_t j = 1; j < z.size(); ++j) b += w[j - 1] * z[j];
    b /= z[0];
    acc += density_values_[k] * (orient * cycle_.weights[k]) * std::log(1.0 + b);
  }
  const int m = variety_.codimension();
  Cx scale = 1.0;
  for (int k = 0; k < m + 1; ++k) scale /= kTwoPiI;
  return acc * scale;
}

// ---------------------------------------------------------------------------
// PointMassFunctional
// ---------------------------------------------------------------------------

PointMassFunctional::PointMassFunctional(BallComplementDomain dom, CxVec u_star) {
  z_.assign(dom.n + 1, Cx{});
  z_[0] = 1.0;
  if (static_cast<int>(u_star.size()) != dom.n)
    throw Error(Errc::dimension_mismatch, "point mass: u* dimension");
  for (int j = 0; j < dom.n; ++j) z_[j + 1] = u_star[j];
  if (contains(dom, z_) != Region::in_compact)
    throw Error(Errc::invalid_input, "point mass: z* must lie inside G");
}

Cx PointMassFunctional::apply(const std::function<Cx(std::span<const Cx>)>& h) const {
  return h(z_);
}

Covector1Form PointMassFunctional::fantappie(std::span<const Cx> xi) const {
  Covector1Form f;
  f.xi.assign(xi.begin(), xi.end());
  Cx denom = corad::pairing(xi, z_);
  if (std::abs(denom) < 1e-140)
    throw Error(Errc::kernel_pole, "point mass: <xi . z*> = 0");
  f.components.resize(xi.size());
  for (size_t j = 0; j < xi.size(); ++j) f.components[j] = z_[j] / denom;
  return f;
}

Cx PointMassFunctional::potential(std::span<const Cx> xi) const {
  Cx denom = corad::pairing(xi, z_);
  if (std::abs(denom) < 1e-140)
    throw Error(Errc::kernel_pole, "point mass: <xi . z*> = 0");
  // Branch matching the chart path integral from (1, 0, ..., 0): principal
  // log of the chart kernel plus the principal log of xi0.
  return std::log(denom / xi[0]) + std::log(xi[0]);
}

// ---------------------------------------------------------------------------
// MartineauFunctional
// ---------------------------------------------------------------------------

MartineauFunctional::MartineauFunctional(
    std::function<Cx(std::span<const Cx>)> g,
    std::function<Cx(std::span<const Cx>)> dng_dxi0, BallComplementDomain dom,
    double nu, int grid)
    : g_(std::move(g)), dng_(std::move(dng_dxi0)), dom_(dom), grid_(grid) {
  if (dom_.n != 2)
    throw Error(Errc::unsupported_geometry, "martineau: n = 2 quadrature only");
  if (!(nu > 0)) throw Error(Errc::invalid_input, "martineau: nu <= 0");
  if (grid_ < 8) throw Error(Errc::invalid_input, "martineau: grid too small");
  a_ = dom_.effective_radius() + nu;

  // Reject inputs that are not homogeneity-0 on D*.
  const double q = 0.5 / a_;
  std::vector<CxVec> probes = {
      {Cx(1.0, 0.0), q * Cx(0.62, 0.10), q * Cx(-0.40, 0.22)},
      {Cx(0.9, 0.2), q * Cx(0.24, -0.42), q * Cx(0.50, 0.0)},
  };
  std::optional<int> w = homogeneity_of(g_, probes, 1e-7);
  if (!w || *w != 0)
    throw Error(Errc::not_homogeneous, "martineau: g must have homogeneity 0");

  coarse_ = build_grid(grid_, grid_);
  fine_ = build_grid(2 * grid_, 2 * grid_);
}

MartineauFunctional::Grid MartineauFunctional::build_grid(int n_theta,
                                                          int n_ang) const {
  // Hopf-style product grid |u1| = a cos(theta), |u2| = a sin(theta) with the
  // substitution x = cos(2 theta): the polar measure 2 a^4 cos sin d theta
  // collapses to (a^4 / 2) dx and Gauss-Legendre applies in x.
  const GaussLegendre& gl = gauss_legendre(n_theta);
  Grid grid;
  grid.u.reserve(static_cast<size_t>(n_theta) * n_ang * n_ang);
  grid.weight.reserve(grid.u.capacity());

  const double dang = 2.0 * kPi / n_ang;
  const Cx measure_scale =
      (a_ * a_ * a_ * a_ / 2.0) * dang * dang / (kTwoPiI * kTwoPiI);

  const double eta0 = -a_ * a_;
  const double stencil_radius =
      std::min(0.1 * a_ * a_, 0.8 * (a_ * a_ - dom_.effective_radius() * a_));

  for (int it = 0; it < n_theta; ++it) {
    double x = gl.nodes[it];
    double c = std::sqrt(0.5 * (1.0 + x));
    double s = std::sqrt(0.5 * (1.0 - x));
    for (int ia = 0; ia < n_ang; ++ia) {
      double alpha = dang * ia;
      Cx u1 = a_ * c * Cx(std::cos(alpha), std::sin(alpha));
      for (int ib = 0; ib < n_ang; ++ib) {
        double beta = dang * ib;
        Cx u2 = a_ * s * Cx(std::cos(beta), std::sin(beta));
        CxVec eta{Cx(eta0, 0.0), std::conj(u1), std::conj(u2)};
        Cx kernel;
        if (dng_) {
          kernel = dng_(eta);
        } else {
          DiscStencil st = DiscStencil::sample(
              [&](std::span<const Cx> p) {
                CxVec full{p[0], eta[1], eta[2]};
                return g_(full);
              },
              {eta[0]}, {stencil_radius}, 16);
          kernel = cauchy_derivative(st, MultiIndex{{dom_.n}});
        }
        grid.u.push_back({u1, u2});
        grid.weight.push_back(measure_scale * gl.weights[it] * kernel);
      }
    }
  }
  return grid;
}

MartineauFunctional::Result MartineauFunctional::apply(
    const std::function<Cx(std::span<const Cx>)>& h) const {
  auto run = [&](const Grid& grid) {
    Cx acc{};
    CxVec z(3);
    z[0] = 1.0;
    for (size_t k = 0; k < grid.u.size(); ++k) {
      z[1] = grid.u[k][0];
      z[2] = grid.u[k][1];
      acc += grid.weight[k] * h(z);
    }
    return acc;
  };
  Result r;
  Cx coarse = run(coarse_);
  r.value = run(fine_);
  r.refinement_delta = std::abs(r.value - coarse);
  if (r.refinement_delta > agree_tol_ * std::max(1.0, std::abs(r.value)))
    r.status = RowStatus::not_stabilized;
  return r;
}

MartineauFunctional::FormResult MartineauFunctional::fantappie(
    std::span<const Cx> xi) const {
  auto run = [&](const Grid& grid, CxVec& out) {
    out.assign(3, Cx{});
    CxVec z(3);
    z[0] = 1.0;
    for (size_t k = 0; k < grid.u.size(); ++k) {
      z[1] = grid.u[k][0];
      z[2] = grid.u[k][1];
      Cx denom = xi[0] * z[0] + xi[1] * z[1] + xi[2] * z[2];
      if (std::abs(denom) < 1e-12)
        throw Error(Errc::kernel_pole, "martineau fantappie: kernel pole on bG");
      Cx common = grid.weight[k] / denom;
      out[0] += common;
      out[1] += z[1] * common;
      out[2] += z[2] * common;
    }
  };
  FormResult r;
  r.form.xi.assign(xi.begin(), xi.end());
  CxVec coarse;
  run(coarse_, coarse);
  run(fine_, r.form.components);
  double delta = 0.0, scale = 0.0;
  for (int j = 0; j < 3; ++j) {
    delta = std::max(delta, std::abs(r.form.components[j] - coarse[j]));
    scale = std::max(scale, std::abs(r.form.components[j]));
  }
  r.refinement_delta = delta;
  if (delta > agree_tol_ * std::max(1.0, scale)) r.status = RowStatus::not_stabilized;
  return r;
}

// ---------------------------------------------------------------------------
// Potentials and PDE verification
// ---------------------------------------------------------------------------

Cx fantappie_potential(
    const std::function<Covector1Form(std::span<const Cx>)>& form_at,
    const std::vector<CxVec>& polyline, const BallComplementDomain& dom,
    const TransformSettings& settings) {
  if (polyline.size() < 2)
    throw Error(Errc::invalid_input, "potential: need at least two path points");
  const GaussLegendre& gl = gauss_legendre(settings.path_nodes);
  Cx acc{};
  for (size_t seg = 0; seg + 1 < polyline.size(); ++seg) {
    const CxVec& a = polyline[seg];
    const CxVec& b = polyline[seg + 1];
    if (a.size() != b.size())
      throw Error(Errc::dimension_mismatch, "potential: path point sizes");
    CxVec d(a.size());
    for (size_t j = 0; j < a.size(); ++j) d[j] = b[j] - a[j];
    for (int q = 0; q < settings.path_nodes; ++q) {
      double t = 0.5 * (gl.nodes[q] + 1.0);
      double wt = 0.5 * gl.weights[q];
      CxVec xi(a.size());
      for (size_t j = 0; j < a.size(); ++j) xi[j] = a[j] + t * d[j];
      if (!dual_contains(dom, xi))
        throw Error(Errc::path_leaves_dual, "potential: path leaves D*");
      Covector1Form f = form_at(xi);
      Cx ds{};
      for (size_t j = 0; j < a.size(); ++j) ds += f.components[j] * d[j];
      acc += wt * ds;
    }
  }
  return acc;
}

SystemResidual verify_system_at(const std::function<Cx(std::span<const Cx>)>& g,
                                const std::vector<HomPoly>& system,
                                std::span<const Cx> xi,
                                const BallComplementDomain& dom,
                                double stencil_radius, int stencil_nodes) {
  SystemResidual out;
  CxVec center(xi.begin(), xi.end());
  const int nv = static_cast<int>(center.size());

  double radius = stencil_radius;
  std::optional<DiscStencil> stencil;
  for (int attempt = 0; attempt < 4; ++attempt) {
    DiscStencil candidate(center, std::vector<double>(nv, radius), stencil_nodes);
    bool inside = true;
    for (size_t flat = 0; flat < candidate.node_count() && inside; ++flat)
      inside = dual_contains(dom, candidate.node(flat));
    if (inside) {
      stencil = DiscStencil::sample(g, center, std::vector<double>(nv, radius),
                                    stencil_nodes);
      break;
    }
    radius *= 0.5;  // shrink-or-skip
  }
  if (!stencil) {
    out.status = RowStatus::skipped_near_incidence;
    return out;
  }

  double sample_mag = 0.0;
  for (const Cx& v : stencil->values())
    sample_mag = std::max(sample_mag, std::abs(v));

  out.residuals.reserve(system.size());
  out.scales.reserve(system.size());
  for (const HomPoly& p : system) {
    Cx res{};
    double term_scale = 0.0;
    for (const auto& [idx, c] : p.poly().terms()) {
      Cx term = c * cauchy_derivative(*stencil, idx);
      res += term;
      term_scale = std::max(term_scale, std::abs(term));
    }
    // When every monomial derivative vanishes identically the ratio would be
    // noise over noise; floor the scale at a small fraction of the largest
    // derivative the stencil data could hide (Cauchy estimate M / rho^d).
    double resolution =
        1e-7 * (sample_mag + 1e-30) / std::pow(radius, p.degree());
    double scale = std::max(term_scale, resolution);
    out.residuals.push_back(res);
    out.scales.push_back(scale);
    out.relative = std::max(out.relative, std::abs(res) / scale);
  }
  return out;
}

double closedness_defect(
    const std::function<Covector1Form(std::span<const Cx>)>& form_at,
    std::span<const Cx> xi, double radius, int nodes) {
  const int nv = static_cast<int>(xi.size());
  CxVec center(xi.begin(), xi.end());

  // d f_j / d xi_k for all pairs via one-variable stencils in xi_k.
  std::vector<CxVec> partial(nv, CxVec(nv, Cx{}));  // partial[k][j]
  for (int k = 0; k < nv; ++k) {
    double rk = radius > 0 ? radius : default_stencil_radius(center[k]);
    std::vector<DiscStencil> comp;
    comp.reserve(nv);
    for (int j = 0; j < nv; ++j)
      comp.emplace_back(CxVec{center[k]}, std::vector<double>{rk}, nodes);
    for (size_t flat = 0; flat < comp[0].node_count(); ++flat) {
      CxVec p = center;
      p[k] = comp[0].node(flat)[0];
      Covector1Form f = form_at(p);
      for (int j = 0; j < nv; ++j) comp[j].set_value(flat, f.components[j]);
    }
    for (int j = 0; j < nv; ++j)
      partial[k][j] = cauchy_derivative(comp[j], MultiIndex{{1}});
  }
  double defect = 0.0;
  for (int j = 0; j < nv; ++j)
    for (int k = j + 1; k < nv; ++k)
      defect = std::max(defect, std::abs(partial[k][j] - partial[j][k]));
  return defect;
}

}  // namespace corad
