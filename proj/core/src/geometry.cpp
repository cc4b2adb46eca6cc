#include "corad/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "corad/numeric.hpp"

namespace corad {

namespace {

double affine_norm(std::span<const Cx> z) {
  double s = 0.0;
  for (size_t k = 1; k < z.size(); ++k) s += std::norm(z[k] / z[0]);
  return std::sqrt(s);
}

}  // namespace

Region contains(const BallComplementDomain& dom, std::span<const Cx> z) {
  if (static_cast<int>(z.size()) != dom.n + 1)
    throw Error(Errc::dimension_mismatch, "contains: point dimension");
  double zn = 0.0;
  for (const Cx& c : z) zn = std::max(zn, std::abs(c));
  if (zn == 0.0) throw Error(Errc::invalid_input, "contains: zero vector");
  if (std::abs(z[0]) < 1e-14 * zn) return Region::in_domain;  // at infinity
  double r = affine_norm(z);
  double R = dom.effective_radius();
  if (std::abs(r - R) < 1e-12 * std::max(1.0, R)) return Region::on_boundary;
  return r > R ? Region::in_domain : Region::in_compact;
}

bool dual_contains(const BallComplementDomain& dom, std::span<const Cx> xi) {
  if (static_cast<int>(xi.size()) != dom.n + 1)
    throw Error(Errc::dimension_mismatch, "dual_contains: point dimension");
  double tail = 0.0;
  for (size_t k = 1; k < xi.size(); ++k) tail += std::norm(xi[k]);
  return std::abs(xi[0]) > dom.effective_radius() * std::sqrt(tail);
}

CxVec eta_map(const BallComplementDomain& dom, std::span<const Cx> z) {
  Region where = contains(dom, z);
  if (where != Region::in_domain)
    throw Error(Errc::point_in_compact, "eta_map: point not in D");
  CxVec eta(z.size(), Cx{});
  double zn = 0.0;
  for (const Cx& c : z) zn = std::max(zn, std::abs(c));
  if (std::abs(z[0]) < 1e-14 * zn) {
    // The hyperplane at infinity passes through every point with z0 = 0 and
    // lies in D, so it serves as the section there.
    eta[0] = 1.0;
    return eta;
  }
  double u2 = 0.0;
  for (size_t k = 1; k < z.size(); ++k) {
    Cx uk = z[k] / z[0];
    eta[k] = std::conj(uk);
    u2 += std::norm(uk);
  }
  eta[0] = -u2;
  return eta;
}

BallComplementDomain exhaust(const BallComplementDomain& dom, double delta) {
  if (!(delta > 0)) throw Error(Errc::invalid_input, "exhaust: delta <= 0");
  BallComplementDomain d = dom;
  d.delta = dom.delta + delta;
  return d;
}

CxVec MonomialCurve::point(Cx s) const {
  CxVec z(powers.size());
  for (size_t k = 0; k < powers.size(); ++k) {
    Cx v = 1.0;
    for (int e = 0; e < powers[k]; ++e) v *= s;
    z[k] = v;
  }
  return z;
}

CxVec MonomialCurve::affine_point(Cx s) const {
  CxVec u(powers.size() - 1);
  for (size_t k = 1; k < powers.size(); ++k) {
    Cx v = 1.0;
    for (int e = 0; e < powers[k]; ++e) v *= s;
    u[k - 1] = v;
  }
  return u;
}

CxVec MonomialCurve::affine_velocity(Cx s) const {
  CxVec du(powers.size() - 1);
  for (size_t k = 1; k < powers.size(); ++k) {
    int p = powers[k];
    if (p == 0) {
      du[k - 1] = 0.0;
      continue;
    }
    Cx v = double(p);
    for (int e = 0; e < p - 1; ++e) v *= s;
    du[k - 1] = v;
  }
  return du;
}

double MonomialCurve::affine_norm2(double rho) const {
  double s = 0.0;
  for (size_t k = 1; k < powers.size(); ++k) s += std::pow(rho, 2 * powers[k]);
  return s;
}

Cx contour_integral(const Cycle& cycle, const std::function<Cx(Cx)>& f) {
  Cx acc{};
  for (size_t k = 0; k < cycle.segment_count(); ++k)
    acc += f(cycle.nodes[k]) * cycle.weights[k];
  return acc;
}

std::optional<double> cycle_radius(const BallComplementDomain& dom,
                                   const MonomialCurve& curve, double delta) {
  if (curve.powers.empty() || curve.powers[0] != 0)
    throw Error(Errc::unsupported_geometry, "cycle_radius: need p0 = 0 chart");
  bool varying = false;
  for (int p : curve.powers)
    if (p > 0) varying = true;
  if (!varying)
    throw Error(Errc::unsupported_geometry, "cycle_radius: constant curve");

  double target = dom.effective_radius() + delta;
  auto radial = [&](double rho) { return std::sqrt(curve.affine_norm2(rho)); };
  return bisect_increasing(radial, target, 0.0, std::min(1.0, curve.s_bound),
                           curve.s_bound, 1e-13);
}

Cycle boundary_cycle(const BallComplementDomain& dom, const MonomialCurve& curve,
                     double delta, int resolution) {
  if (resolution < 64)
    throw Error(Errc::invalid_input, "boundary_cycle: resolution < 64");
  std::optional<double> rho = cycle_radius(dom, curve, delta);
  if (!rho)
    throw Error(Errc::empty_cycle,
                "boundary_cycle: variety misses the boundary sphere in range");

  // |u(s)| depends only on |s| for monomial curves and increases strictly in
  // |s|, so the level set is the circle |s| = rho. Traverse it clockwise: the
  // boundary orientation of the exterior region in the s-chart.
  Cycle c;
  c.orientation = -1;
  c.nodes.resize(resolution + 1);
  c.weights.resize(resolution);
  for (int k = 0; k <= resolution; ++k) {
    double ang = -2.0 * kPi * k / resolution;
    c.nodes[k] = *rho * Cx(std::cos(ang), std::sin(ang));
  }
  c.nodes[resolution] = c.nodes[0];
  for (int k = 0; k < resolution; ++k) {
    // s(t) = rho e^{-it}; ds = -i s dt with dt = 2 pi / M.
    c.weights[k] = Cx(0.0, -1.0) * c.nodes[k] * (2.0 * kPi / resolution);
  }
  return c;
}

}  // namespace corad
