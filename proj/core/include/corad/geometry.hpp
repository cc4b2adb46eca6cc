#pragma once

// Model linearly concave domains: complements of affine balls in projective
// space, their dual domains, the tangent-hyperplane section map, analytic
// exhaustion, and discretized boundary cycles on parametrized curves.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "corad/types.hpp"

namespace corad {

enum class Region { in_domain, in_compact, on_boundary };

/// Complement of the closed ball |u| <= r in the affine chart z0 = 1.
/// The exhausted member D_delta is the complement of the radius r + delta ball.
struct BallComplementDomain {
  int n = 2;           // ambient projective dimension
  double radius = 1.0;
  double delta = 0.0;

  double effective_radius() const { return radius + delta; }
};

/// Classify a projective point against the compact G = {|u| <= r + delta}.
/// Points on the hyperplane at infinity (z0 = 0) always classify as in D.
Region contains(const BallComplementDomain& dom, std::span<const Cx> z);

/// True iff the hyperplane <xi . z> = 0 misses G, i.e. the point belongs to
/// the dual domain D*: |xi_0| > (r + delta) * ||(xi_1..xi_n)||_2.
bool dual_contains(const BallComplementDomain& dom, std::span<const Cx> xi);

/// The tangent-hyperplane family eta: D -> D*, eta(z) = (-|u|^2, conj(u)) for
/// affine z and the hyperplane at infinity for z0 = 0. Satisfies
/// <eta(z) . z> = 0 exactly. Throws when z lies in G.
CxVec eta_map(const BallComplementDomain& dom, std::span<const Cx> z);

/// The exhausted domain D_delta (ball complement of radius r + delta).
BallComplementDomain exhaust(const BallComplementDomain& dom, double delta);

/// Monomial rational curve s -> (s^{p_0}, ..., s^{p_n}) with p_0 = 0, so the
/// affine part is u_k(s) = s^{p_k}. Covers the fixture conic (0,1,2) and the
/// cuspidal cubic (0,2,3).
struct MonomialCurve {
  std::vector<int> powers;
  double s_bound = 1e6;  // parametrization domain |s| <= s_bound

  int ambient_n() const { return static_cast<int>(powers.size()) - 1; }
  CxVec point(Cx s) const;           // homogeneous coordinates, z0 = 1
  CxVec affine_point(Cx s) const;    // (u_1, ..., u_n)
  CxVec affine_velocity(Cx s) const; // d u / d s
  double affine_norm2(double rho) const;  // |u(s)|^2 on |s| = rho
};

/// Discretized closed contour in the curve parameter s. Nodes traverse the
/// contour in storage order with nodes.front() == nodes.back(); weights are
/// the trapezoidal ds increments for the first M nodes. orientation is +1
/// when the traversal is positive around the G-side region (counterclockwise
/// in s) and -1 for the boundary-of-exterior orientation.
struct Cycle {
  std::vector<Cx> nodes;
  std::vector<Cx> weights;
  int orientation = -1;
  bool closed = true;

  size_t segment_count() const { return weights.size(); }
};

/// Integral of f over the cycle in its stored orientation.
Cx contour_integral(const Cycle& cycle, const std::function<Cx(Cx)>& f);

/// The contour {s : |u(s)| = r + delta} = {|s| = rho_delta}, discretized at
/// `resolution` equispaced angles and oriented as the boundary of the
/// exterior region V \cap D_delta (clockwise in s, orientation = -1).
/// Throws empty_cycle when the level set misses the parametrization domain
/// and unsupported_geometry when |u(s)| fails to be radially monotone.
Cycle boundary_cycle(const BallComplementDomain& dom, const MonomialCurve& curve,
                     double delta, int resolution);

/// Root radius rho_delta of |u(s)| = r + delta (exposed for tests).
std::optional<double> cycle_radius(const BallComplementDomain& dom,
                                   const MonomialCurve& curve, double delta);

}  // namespace corad
