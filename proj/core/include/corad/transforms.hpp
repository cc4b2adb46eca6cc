#pragma once

// The complex Radon transform of residual data on parametrized curves, the
// Fantappie transform of analytic functionals, Martineau inversion on the
// sphere, and the verification machinery for the induced constant-coefficient
// PDE systems on the dual domain.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "corad/geometry.hpp"
#include "corad/polyalg.hpp"
#include "corad/residues.hpp"
#include "corad/types.hpp"

namespace corad {

/// Value of a holomorphic 1-form sum f_j d xi_j at a point xi.
struct Covector1Form {
  CxVec xi;
  CxVec components;

  Cx euler_contraction() const;  // sum_j xi_j f_j
};

Cx euler_contraction(const Covector1Form& f);

struct TransformSettings {
  int cycle_resolution = 256;
  double near_incidence_tol = 1e-6;   // min | |root| - rho | / rho
  double discriminant_tol = 1e-10;    // normalized root-separation proxy
  double path_margin = 0.05;          // dual-chart clearance for potentials
  int path_nodes = 32;                // Gauss-Legendre nodes per segment
};

/// m = 1 transform pipeline for one fixture: domain, curve variety, residual
/// form, boundary cycle at a chosen delta. All Radon evaluations route
/// through the Leray density on the boundary cycle; raw tubes stay in the
/// residues module as the independent slow path.
class CurveTransform {
 public:
  CurveTransform(BallComplementDomain dom, VarietySpec variety,
                 ResidualForm form, double delta,
                 TransformSettings settings = {});

  struct Evaluation {
    Covector1Form form;
    RowStatus status = RowStatus::ok;
  };

  /// Kernel-hyperplane diagnostics at xi: roots of <xi . z(s)>, their
  /// clearance from the cycle, and a tangency proxy.
  struct Incidence {
    std::vector<Cx> roots;
    double min_clearance = 1e300;      // min | |root| - rho | / rho
    double min_separation = 1e300;     // normalized pairwise root distance
    bool near_cycle = false;
    bool degenerate_section = false;
    bool ok() const { return !near_cycle && !degenerate_section; }
  };
  Incidence incidence(std::span<const Cx> xi) const;

  /// R_V[phi](xi): components (2 pi i)^{-(m+1)} \oint z_j J / <xi . z> ds.
  Evaluation radon(std::span<const Cx> xi) const;

  /// F_V[mu^phi](xi) for the boundary-residue functional: the raw contour
  /// integral, equal to (2 pi i)^{m+1} times the Radon components.
  Evaluation fantappie(std::span<const Cx> xi) const;

  /// mu^phi(h) for a numerator holomorphic near the cycle.
  Cx pairing(const std::function<Cx(std::span<const Cx>)>& h) const;

  /// Potential g with dg = radon output and g(1, 0, ..., 0) = 0, evaluated
  /// through the closed-form logarithmic kernel on the cycle. Homogeneity-0
  /// in xi by construction.
  Cx potential(std::span<const Cx> xi) const;
  RowStatus potential_status(std::span<const Cx> xi) const;

  const Cycle& cycle() const { return cycle_; }
  double cycle_rho() const { return rho_; }
  const VarietySpec& variety() const { return variety_; }
  const BallComplementDomain& domain() const { return dom_; }
  double delta() const { return delta_; }

 private:
  CxVec kernel_coefficients(std::span<const Cx> xi) const;

  BallComplementDomain dom_;
  VarietySpec variety_;
  ResidualForm form_;
  double delta_;
  TransformSettings settings_;
  Cycle cycle_;
  double rho_ = 0.0;
  std::function<Cx(Cx)> density_;
  CxVec density_values_;   // J(s_k) cached on cycle nodes
  std::vector<CxVec> curve_points_;  // z(s_k)
};

/// Dirac functional at an interior point of the compact: mu(h) = h(z*).
class PointMassFunctional {
 public:
  PointMassFunctional(BallComplementDomain dom, CxVec u_star);

  Cx apply(const std::function<Cx(std::span<const Cx>)>& h) const;
  Covector1Form fantappie(std::span<const Cx> xi) const;
  /// Principal-branch potential g(xi) = log <xi . z*> (g at (1,0,...) is 0).
  Cx potential(std::span<const Cx> xi) const;
  const CxVec& z_star() const { return z_; }

 private:
  CxVec z_;  // (1, u*)
};

/// Martineau inversion: the functional mu^g(h) = \int_{bG_nu} h Omega_g for a
/// homogeneity-0 function g on D*, realized by spherical product quadrature.
/// Satisfies F[mu^g] = dg within quadrature tolerance.
class MartineauFunctional {
 public:
  /// d2g_dxi0 is d^n g / d xi_0^n in closed form when available; when absent
  /// it is computed per node by one-variable Cauchy stencils on g (slower).
  MartineauFunctional(std::function<Cx(std::span<const Cx>)> g,
                      std::function<Cx(std::span<const Cx>)> dng_dxi0,
                      BallComplementDomain dom, double nu, int grid);

  struct Result {
    Cx value{};
    double refinement_delta = 0.0;
    RowStatus status = RowStatus::ok;
  };
  Result apply(const std::function<Cx(std::span<const Cx>)>& h) const;

  struct FormResult {
    Covector1Form form;
    double refinement_delta = 0.0;
    RowStatus status = RowStatus::ok;
  };
  FormResult fantappie(std::span<const Cx> xi) const;

  double sphere_radius() const { return a_; }

 private:
  struct Grid {
    std::vector<CxVec> u;  // affine node coordinates
    CxVec weight;          // (2 pi i)^{-n} measure * kernel value
  };
  Grid build_grid(int n_theta, int n_ang) const;

  std::function<Cx(std::span<const Cx>)> g_;
  std::function<Cx(std::span<const Cx>)> dng_;
  BallComplementDomain dom_;
  double a_;
  int grid_;
  Grid coarse_, fine_;
  double agree_tol_ = 1e-5;
};

/// Path integral of a 1-form evaluator along a polyline in D*; used for
/// potentials of general functionals and for closed-loop checks. Throws when
/// a node leaves the dual domain.
Cx fantappie_potential(
    const std::function<Covector1Form(std::span<const Cx>)>& form_at,
    const std::vector<CxVec>& polyline, const BallComplementDomain& dom,
    const TransformSettings& settings = {});

/// P_k(d/d xi) g at one dual point through a polydisc Cauchy stencil on g.
struct SystemResidual {
  CxVec residuals;         // one per generator
  std::vector<double> scales;
  double relative = 0.0;   // max_k |residual_k| / scale_k
  RowStatus status = RowStatus::ok;
};

SystemResidual verify_system_at(
    const std::function<Cx(std::span<const Cx>)>& g,
    const std::vector<HomPoly>& system, std::span<const Cx> xi,
    const BallComplementDomain& dom, double stencil_radius = 0.15,
    int stencil_nodes = 16);

/// d f = 0 check: max_{j<k} |d f_j / d xi_k - d f_k / d xi_j| via
/// one-variable Cauchy stencils on the component samplers. A non-positive
/// radius selects the default per-variable stencil radius.
double closedness_defect(
    const std::function<Covector1Form(std::span<const Cx>)>& form_at,
    std::span<const Cx> xi, double radius = 0.0, int nodes = 16);

}  // namespace corad
