#pragma once

// Residue engine: tube-limit quadrature along admissible schedules, exact
// series-substitution residues for triangular and monomial bases, Leray
// residue densities on parametrized curves, and the residue pairing that
// feeds the transform layer.
//
// Normalization: every residue-like value carries the factor (2 pi i)^{-m},
// so algebraic results are rational for rational inputs. The transform layer
// reinstates its own powers of 2 pi i explicitly. The residue pairing is
// taken in the orientation positive around the compact side (counterclockwise
// in the curve parameter); boundary cycles arriving with the exterior
// orientation are reversed internally. A global sign flip of the tube limit
// is a permissible alternative convention; this one makes mu(h) for the conic
// fixture with J = 1/s^2 act as h |-> (d/ds) h(z(s)) at s = 0.

#include <functional>
#include <optional>
#include <vector>

#include "corad/geometry.hpp"
#include "corad/polyalg.hpp"
#include "corad/types.hpp"

namespace corad {

/// Complete-intersection data {P_1..P_m} in CP^n with an optional rational
/// parametrization and the homogeneity weight for the dualizing twist.
struct VarietySpec {
  int n = 2;                       // ambient projective dimension
  std::vector<HomPoly> generators; // m = generators.size()
  int weight = 0;                  // must equal sum(deg P_k) - (n + 1)
  std::optional<MonomialCurve> param;

  int codimension() const { return static_cast<int>(generators.size()); }
  /// Checks the weight identity and that the generators vanish along the
  /// parametrization at sampled points. Throws on violation.
  void validate() const;
};

/// Chart-mode data for genuinely local complete intersections: per-chart
/// generator tuples related by polynomial transition matrices on overlaps.
struct ChartedVariety {
  struct Chart {
    std::string tag;
    std::vector<Polynomial> local_generators;  // in chart coordinates
  };
  struct Overlap {
    int chart_a = 0;
    int chart_b = 0;
    std::vector<std::vector<Polynomial>> transition;  // F^(a) = A_ab F^(b)
    /// The same projective point expressed in both charts' coordinates.
    std::vector<std::pair<CxVec, CxVec>> sample_points;
  };
  std::vector<Chart> charts;
  std::vector<Overlap> overlaps;

  /// Samples the transition relation F^(a) = A_ab F^(b); throws on failure.
  void validate(double tol = 1e-9) const;
};

/// Numerator data for a residual current on a parametrized curve: either a
/// rational numerator in the affine chart or the Leray density J(s) directly.
struct ResidualForm {
  enum class Kind { affine_numerator, leray_density };
  Kind kind = Kind::leray_density;
  std::function<Cx(std::span<const Cx>)> affine_numerator;  // phi(u)
  std::function<Cx(Cx)> leray;                              // J(s)
  int weight = 0;

  static ResidualForm from_leray(std::function<Cx(Cx)> j, int weight = 0);
  static ResidualForm from_affine(std::function<Cx(std::span<const Cx>)> phi,
                                  int weight = 0);
};

/// Numerical stand-in for a Coleff-Herrera admissible path: at stage t the
/// radii are eps_m = t and eps_j = eps_{j+1}^kappa, and a value is accepted
/// once two successive halvings of t agree within `tolerance`. The genuine
/// admissibility condition (eps_j smaller than every power of eps_{j+1})
/// cannot be realized by a fixed power schedule; unordered limits are never
/// assumed.
struct AdmissibleSchedule {
  double base = 0.05;
  int kappa = 2;
  int halvings = 4;
  double tolerance = 1e-9;

  void validate() const;
};

/// Local tube data: polynomials F_1..F_m on C^m with an isolated common zero
/// at `center`. The fibered parametrization requires F_m univariate in the
/// last variable, F_{m-1} univariate in the trailing two, and so on
/// (triangular ordering); m <= 2 is what the fixtures exercise.
struct LocalTube {
  std::vector<Polynomial> denominators;
  Polynomial numerator;
  CxVec center;
  double region_radius = 1.0;
};

struct TubeResult {
  Cx value{};
  RowStatus status = RowStatus::ok;
  int stages_used = 0;
};

/// (2 pi i)^{-m} times the tube integral over {|F_k| = eps_k} around the
/// isolated common zero, iterated along the schedule. Throws geometry errors
/// when the tube escapes the stated region; returns not_stabilized when the
/// halvings disagree.
TubeResult tube_integral(const LocalTube& tube, const AdmissibleSchedule& sched);

/// Same limit restricted over a base cycle on a parametrized curve, i.e. the
/// boundary-tube realization of the residue pairing. Returns the *raw*
/// contour value \oint h J ds (counterclockwise around the compact side),
/// which equals (2 pi i)^m times residue_pairing on the same data.
TubeResult tube_integral_on_cycle(const VarietySpec& variety,
                                  const ResidualForm& form,
                                  const std::function<Cx(std::span<const Cx>)>& h,
                                  const Cycle& cycle,
                                  const AdmissibleSchedule& sched);

/// Exact Grothendieck residue by series substitution and coefficient
/// extraction, normalized by (2 pi i)^{-m}. Supported shapes: triangular
/// substitutable bases (each F_k reduces to unit * (z_k - g(z_others)) after
/// shears) and monomial-dominant bases z_k^a * unit. Throws unsupported_basis
/// otherwise; callers fall back to tube_integral.
Cx grothendieck_residue(const std::vector<Polynomial>& denominators,
                        const Polynomial& numerator, const CxVec& center);

/// Residue integral fibered over a base cycle: for each node of the base
/// cycle (living in the variable 1 - fiber_var), sums the per-fiber point
/// residues of numerator / F over the roots of F in fiber_var, then
/// integrates over the cycle with the (2 pi i)^{-1} normalization. Matches
/// residue_pairing on curve data when fiber_var picks the Leray branch.
/// Throws fiber_degenerate when fiber roots collide near the cycle.
Cx fibered_residue(const Polynomial& denominator,
                   const std::function<Cx(std::span<const Cx>)>& numerator,
                   const Cycle& base_cycle, int fiber_var, double fiber_region);

/// Pulls the affine numerator back to the curve parameter: J(s) ds is the
/// Leray form sigma with sigma ^ dF = phi du1 ^ du2 restricted to the curve.
/// m = 1 only; throws when the cycle passes through a point where grad F
/// vanishes (e.g. the cusp).
std::function<Cx(Cx)> leray_residue_density(const VarietySpec& variety,
                                            const ResidualForm& form,
                                            const Cycle& cycle);

/// mu^phi(h) = (2 pi i)^{-1} \oint h(z(s)) J(s) ds over the cycle oriented
/// positively around the compact side. Throws pole_on_cycle when J blows up
/// on a node.
Cx residue_pairing(const VarietySpec& variety, const ResidualForm& form,
                   const std::function<Cx(std::span<const Cx>)>& h,
                   const Cycle& cycle);

struct TransformationLawReport {
  Cx lhs{};            // res_P(h)
  Cx rhs{};            // res_F(det A * h), F = A P
  double discrepancy = 0.0;  // relative
};

/// Checks res_P(h) = res_F(det A h) for F = A P with a nondegenerate
/// polynomial matrix A: left side by the exact series residue, right side by
/// tube quadrature. Throws when det A vanishes on the region.
TransformationLawReport transformation_law_check(
    const std::vector<Polynomial>& p_basis,
    const std::vector<std::vector<Polynomial>>& a_matrix,
    const Polynomial& numerator, const CxVec& center, double region_radius,
    const AdmissibleSchedule& sched);

}  // namespace corad
