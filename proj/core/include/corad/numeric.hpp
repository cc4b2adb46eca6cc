#pragma once

// Small numeric toolbox: univariate root finding and quadrature nodes.

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "corad/types.hpp"

namespace corad {

/// All complex roots of sum_k coeffs[k] * x^k by the Durand-Kerner iteration.
/// Near-zero leading coefficients are stripped (degree drop = roots escaping to
/// infinity), so the returned vector can be shorter than coeffs.size() - 1.
std::vector<Cx> polynomial_roots(const CxVec& coeffs, double tol = 1e-13);

/// Monotone bisection for f(x) = target on [lo, hi]; f must be increasing.
/// Expands hi geometrically until f(hi) >= target (up to hi_cap).
std::optional<double> bisect_increasing(const std::function<double(double)>& f,
                                        double target, double lo, double hi,
                                        double hi_cap, double tol = 1e-12);

/// One complex Newton step chain: solve f(x) = 0 from x0. Returns nullopt when
/// the iteration stalls or |f'| collapses.
std::optional<Cx> newton_solve(const std::function<Cx(Cx)>& f,
                               const std::function<Cx(Cx)>& df, Cx x0,
                               double tol = 1e-13, int max_iter = 60);

/// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

/// Smallest eigenvalue of a 3x3 Hermitian matrix (row-major, 9 entries).
double hermitian3_min_eigenvalue(const std::array<Cx, 9>& a);

}  // namespace corad
