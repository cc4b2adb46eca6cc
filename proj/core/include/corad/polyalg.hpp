#pragma once

// Exact sparse polynomial arithmetic over the complex numbers, plus
// high-accuracy differentiation of sampled holomorphic functions through
// discrete Cauchy integrals on polydisc stencils.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "corad/types.hpp"

namespace corad {

/// Exponent vector; length is the number of variables.
struct MultiIndex {
  std::vector<int> exponents;

  int total() const;
  bool operator<(const MultiIndex& o) const { return exponents < o.exponents; }
  bool operator==(const MultiIndex& o) const { return exponents == o.exponents; }
};

/// Sparse polynomial in `nvars` variables. Zero coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(Cx a, int nvars);
  static Polynomial monomial(Cx a, MultiIndex idx);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<MultiIndex, Cx>& terms() const { return terms_; }

  void add_term(const MultiIndex& idx, Cx coeff);

  Cx eval(std::span<const Cx> z) const;
  Polynomial derivative(int var) const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(Cx s) const;

  /// Coefficients as a univariate polynomial in `var` with the other
  /// variables frozen at `point` (point[var] is ignored).
  CxVec restrict_to_variable(int var, std::span<const Cx> point) const;

  /// p(z + shift).
  Polynomial translated(std::span<const Cx> shift) const;

  int degree() const;              // total degree, -1 for the zero polynomial
  int degree_in(int var) const;
  double coeff_scale() const;      // max |coeff|

 private:
  int nvars_ = 0;
  std::map<MultiIndex, Cx> terms_;
};

/// Homogeneous polynomial in n+1 variables: a Polynomial whose terms all have
/// the same total degree. Construction validates the invariant.
class HomPoly {
 public:
  HomPoly() = default;
  /// Throws when a term's total degree disagrees with the rest.
  HomPoly(int ambient_n, std::vector<std::pair<MultiIndex, Cx>> terms);

  int ambient_n() const { return n_; }       // polynomial lives on C^{n+1}
  int nvars() const { return n_ + 1; }
  int degree() const { return degree_; }
  const Polynomial& poly() const { return p_; }

  Cx operator()(std::span<const Cx> z) const;

 private:
  int n_ = 0;
  int degree_ = 0;
  Polynomial p_;
};

Cx eval_poly(const HomPoly& p, std::span<const Cx> z);

/// Restriction to the affine chart z0 = 1: a polynomial in (u_1, ..., u_n).
Polynomial dehomogenize(const HomPoly& p);

/// All n+1 partial derivatives; component j has degree deg - 1 (possibly 0).
std::vector<HomPoly> grad_poly(const HomPoly& p);

/// The hyperplane pairing <xi . z> = sum_k xi_k z_k.
Cx pairing(std::span<const Cx> xi, std::span<const Cx> z);

/// Samples of a holomorphic function on a polydisc distinguished boundary:
/// nodes are the N-th roots of unity scaled per variable around `center`.
class DiscStencil {
 public:
  DiscStencil(CxVec center, std::vector<double> radii, int nodes_per_circle);

  static DiscStencil sample(const std::function<Cx(std::span<const Cx>)>& f,
                            CxVec center, std::vector<double> radii,
                            int nodes_per_circle);

  int dims() const { return static_cast<int>(center_.size()); }
  int nodes_per_circle() const { return n_; }
  const CxVec& center() const { return center_; }
  const std::vector<double>& radii() const { return radii_; }

  /// Node coordinates for a flat index in [0, N^k).
  CxVec node(size_t flat) const;
  size_t node_count() const;

  void set_value(size_t flat, Cx v);
  bool complete() const;

  const CxVec& values() const { return values_; }

 private:
  CxVec center_;
  std::vector<double> radii_;
  int n_ = 0;
  CxVec values_;
  std::vector<bool> have_;
};

/// Default stencil radius: a tenth of the center magnitude, floored at 0.05.
inline double default_stencil_radius(Cx center) {
  return std::max(0.05, 0.1 * std::abs(center));
}

/// d^order f at the stencil center via iterated discrete Cauchy integrals.
/// Exact for polynomials of per-variable degree < N - max order; spectrally
/// accurate otherwise. Throws on incomplete stencils and orders >= N/2.
Cx cauchy_derivative(const DiscStencil& stencil, const MultiIndex& order);

/// Integer homogeneity weight w with f(lambda z) = lambda^w f(z), probed at
/// the given points with a fixed set of scale factors. nullopt when the
/// probes disagree (not homogeneous).
std::optional<int> homogeneity_of(
    const std::function<Cx(std::span<const Cx>)>& f,
    const std::vector<CxVec>& probes, double tol = 1e-8);

}  // namespace corad
