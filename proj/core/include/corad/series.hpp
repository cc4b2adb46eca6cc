#pragma once

// Truncated power series over the complex numbers: univariate Taylor series
// and bivariate series by total degree. Orders stay tiny (residue extraction
// needs a handful of coefficients), so the arithmetic is deliberately naive.

#include <vector>

#include "corad/types.hpp"

namespace corad {

class Taylor1 {
 public:
  Taylor1() = default;
  explicit Taylor1(int order) : c_(order + 1, Cx{}) {}
  Taylor1(std::initializer_list<Cx> coeffs) : c_(coeffs) {}
  static Taylor1 constant(Cx a, int order);
  static Taylor1 variable(int order);  // t

  int order() const { return static_cast<int>(c_.size()) - 1; }
  Cx coeff(int k) const { return k >= 0 && k <= order() ? c_[k] : Cx{}; }
  Cx& at(int k) { return c_[k]; }

  Taylor1 operator+(const Taylor1& o) const;
  Taylor1 operator-(const Taylor1& o) const;
  Taylor1 operator*(const Taylor1& o) const;
  Taylor1 operator*(Cx s) const;
  Taylor1 inverse() const;       // requires c_[0] != 0
  Taylor1 derivative() const;
  Taylor1 log1p() const;         // log(1 + f), requires c_[0] == 0
  Taylor1 pow(int k) const;      // k >= 0

  /// Lowest index with a coefficient above `tol` (order+1 when none).
  int valuation(double tol = 0.0) const;

 private:
  CxVec c_;  // c_[k] multiplies t^k
};

/// Bivariate truncated series sum a[i][j] x^i y^j, kept up to total degree K.
class Series2 {
 public:
  Series2() = default;
  explicit Series2(int order);
  static Series2 constant(Cx a, int order);
  static Series2 variable(int which, int order);  // 0 -> x, 1 -> y

  int order() const { return order_; }
  Cx coeff(int i, int j) const;
  void set(int i, int j, Cx v);

  Series2 operator+(const Series2& o) const;
  Series2 operator-(const Series2& o) const;
  Series2 operator*(const Series2& o) const;
  Series2 operator*(Cx s) const;
  Series2 inverse() const;  // requires constant term != 0

  /// Substitute x -> g (a series with zero constant term allowed) and
  /// y -> the y variable. Used for shear changes of variable.
  Series2 substitute_x(const Series2& g) const;
  Series2 substitute_y(const Series2& g) const;

 private:
  int order_ = 0;
  std::vector<CxVec> a_;  // a_[i][j]
};

}  // namespace corad
