#include "corad/series.hpp"

#include <algorithm>
#include <cmath>

namespace corad {

Taylor1 Taylor1::constant(Cx a, int order) {
  Taylor1 t(order);
  t.c_[0] = a;
  return t;
}

Taylor1 Taylor1::variable(int order) {
  Taylor1 t(order);
  if (order >= 1) t.c_[1] = 1.0;
  return t;
}

Taylor1 Taylor1::operator+(const Taylor1& o) const {
  Taylor1 r(std::max(order(), o.order()));
  for (int k = 0; k <= r.order(); ++k) r.c_[k] = coeff(k) + o.coeff(k);
  return r;
}

Taylor1 Taylor1::operator-(const Taylor1& o) const {
  Taylor1 r(std::max(order(), o.order()));
  for (int k = 0; k <= r.order(); ++k) r.c_[k] = coeff(k) - o.coeff(k);
  return r;
}

Taylor1 Taylor1::operator*(const Taylor1& o) const {
  Taylor1 r(std::max(order(), o.order()));
  for (int i = 0; i <= order() && i <= r.order(); ++i) {
    if (c_[i] == Cx{}) continue;
    for (int j = 0; j <= o.order() && i + j <= r.order(); ++j)
      r.c_[i + j] += c_[i] * o.coeff(j);
  }
  return r;
}

Taylor1 Taylor1::operator*(Cx s) const {
  Taylor1 r = *this;
  for (Cx& c : r.c_) c *= s;
  return r;
}

Taylor1 Taylor1::inverse() const {
  if (c_.empty() || c_[0] == Cx{})
    throw Error(Errc::invalid_input, "Taylor1::inverse: zero constant term");
  Taylor1 r(order());
  r.c_[0] = 1.0 / c_[0];
  for (int k = 1; k <= order(); ++k) {
    Cx s{};
    for (int j = 1; j <= k; ++j) s += coeff(j) * r.c_[k - j];
    r.c_[k] = -s / c_[0];
  }
  return r;
}

Taylor1 Taylor1::derivative() const {
  if (order() == 0) return Taylor1(0);
  Taylor1 r(order() - 1);
  for (int k = 1; k <= order(); ++k) r.c_[k - 1] = c_[k] * double(k);
  return r;
}

Taylor1 Taylor1::log1p() const {
  double scale = 0.0;
  for (const Cx& c : c_) scale = std::max(scale, std::abs(c));
  if (!c_.empty() && std::abs(c_[0]) > 1e-12 * std::max(1.0, scale))
    throw Error(Errc::invalid_input, "Taylor1::log1p: nonzero constant term");
  // log(1+f)' = f'/(1+f); integrate termwise. Roundoff-level constant terms
  // are dropped rather than rejected.
  Taylor1 one_plus = *this;
  one_plus.c_[0] = 1.0;
  Taylor1 d = derivative() * one_plus.inverse();
  Taylor1 r(order());
  for (int k = 1; k <= order(); ++k) r.c_[k] = d.coeff(k - 1) / double(k);
  return r;
}

Taylor1 Taylor1::pow(int k) const {
  Taylor1 r = Taylor1::constant(1.0, order());
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

int Taylor1::valuation(double tol) const {
  for (int k = 0; k <= order(); ++k)
    if (std::abs(c_[k]) > tol) return k;
  return order() + 1;
}

Series2::Series2(int order) : order_(order), a_(order + 1) {
  for (int i = 0; i <= order; ++i) a_[i].assign(order + 1 - i, Cx{});
}

Series2 Series2::constant(Cx a, int order) {
  Series2 s(order);
  s.a_[0][0] = a;
  return s;
}

Series2 Series2::variable(int which, int order) {
  Series2 s(order);
  if (order >= 1) {
    if (which == 0)
      s.a_[1][0] = 1.0;
    else
      s.a_[0][1] = 1.0;
  }
  return s;
}

Cx Series2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order_) return Cx{};
  return a_[i][j];
}

void Series2::set(int i, int j, Cx v) {
  if (i >= 0 && j >= 0 && i + j <= order_) a_[i][j] = v;
}

Series2 Series2::operator+(const Series2& o) const {
  Series2 r(std::max(order_, o.order_));
  for (int i = 0; i <= r.order_; ++i)
    for (int j = 0; i + j <= r.order_; ++j) r.a_[i][j] = coeff(i, j) + o.coeff(i, j);
  return r;
}

Series2 Series2::operator-(const Series2& o) const {
  Series2 r(std::max(order_, o.order_));
  for (int i = 0; i <= r.order_; ++i)
    for (int j = 0; i + j <= r.order_; ++j) r.a_[i][j] = coeff(i, j) - o.coeff(i, j);
  return r;
}

Series2 Series2::operator*(const Series2& o) const {
  Series2 r(std::max(order_, o.order_));
  for (int i = 0; i <= order_; ++i)
    for (int j = 0; i + j <= order_; ++j) {
      if (a_[i][j] == Cx{}) continue;
      for (int k = 0; k <= o.order_ && i + k <= r.order_; ++k)
        for (int l = 0; k + l <= o.order_ && i + j + k + l <= r.order_; ++l)
          r.a_[i + k][j + l] += a_[i][j] * o.coeff(k, l);
    }
  return r;
}

Series2 Series2::operator*(Cx s) const {
  Series2 r = *this;
  for (auto& row : r.a_)
    for (Cx& c : row) c *= s;
  return r;
}

Series2 Series2::inverse() const {
  Cx a0 = coeff(0, 0);
  if (a0 == Cx{})
    throw Error(Errc::invalid_input, "Series2::inverse: zero constant term");
  // Newton: r <- r (2 - f r), doubling correct order each pass.
  Series2 r = Series2::constant(1.0 / a0, order_);
  Series2 two = Series2::constant(2.0, order_);
  int passes = 1;
  while ((1 << passes) <= order_ + 1) ++passes;
  for (int p = 0; p <= passes; ++p) r = r * (two - *this * r);
  return r;
}

Series2 Series2::substitute_x(const Series2& g) const {
  // Horner in x with series coefficients.
  Series2 r(order_);
  for (int i = order_; i >= 0; --i) {
    Series2 row(order_);
    for (int j = 0; i + j <= order_; ++j) row.set(0, j, a_[i][j]);
    r = r * g + row;
  }
  return r;
}

Series2 Series2::substitute_y(const Series2& g) const {
  Series2 r(order_);
  for (int j = order_; j >= 0; --j) {
    Series2 col(order_);
    for (int i = 0; i + j <= order_; ++i) col.set(i, 0, a_[i][j]);
    r = r * g + col;
  }
  return r;
}

}  // namespace corad
