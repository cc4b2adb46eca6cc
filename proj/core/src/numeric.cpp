#include "corad/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>

namespace corad {

std::vector<Cx> polynomial_roots(const CxVec& coeffs, double tol) {
  double scale = 0.0;
  for (const Cx& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return {};

  // Strip negligible leading coefficients; those roots sit at infinity.
  int deg = static_cast<int>(coeffs.size()) - 1;
  while (deg > 0 && std::abs(coeffs[deg]) < 1e-14 * scale) --deg;
  if (deg <= 0) return {};

  CxVec a(coeffs.begin(), coeffs.begin() + deg + 1);
  const Cx lead = a[deg];
  for (Cx& c : a) c /= lead;

  double radius = 0.0;
  for (int k = 0; k < deg; ++k) radius = std::max(radius, std::abs(a[k]));
  radius = 1.0 + radius;

  std::vector<Cx> roots(deg);
  for (int k = 0; k < deg; ++k) {
    double ang = 2.0 * kPi * (k + 0.35) / deg;
    roots[k] = radius * Cx(std::cos(ang), std::sin(ang));
  }

  auto eval = [&](Cx x) {
    Cx v = a[deg];
    for (int k = deg - 1; k >= 0; --k) v = v * x + a[k];
    return v;
  };

  for (int iter = 0; iter < 400; ++iter) {
    double moved = 0.0;
    for (int k = 0; k < deg; ++k) {
      Cx denom = 1.0;
      for (int j = 0; j < deg; ++j)
        if (j != k) denom *= roots[k] - roots[j];
      if (std::abs(denom) < 1e-290) {
        roots[k] += Cx(1e-8, 1e-8);
        continue;
      }
      Cx delta = eval(roots[k]) / denom;
      roots[k] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < tol * std::max(1.0, radius)) break;
  }
  return roots;
}

std::optional<double> bisect_increasing(const std::function<double(double)>& f,
                                        double target, double lo, double hi,
                                        double hi_cap, double tol) {
  if (f(lo) > target) return std::nullopt;
  while (f(hi) < target && hi <= hi_cap) hi *= 2.0;
  if (hi > hi_cap) {
    if (f(hi_cap) < target) return std::nullopt;
    hi = hi_cap;
  }
  for (int i = 0; i < 200 && (hi - lo) > tol * std::max(1.0, hi); ++i) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::optional<Cx> newton_solve(const std::function<Cx(Cx)>& f,
                               const std::function<Cx(Cx)>& df, Cx x0,
                               double tol, int max_iter) {
  Cx x = x0;
  for (int i = 0; i < max_iter; ++i) {
    Cx fx = f(x);
    Cx dfx = df(x);
    if (std::abs(dfx) < 1e-280) return std::nullopt;
    Cx step = fx / dfx;
    x -= step;
    if (std::abs(step) < tol * std::max(1.0, std::abs(x))) return x;
  }
  return std::nullopt;
}

const GaussLegendre& gauss_legendre(int n) {
  static std::map<int, GaussLegendre> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess, Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.nodes[i] = x;
    gl.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return cache.emplace(n, std::move(gl)).first->second;
}

double hermitian3_min_eigenvalue(const std::array<Cx, 9>& a) {
  // Real characteristic cubic lambda^3 - c2 lambda^2 + c1 lambda - c0.
  double t = (a[0] + a[4] + a[8]).real();
  auto minor2 = [&](int i, int j, int k, int l) {
    return (a[i] * a[l] - a[j] * a[k]).real();
  };
  double c1 = minor2(0, 1, 3, 4) + minor2(0, 2, 6, 8) + minor2(4, 5, 7, 8);
  Cx det = a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
  double c0 = det.real();

  // Shift to the depressed cubic and solve trigonometrically.
  double p = c1 - t * t / 3.0;
  double q = -2.0 * t * t * t / 27.0 + t * c1 / 3.0 - c0;
  double lmin;
  if (std::abs(p) < 1e-300) {
    lmin = t / 3.0 - std::cbrt(q);
  } else {
    double m = 2.0 * std::sqrt(std::max(0.0, -p / 3.0));
    double arg = std::clamp(3.0 * q / (p * m == 0.0 ? 1e-300 : p * m), -1.0, 1.0);
    double phi = std::acos(arg) / 3.0;
    lmin = t / 3.0 + m * std::cos(phi + 2.0 * kPi / 3.0);
    double l2 = t / 3.0 + m * std::cos(phi - 2.0 * kPi / 3.0);
    double l3 = t / 3.0 + m * std::cos(phi);
    lmin = std::min({lmin, l2, l3});
  }
  return lmin;
}

}  // namespace corad
