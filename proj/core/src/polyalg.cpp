#include "corad/polyalg.hpp"

#include <algorithm>
#include <cmath>

namespace corad {

int MultiIndex::total() const {
  int s = 0;
  for (int e : exponents) s += e;
  return s;
}

Polynomial Polynomial::constant(Cx a, int nvars) {
  Polynomial p(nvars);
  p.add_term(MultiIndex{std::vector<int>(nvars, 0)}, a);
  return p;
}

Polynomial Polynomial::monomial(Cx a, MultiIndex idx) {
  Polynomial p(static_cast<int>(idx.exponents.size()));
  p.add_term(idx, a);
  return p;
}

void Polynomial::add_term(const MultiIndex& idx, Cx coeff) {
  if (static_cast<int>(idx.exponents.size()) != nvars_)
    throw Error(Errc::dimension_mismatch, "Polynomial::add_term: index length");
  for (int e : idx.exponents)
    if (e < 0) throw Error(Errc::invalid_input, "negative exponent");
  auto it = terms_.find(idx);
  if (it == terms_.end()) {
    if (coeff != Cx{}) terms_.emplace(idx, coeff);
  } else {
    it->second += coeff;
    if (it->second == Cx{}) terms_.erase(it);
  }
}

Cx Polynomial::eval(std::span<const Cx> z) const {
  if (static_cast<int>(z.size()) != nvars_)
    throw Error(Errc::dimension_mismatch, "Polynomial::eval: point dimension");
  Cx acc{};
  for (const auto& [idx, c] : terms_) {
    Cx m = c;
    for (int v = 0; v < nvars_; ++v)
      for (int e = 0; e < idx.exponents[v]; ++e) m *= z[v];
    acc += m;
  }
  return acc;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial r(nvars_);
  for (const auto& [idx, c] : terms_) {
    int e = idx.exponents[var];
    if (e == 0) continue;
    MultiIndex d = idx;
    d.exponents[var] -= 1;
    r.add_term(d, c * double(e));
  }
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [idx, c] : o.terms_) r.add_term(idx, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [idx, c] : o.terms_) r.add_term(idx, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r(nvars_);
  for (const auto& [ia, ca] : terms_)
    for (const auto& [ib, cb] : o.terms_) {
      MultiIndex m = ia;
      for (int v = 0; v < nvars_; ++v) m.exponents[v] += ib.exponents[v];
      r.add_term(m, ca * cb);
    }
  return r;
}

Polynomial Polynomial::operator*(Cx s) const {
  Polynomial r(nvars_);
  if (s == Cx{}) return r;
  for (const auto& [idx, c] : terms_) r.add_term(idx, c * s);
  return r;
}

CxVec Polynomial::restrict_to_variable(int var, std::span<const Cx> point) const {
  CxVec coeffs(degree_in(var) + 1, Cx{});
  for (const auto& [idx, c] : terms_) {
    Cx m = c;
    for (int v = 0; v < nvars_; ++v) {
      if (v == var) continue;
      for (int e = 0; e < idx.exponents[v]; ++e) m *= point[v];
    }
    coeffs[idx.exponents[var]] += m;
  }
  return coeffs;
}

Polynomial Polynomial::translated(std::span<const Cx> shift) const {
  Polynomial r(nvars_);
  for (const auto& [idx, c] : terms_) {
    // Expand prod (z_v + shift_v)^{e_v} term by term.
    Polynomial term = Polynomial::constant(c, nvars_);
    for (int v = 0; v < nvars_; ++v) {
      MultiIndex unit{std::vector<int>(nvars_, 0)};
      unit.exponents[v] = 1;
      Polynomial lin = Polynomial::monomial(1.0, unit) +
                       Polynomial::constant(shift[v], nvars_);
      for (int e = 0; e < idx.exponents[v]; ++e) term = term * lin;
    }
    r = r + term;
  }
  return r;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [idx, c] : terms_) d = std::max(d, idx.total());
  return d;
}

int Polynomial::degree_in(int var) const {
  int d = 0;
  for (const auto& [idx, c] : terms_) d = std::max(d, idx.exponents[var]);
  return d;
}

double Polynomial::coeff_scale() const {
  double s = 0.0;
  for (const auto& [idx, c] : terms_) s = std::max(s, std::abs(c));
  return s;
}

HomPoly::HomPoly(int ambient_n, std::vector<std::pair<MultiIndex, Cx>> terms)
    : n_(ambient_n), p_(ambient_n + 1) {
  degree_ = -1;
  for (const auto& [idx, c] : terms) {
    if (static_cast<int>(idx.exponents.size()) != n_ + 1)
      throw Error(Errc::dimension_mismatch, "HomPoly: index length != n+1");
    if (c == Cx{}) continue;
    int d = idx.total();
    if (degree_ < 0) degree_ = d;
    if (d != degree_)
      throw Error(Errc::invalid_input, "HomPoly: mixed total degrees");
    p_.add_term(idx, c);
  }
  if (degree_ < 0) degree_ = 0;  // zero polynomial
}

Cx HomPoly::operator()(std::span<const Cx> z) const {
  if (static_cast<int>(z.size()) != n_ + 1)
    throw Error(Errc::dimension_mismatch, "HomPoly eval: point dimension");
  return p_.eval(z);
}

Cx eval_poly(const HomPoly& p, std::span<const Cx> z) { return p(z); }

Polynomial dehomogenize(const HomPoly& p) {
  Polynomial r(p.ambient_n());
  for (const auto& [idx, c] : p.poly().terms()) {
    MultiIndex a{std::vector<int>(idx.exponents.begin() + 1, idx.exponents.end())};
    r.add_term(a, c);
  }
  return r;
}

std::vector<HomPoly> grad_poly(const HomPoly& p) {
  std::vector<HomPoly> g;
  g.reserve(p.nvars());
  for (int v = 0; v < p.nvars(); ++v) {
    Polynomial d = p.poly().derivative(v);
    std::vector<std::pair<MultiIndex, Cx>> terms(d.terms().begin(), d.terms().end());
    g.emplace_back(p.ambient_n(), std::move(terms));
  }
  return g;
}

Cx pairing(std::span<const Cx> xi, std::span<const Cx> z) {
  if (xi.size() != z.size())
    throw Error(Errc::dimension_mismatch, "pairing: length mismatch");
  Cx s{};
  for (size_t k = 0; k < z.size(); ++k) s += xi[k] * z[k];
  return s;
}

DiscStencil::DiscStencil(CxVec center, std::vector<double> radii, int n)
    : center_(std::move(center)), radii_(std::move(radii)), n_(n) {
  if (center_.size() != radii_.size())
    throw Error(Errc::dimension_mismatch, "DiscStencil: center/radii length");
  if (n_ < 8 || n_ % 2 != 0)
    throw Error(Errc::invalid_input, "DiscStencil: N must be even and >= 8");
  for (double r : radii_)
    if (!(r > 0)) throw Error(Errc::invalid_input, "DiscStencil: radius <= 0");
  values_.assign(node_count(), Cx{});
  have_.assign(node_count(), false);
}

size_t DiscStencil::node_count() const {
  size_t c = 1;
  for (int d = 0; d < dims(); ++d) c *= static_cast<size_t>(n_);
  return c;
}

CxVec DiscStencil::node(size_t flat) const {
  CxVec z(center_);
  for (int d = 0; d < dims(); ++d) {
    int j = static_cast<int>(flat % n_);
    flat /= n_;
    double ang = 2.0 * kPi * j / n_;
    z[d] += radii_[d] * Cx(std::cos(ang), std::sin(ang));
  }
  return z;
}

void DiscStencil::set_value(size_t flat, Cx v) {
  values_[flat] = v;
  have_[flat] = true;
}

bool DiscStencil::complete() const {
  return std::all_of(have_.begin(), have_.end(), [](bool b) { return b; });
}

DiscStencil DiscStencil::sample(const std::function<Cx(std::span<const Cx>)>& f,
                                CxVec center, std::vector<double> radii, int n) {
  DiscStencil s(std::move(center), std::move(radii), n);
  for (size_t flat = 0; flat < s.node_count(); ++flat) {
    CxVec z = s.node(flat);
    s.set_value(flat, f(z));
  }
  return s;
}

Cx cauchy_derivative(const DiscStencil& stencil, const MultiIndex& order) {
  if (static_cast<int>(order.exponents.size()) != stencil.dims())
    throw Error(Errc::dimension_mismatch, "cauchy_derivative: order length");
  if (!stencil.complete())
    throw Error(Errc::invalid_input, "cauchy_derivative: incomplete stencil");
  const int n = stencil.nodes_per_circle();
  for (int a : order.exponents)
    if (a >= n / 2)
      throw Error(Errc::invalid_input, "cauchy_derivative: order too high for N");

  // alpha! (2 pi i)^{-k} \oint g / (w - c)^{alpha+1} dw  ==  per-variable DFT
  // coefficient extraction divided by r^alpha.
  const int k = stencil.dims();
  Cx acc{};
  for (size_t flat = 0; flat < stencil.node_count(); ++flat) {
    double phase = 0.0;
    size_t rest = flat;
    for (int d = 0; d < k; ++d) {
      int j = static_cast<int>(rest % n);
      rest /= n;
      phase -= 2.0 * kPi * j * order.exponents[d] / n;
    }
    acc += stencil.values()[flat] * Cx(std::cos(phase), std::sin(phase));
  }
  double factor = 1.0;
  for (int d = 0; d < k; ++d) {
    for (int e = 1; e <= order.exponents[d]; ++e) factor *= e;
    factor /= std::pow(stencil.radii()[d], order.exponents[d]);
    factor /= n;
  }
  return acc * factor;
}

std::optional<int> homogeneity_of(
    const std::function<Cx(std::span<const Cx>)>& f,
    const std::vector<CxVec>& probes, double tol) {
  if (probes.empty()) return std::nullopt;
  static const Cx lambdas[] = {Cx(1.5, 0.0), Cx(0.6, 0.45), Cx(0.9, -0.7)};

  std::optional<int> weight;
  for (const CxVec& z : probes) {
    Cx base = f(z);
    if (std::abs(base) < 1e-140) return std::nullopt;
    // A real scale factor pins the integer weight unambiguously.
    {
      CxVec zs(z);
      for (Cx& c : zs) c *= lambdas[0];
      Cx ratio = f(zs) / base;
      double w = std::log(std::abs(ratio)) / std::log(std::abs(lambdas[0]));
      int wi = static_cast<int>(std::lround(w));
      if (std::abs(w - wi) > 1e-4) return std::nullopt;
      if (weight && *weight != wi) return std::nullopt;
      weight = wi;
    }
    for (const Cx& lam : lambdas) {
      CxVec zs(z);
      for (Cx& c : zs) c *= lam;
      Cx expect = std::pow(lam, *weight) * base;
      if (std::abs(f(zs) - expect) > tol * std::max(1.0, std::abs(expect)))
        return std::nullopt;
    }
  }
  return weight;
}

}  // namespace corad
