#pragma once

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ringcover/errors.hpp"
#include "ringcover/field.hpp"

namespace ringcover {

/// Univariate polynomial over a FieldCtx, coefficients low to high, with no
/// trailing zeros (the zero polynomial has no coefficients).
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr f) : f_(std::move(f)) {}
  Poly(FieldPtr f, std::vector<elem_t> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) { trim(); }

  static Poly constant(FieldPtr f, elem_t c) { return Poly(std::move(f), {c}); }
  static Poly x(FieldPtr f) { return Poly(std::move(f), {0, 1}); }
  /// x - a
  static Poly linear(const FieldPtr& f, elem_t a) { return Poly(f, {f->neg(a), 1}); }

  const FieldPtr& field() const { return f_; }
  const std::vector<elem_t>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  elem_t lead() const { return c_.empty() ? 0 : c_.back(); }
  elem_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  Poly monic() const {
    if (c_.empty()) return *this;
    const elem_t inv = f_->inv(c_.back());
    std::vector<elem_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f_->mul(c_[i], inv);
    return Poly(f_, std::move(r));
  }

  Poly operator+(const Poly& o) const {
    std::vector<elem_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->add(coeff(i), o.coeff(i));
    return Poly(f_, std::move(r));
  }
  Poly operator-(const Poly& o) const {
    std::vector<elem_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->sub(coeff(i), o.coeff(i));
    return Poly(f_, std::move(r));
  }
  Poly operator*(const Poly& o) const {
    if (c_.empty() || o.c_.empty()) return Poly(f_);
    std::vector<elem_t> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        r[i + j] = f_->add(r[i + j], f_->mul(c_[i], o.c_[j]));
      }
    }
    return Poly(f_, std::move(r));
  }
  Poly scaled(elem_t s) const {
    std::vector<elem_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f_->mul(c_[i], s);
    return Poly(f_, std::move(r));
  }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw invalid_argument("polynomial division by zero");
    std::vector<elem_t> rem = c_;
    const int dd = d.degree();
    if (degree() < dd) return {Poly(f_), *this};
    std::vector<elem_t> quo(static_cast<std::size_t>(degree() - dd + 1), 0);
    const elem_t inv = f_->inv(d.lead());
    for (int i = degree(); i >= dd; --i) {
      const elem_t c = f_->mul(rem[static_cast<std::size_t>(i)], inv);
      quo[static_cast<std::size_t>(i - dd)] = c;
      if (c == 0) continue;
      for (int j = 0; j <= dd; ++j) {
        auto& slot = rem[static_cast<std::size_t>(i - dd + j)];
        slot = f_->sub(slot, f_->mul(c, d.c_[static_cast<std::size_t>(j)]));
      }
    }
    return {Poly(f_, std::move(quo)), Poly(f_, std::move(rem))};
  }
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  Poly operator/(const Poly& d) const { return divmod(d).first; }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return c_ != o.c_; }

  elem_t eval(elem_t a) const {
    elem_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = f_->add(f_->mul(acc, a), c_[i]);
    return acc;
  }
  /// Evaluate at an element of an extension field, coefficients mapped by e.
  elem_t eval_in(const Embedding& e, elem_t a) const {
    const auto& g = e.dst();
    elem_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = g->add(g->mul(acc, a), e(c_[i]));
    return acc;
  }
  /// The same polynomial with coefficients pushed into a larger field.
  Poly mapped(const Embedding& e) const {
    std::vector<elem_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = e(c_[i]);
    return Poly(e.dst(), std::move(r));
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (i == 0 || c_[i] != 1) os << c_[i];
      if (i >= 1) os << "x";
      if (i >= 2) os << "^" << i;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  FieldPtr f_;
  std::vector<elem_t> c_;
};

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline Poly poly_lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.field());
  return ((a * b) / poly_gcd(a, b)).monic();
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m) {
  Poly r = Poly::constant(m.field(), 1) % m;
  base = base % m;
  while (e > 0) {
    if (e & 1U) r = (r * base) % m;
    e >>= 1U;
    if (e > 0) base = (base * base) % m;
  }
  return r;
}

/// Rabin irreducibility test over the coefficient field.
inline bool is_irreducible(const Poly& f) {
  const int m = f.degree();
  if (m < 1) return false;
  if (m == 1) return true;
  const auto& F = f.field();
  const std::uint64_t q = F->order();
  const Poly fm = f.monic();
  const Poly xx = Poly::x(F);
  std::vector<Poly> frob(static_cast<std::size_t>(m) + 1);
  frob[0] = xx % fm;
  for (int i = 1; i <= m; ++i) frob[static_cast<std::size_t>(i)] = poly_powmod(frob[static_cast<std::size_t>(i - 1)], q, fm);
  if (frob[static_cast<std::size_t>(m)] != frob[0]) return false;
  for (auto r : nt::prime_factors(static_cast<std::uint64_t>(m))) {
    if (poly_gcd(fm, frob[static_cast<std::size_t>(m) / r] - xx).degree() != 0) return false;
  }
  return true;
}

/// Roots of f in the target of e (with repetition removed), ascending.
inline std::vector<elem_t> roots_in(const Poly& f, const Embedding& e) {
  std::vector<elem_t> out;
  if (f.is_zero()) throw invalid_argument("roots of the zero polynomial");
  for (elem_t a = 0; a < e.dst()->order(); ++a) {
    if (f.eval_in(e, a) == 0) out.push_back(a);
  }
  return out;
}

/// Minimal polynomial over the source of e of an element a of its target.
inline Poly minimal_polynomial_of(const Embedding& e, elem_t a) {
  const auto& big = e.dst();
  const std::uint64_t q = e.src()->order();
  // Galois orbit of a under x -> x^q
  std::vector<elem_t> orbit{a};
  for (elem_t b = big->pow(a, q); b != a; b = big->pow(b, q)) orbit.push_back(b);
  Poly prod = Poly::constant(big, 1);
  for (auto b : orbit) prod = prod * Poly::linear(big, b);
  std::vector<elem_t> coeffs;
  for (auto c : prod.coeffs()) {
    auto pre = e.preimage(c);
    if (!pre) throw error("minimal polynomial has coefficients outside the base field");
    coeffs.push_back(*pre);
  }
  return Poly(e.src(), std::move(coeffs));
}

/// All monic primitive polynomials of degree k over F (minimal polynomials of
/// generators of GF(|F|^k)), in ascending order of the least discrete log of
/// their roots.
inline std::vector<Poly> primitive_polynomials(const FieldPtr& F, unsigned k) {
  auto big = make_field(F->characteristic(), F->degree() * k);
  Embedding e(F, big);
  const std::uint64_t n1 = big->order() - 1;
  const std::uint64_t q = F->order();
  std::vector<bool> seen(n1, false);
  std::vector<Poly> out;
  for (std::uint64_t l = 1; l < n1 || (n1 == 1 && l == 1); ++l) {
    const std::uint64_t lg = l % n1;
    if (std::gcd(lg == 0 ? n1 : lg, n1) != 1 && n1 != 1) continue;
    if (seen[lg]) continue;
    std::uint64_t t = lg;
    do {
      seen[t] = true;
      t = (t * q) % n1;
    } while (t != lg);
    out.push_back(minimal_polynomial_of(e, big->exp(lg)));
    if (n1 == 1) break;
  }
  return out;
}

}  // namespace ringcover
