#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringcover/errors.hpp"
#include "ringcover/numtheory.hpp"

namespace ringcover {

/// A field element: the integer whose base-p digits are the coefficients of
/// its polynomial residue (constant term is the least significant digit).
using elem_t = std::uint32_t;

struct FieldCaps {
  unsigned max_degree = 16;
  std::uint32_t max_order = 65536;
};

namespace detail {

// Dense polynomials over GF(p), coefficients low to high, no trailing zeros.
using PPoly = std::vector<std::uint64_t>;

inline void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f for monic f.
inline PPoly pmod(PPoly a, const PPoly& f, std::uint64_t p) {
  ptrim(a);
  const std::size_t m = f.size() - 1;
  while (a.size() > m) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - m;
    for (std::size_t i = 0; i <= m; ++i) {
      a[shift + i] = (a[shift + i] + p - (c * f[i]) % p) % p;
    }
    ptrim(a);
  }
  return a;
}

inline PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  return pmod(std::move(r), f, p);
}

inline PPoly ppowmod(PPoly base, std::uint64_t e, const PPoly& f, std::uint64_t p) {
  PPoly r = pmod(PPoly{1}, f, p);
  base = pmod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1U) r = pmulmod(r, base, f, p);
    e >>= 1U;
    if (e > 0) base = pmulmod(base, base, f, p);
  }
  return r;
}

inline PPoly psub(PPoly a, const PPoly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  ptrim(a);
  return a;
}

inline std::uint64_t pinv_scalar(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, b = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1U) r = r * b % p;
    b = b * b % p;
    e >>= 1U;
  }
  return r;
}

inline PPoly pgcd(PPoly a, PPoly b, std::uint64_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    // make b monic so it can serve as a modulus
    const std::uint64_t inv = pinv_scalar(b.back(), p);
    for (auto& c : b) c = c * inv % p;
    a = pmod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// Rabin's test for monic f of degree m over GF(p).
inline bool p_is_irreducible(const PPoly& f, std::uint64_t p) {
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  const PPoly x{0, 1};
  std::vector<PPoly> frob(m + 1);
  frob[0] = pmod(x, f, p);
  for (std::size_t i = 1; i <= m; ++i) frob[i] = ppowmod(frob[i - 1], p, f, p);
  if (psub(frob[m], pmod(x, f, p), p).size() != 0) return false;
  for (auto r : nt::prime_factors(m)) {
    PPoly g = pgcd(f, psub(frob[m / r], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

// Assumes f irreducible: x has order p^m - 1 modulo f.
inline bool p_is_primitive(const PPoly& f, std::uint64_t p) {
  const std::size_t m = f.size() - 1;
  const std::uint64_t n1 = nt::checked_pow(p, static_cast<unsigned>(m)) - 1;
  for (auto r : nt::prime_factors(n1)) {
    PPoly t = ppowmod(PPoly{0, 1}, n1 / r, f, p);
    if (t.size() == 1 && t[0] == 1) return false;
  }
  return true;
}

// g(y) mod f, for g over GF(p) and y a residue mod f.
inline PPoly peval_at(const PPoly& g, const PPoly& y, const PPoly& f, std::uint64_t p) {
  PPoly acc;
  for (std::size_t i = g.size(); i-- > 0;) {
    acc = pmulmod(acc, y, f, p);
    if (acc.empty()) acc.push_back(0);
    acc[0] = (acc[0] + g[i]) % p;
    ptrim(acc);
  }
  return acc;
}

inline std::uint64_t least_primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  const auto fac = nt::prime_factors(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto r : fac) {
      std::uint64_t acc = 1, b = g, e = (p - 1) / r;
      while (e > 0) {
        if (e & 1U) acc = acc * b % p;
        b = b * b % p;
        e >>= 1U;
      }
      if (acc == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw error("no primitive root found");
}

// Conway polynomial of GF(p^m): the least primitive polynomial, in the
// alternating-sign coefficient order, whose roots are compatible with the
// Conway polynomials of every proper subfield. Memoised; callers hold the
// registry lock.
inline const PPoly& conway_polynomial(std::uint64_t p, unsigned m) {
  static std::map<std::pair<std::uint64_t, unsigned>, PPoly> memo;
  auto key = std::make_pair(p, m);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  PPoly result;
  if (m == 1) {
    const std::uint64_t g = least_primitive_root(p);
    result = PPoly{(p - g) % p, 1};
  } else {
    std::vector<std::pair<std::uint64_t, const PPoly*>> subfields;
    for (unsigned k : nt::divisors(m)) {
      if (k == m) continue;
      const std::uint64_t ratio =
          (nt::checked_pow(p, m) - 1) / (nt::checked_pow(p, k) - 1);
      subfields.emplace_back(ratio, &conway_polynomial(p, k));
    }
    // c[0] is the most significant coefficient in the ordering.
    std::vector<std::uint64_t> c(m, 0);
    bool found = false;
    while (!found) {
      PPoly f(m + 1, 0);
      f[m] = 1;
      for (unsigned i = 1; i <= m; ++i) {
        const std::uint64_t ci = c[i - 1] % p;
        f[m - i] = (i % 2 == 0) ? ci : (p - ci) % p;
      }
      if (f[0] != 0 && p_is_irreducible(f, p) && p_is_primitive(f, p)) {
        bool compatible = true;
        for (const auto& [ratio, sub] : subfields) {
          PPoly y = ppowmod(PPoly{0, 1}, ratio, f, p);
          if (!peval_at(*sub, y, f, p).empty()) {
            compatible = false;
            break;
          }
        }
        if (compatible) {
          result = f;
          found = true;
          break;
        }
      }
      // odometer, last coefficient fastest
      std::size_t pos = m;
      while (pos > 0) {
        --pos;
        if (++c[pos] < p) break;
        c[pos] = 0;
        if (pos == 0) throw error("conway polynomial search exhausted");
      }
    }
  }
  return memo.emplace(key, std::move(result)).first->second;
}

}  // namespace detail

/// GF(p^m) with log/antilog multiplication tables.
class FieldCtx {
 public:
  FieldCtx(unsigned p, unsigned m, std::vector<unsigned> defining_poly)
      : p_(p), m_(m), poly_(std::move(defining_poly)) {
    order_ = static_cast<std::uint32_t>(nt::checked_pow(p, m));
    const std::uint32_t n1 = order_ - 1;
    log_.assign(order_, 0);
    exp_.assign(2 * static_cast<std::size_t>(std::max<std::uint32_t>(n1, 1)), 0);
    std::vector<unsigned> cur(m, 0);
    cur[0] = 1;
    for (std::uint32_t i = 0; i < n1; ++i) {
      const elem_t idx = from_digits(cur);
      exp_[i] = idx;
      log_[idx] = i;
      // multiply by the residue of x
      const unsigned carry = cur[m - 1];
      for (unsigned j = m - 1; j > 0; --j) cur[j] = cur[j - 1];
      cur[0] = 0;
      for (unsigned j = 0; j < m; ++j) {
        cur[j] = (cur[j] + p - (carry * poly_[j]) % p) % p;
      }
    }
    if (from_digits(cur) != 1) throw error("defining polynomial is not primitive");
    for (std::uint32_t i = 0; i < n1; ++i) exp_[i + n1] = exp_[i];

    neg_.resize(order_);
    for (elem_t a = 0; a < order_; ++a) {
      auto d = digits(a);
      for (auto& x : d) x = (p - x) % p;
      neg_[a] = from_digits(d);
    }
    inv_.assign(order_, 0);
    for (elem_t a = 1; a < order_; ++a) inv_[a] = exp_[(n1 - log_[a]) % n1];
    if (p_ != 2 && order_ <= 256) {
      add_.resize(static_cast<std::size_t>(order_) * order_);
      for (elem_t a = 0; a < order_; ++a)
        for (elem_t b = 0; b < order_; ++b) add_[a * order_ + b] = add_slow(a, b);
    }
  }

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return m_; }
  std::uint32_t order() const { return order_; }
  /// Monic defining polynomial, coefficients low to high (length m+1).
  const std::vector<unsigned>& defining_poly() const { return poly_; }
  elem_t generator() const { return order_ == 2 ? 1 : exp_[1]; }

  elem_t add(elem_t a, elem_t b) const {
    if (p_ == 2) return a ^ b;
    if (!add_.empty()) return add_[a * order_ + b];
    return add_slow(a, b);
  }
  elem_t neg(elem_t a) const { return neg_[a]; }
  elem_t sub(elem_t a, elem_t b) const { return add(a, neg_[b]); }
  elem_t mul(elem_t a, elem_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  elem_t inv(elem_t a) const {
    if (a == 0) throw invalid_argument("inverse of zero");
    return inv_[a];
  }
  elem_t div(elem_t a, elem_t b) const { return mul(a, inv(b)); }
  elem_t pow(elem_t a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t n1 = order_ - 1;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % n1)) % n1];
  }
  /// Discrete log to the generator; a must be nonzero.
  std::uint32_t log(elem_t a) const { return log_[a]; }
  elem_t exp(std::uint64_t k) const { return exp_[k % (order_ - 1)]; }
  /// Image of the integer k in the prime subfield.
  elem_t from_int(long long k) const {
    long long r = k % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<elem_t>(r);
  }

  std::uint32_t multiplicative_order(elem_t a) const {
    if (a == 0) throw invalid_argument("zero has no multiplicative order");
    const std::uint32_t n1 = order_ - 1;
    return n1 / std::gcd(n1, log_[a]);
  }

  /// Degrees k of the subfields GF(p^k).
  std::vector<unsigned> subfield_lattice() const { return nt::divisors(m_); }

  bool in_subfield(elem_t a, unsigned k) const {
    if (m_ % k != 0) return false;
    if (a == 0) return true;
    const std::uint64_t ratio = (static_cast<std::uint64_t>(order_) - 1) /
                                (nt::checked_pow(p_, k) - 1);
    return log_[a] % ratio == 0;
  }

  /// Least k with a in GF(p^k).
  unsigned degree_of(elem_t a) const {
    for (unsigned k : nt::divisors(m_)) {
      if (in_subfield(a, k)) return k;
    }
    return m_;
  }

  std::vector<unsigned> digits(elem_t a) const {
    std::vector<unsigned> d(m_, 0);
    for (unsigned j = 0; j < m_; ++j) {
      d[j] = a % p_;
      a /= p_;
    }
    return d;
  }
  elem_t from_digits(const std::vector<unsigned>& d) const {
    elem_t r = 0;
    for (unsigned j = m_; j-- > 0;) r = r * p_ + d[j];
    return r;
  }

  std::string name() const { return "GF(" + std::to_string(order_) + ")"; }

 private:
  elem_t add_slow(elem_t a, elem_t b) const {
    elem_t r = 0, w = 1;
    for (unsigned j = 0; j < m_; ++j) {
      r += ((a % p_ + b % p_) % p_) * w;
      a /= p_;
      b /= p_;
      w *= p_;
    }
    return r;
  }

  unsigned p_;
  unsigned m_;
  std::uint32_t order_ = 0;
  std::vector<unsigned> poly_;
  std::vector<elem_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<elem_t> neg_;
  std::vector<elem_t> inv_;
  std::vector<std::uint16_t> add_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

/// The field GF(p^m) with its Conway defining polynomial. Results are cached,
/// so repeated calls return the same object.
inline FieldPtr make_field(unsigned p, unsigned m, const FieldCaps& caps = {}) {
  if (!nt::is_prime(p)) throw invalid_argument(std::to_string(p) + " is not prime");
  if (m < 1) throw invalid_argument("field degree must be at least 1");
  if (m > caps.max_degree) {
    throw cap_exceeded("field degree " + std::to_string(m) + " exceeds cap " +
                       std::to_string(caps.max_degree));
  }
  std::uint64_t order = 1;
  for (unsigned i = 0; i < m; ++i) {
    order *= p;
    if (order > caps.max_order) {
      throw cap_exceeded("field order " + std::to_string(p) + "^" + std::to_string(m) +
                         " exceeds cap " + std::to_string(caps.max_order));
    }
  }
  static std::recursive_mutex mu;
  static std::map<std::pair<unsigned, unsigned>, FieldPtr> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto key = std::make_pair(p, m);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const auto& cp = detail::conway_polynomial(p, m);
  std::vector<unsigned> poly(cp.begin(), cp.end());
  auto f = std::make_shared<const FieldCtx>(p, m, std::move(poly));
  cache.emplace(key, f);
  return f;
}

inline FieldPtr field_of_order(std::uint64_t q, const FieldCaps& caps = {}) {
  auto pp = nt::require_prime_power(q);
  return make_field(static_cast<unsigned>(pp.p), pp.exponent, caps);
}

/// Order of the compositum of GF(q1) and GF(q2): p^lcm(d1, d2).
inline std::uint64_t compositum(std::uint64_t q1, std::uint64_t q2) {
  auto a = nt::require_prime_power(q1);
  auto b = nt::require_prime_power(q2);
  if (a.p != b.p) {
    throw invalid_argument("mismatched characteristic: " + std::to_string(q1) + " and " +
                           std::to_string(q2));
  }
  return nt::checked_pow(a.p, std::lcm(a.exponent, b.exponent));
}

/// Field homomorphism GF(p^a) -> GF(p^b), a | b, sending the source generator
/// to g^((p^b - 1)/(p^a - 1)) for the target generator g.
class Embedding {
 public:
  Embedding(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_->characteristic() != dst_->characteristic()) {
      throw invalid_argument("embedding between fields of different characteristic");
    }
    if (dst_->degree() % src_->degree() != 0) {
      throw invalid_argument("cannot embed " + src_->name() + " into " + dst_->name());
    }
    ratio_ = (dst_->order() - 1) / (src_->order() - 1);
    table_.assign(src_->order(), 0);
    for (elem_t a = 1; a < src_->order(); ++a) {
      table_[a] = dst_->exp(static_cast<std::uint64_t>(src_->log(a)) * ratio_);
    }
  }

  const FieldPtr& src() const { return src_; }
  const FieldPtr& dst() const { return dst_; }
  elem_t image_of_generator() const { return table_[src_->generator()]; }
  elem_t operator()(elem_t a) const { return table_[a]; }
  const std::vector<elem_t>& table() const { return table_; }

  bool in_image(elem_t b) const { return b == 0 || dst_->log(b) % ratio_ == 0; }
  std::optional<elem_t> preimage(elem_t b) const {
    if (b == 0) return elem_t{0};
    if (dst_->log(b) % ratio_ != 0) return std::nullopt;
    return src_->exp(dst_->log(b) / ratio_);
  }

 private:
  FieldPtr src_;
  FieldPtr dst_;
  std::uint32_t ratio_ = 1;
  std::vector<elem_t> table_;
};

inline Embedding embed(const FieldPtr& src, const FieldPtr& dst) { return Embedding(src, dst); }

/// Maximal subfields of `top` that contain `base`, ascending by order. There
/// are exactly omega([top : base]) of them.
inline std::vector<FieldPtr> maximal_subfields_containing(const FieldPtr& top, const FieldPtr& base) {
  if (top->characteristic() != base->characteristic() || top->degree() % base->degree() != 0) {
    throw invalid_argument(base->name() + " is not a subfield of " + top->name());
  }
  const unsigned rel = top->degree() / base->degree();
  std::vector<FieldPtr> out;
  for (auto r : nt::prime_factors(rel)) {
    out.push_back(make_field(top->characteristic(), top->degree() / static_cast<unsigned>(r)));
  }
  std::sort(out.begin(), out.end(),
            [](const FieldPtr& a, const FieldPtr& b) { return a->order() < b->order(); });
  return out;
}

/// All maximal subfields of f, ascending by order.
inline std::vector<FieldPtr> maximal_subfields(const FieldPtr& f) {
  return maximal_subfields_containing(f, make_field(f->characteristic(), 1));
}

}  // namespace ringcover
