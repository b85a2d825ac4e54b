#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ringcover/errors.hpp"
#include "ringcover/field.hpp"
#include "ringcover/formulas.hpp"
#include "ringcover/matrix.hpp"

namespace ringcover {

/// (h, v, beta) with h in M_n(q1), v in GF(q)^n, beta in GF(q2); stands for
/// the block matrix [[h, v], [0, beta]] in M_{n+1}(q).
struct AglElement {
  MatGF h;
  Vec v;
  elem_t beta = 0;

  bool operator==(const AglElement& o) const { return h == o.h && v == o.v && beta == o.beta; }
};

/// The ring A(n, q1, q2) with radical J (the v-block) and the fixed
/// complement S = S1 + S2 (v = 0).
class AglRing {
 public:
  AglRing(unsigned n, std::uint64_t q1, std::uint64_t q2)
      : num_(agl_numbers(n, q1, q2)),
        F1_(field_of_order(q1)),
        F2_(field_of_order(q2)),
        F_(field_of_order(num_.q)),
        e1_(F1_, F_),
        e2_(F2_, F_) {}

  const AglNumbers& numbers() const { return num_; }
  unsigned n() const { return num_.n; }
  const FieldPtr& F1() const { return F1_; }
  const FieldPtr& F2() const { return F2_; }
  const FieldPtr& F() const { return F_; }
  const Embedding& emb1() const { return e1_; }
  const Embedding& emb2() const { return e2_; }
  std::string spec() const {
    return "agl:" + std::to_string(num_.n) + "," + std::to_string(num_.q1) + "," + std::to_string(num_.q2);
  }

  /// q1^(n^2) * q^n * q2
  BigInt order() const {
    return ipow(BigInt(num_.q1), num_.n * num_.n) * ipow(BigInt(num_.q), num_.n) * BigInt(num_.q2);
  }
  /// |S| = q1^(n^2) * q2
  BigInt complement_order() const { return ipow(BigInt(num_.q1), num_.n * num_.n) * BigInt(num_.q2); }
  /// |S(R)| = |J| = q^n
  BigInt distinct_complements() const { return ipow(BigInt(num_.q), num_.n); }

  AglElement zero() const { return {MatGF(F1_, n(), n()), Vec(n(), 0), 0}; }
  AglElement one() const { return {MatGF::identity(F1_, n()), Vec(n(), 0), 1}; }
  AglElement make(MatGF h, Vec v, elem_t beta) const {
    if (h.rows() != n() || h.cols() != n() || v.size() != n()) throw invalid_argument("AGL element has wrong block sizes");
    return {std::move(h), std::move(v), beta};
  }
  /// Element of J.
  AglElement radical_element(const Vec& x) const { return make(MatGF(F1_, n(), n()), x, 0); }

  AglElement add(const AglElement& a, const AglElement& b) const {
    Vec v(n());
    for (unsigned i = 0; i < n(); ++i) v[i] = F_->add(a.v[i], b.v[i]);
    return {a.h + b.h, std::move(v), F2_->add(a.beta, b.beta)};
  }
  AglElement neg(const AglElement& a) const {
    Vec v(n());
    for (unsigned i = 0; i < n(); ++i) v[i] = F_->neg(a.v[i]);
    return {MatGF(F1_, n(), n()) - a.h, std::move(v), F2_->neg(a.beta)};
  }
  AglElement sub(const AglElement& a, const AglElement& b) const { return add(a, neg(b)); }
  /// (h, v, b)(h', v', b') = (hh', hv' + vb', bb')
  AglElement mul(const AglElement& a, const AglElement& b) const {
    const Vec hv = apply_h(a.h, b.v);
    const elem_t bb = e2_(b.beta);
    Vec v(n());
    for (unsigned i = 0; i < n(); ++i) v[i] = F_->add(hv[i], F_->mul(a.v[i], bb));
    return {a.h * b.h, std::move(v), F2_->mul(a.beta, b.beta)};
  }

  bool in_radical(const AglElement& r) const { return r.h == MatGF(F1_, n(), n()) && r.beta == 0; }
  bool in_complement_S(const AglElement& r) const { return is_zero(r.v); }

  /// r lies in S^{1+x}: v = hx - x beta.
  bool in_complement(const AglElement& r, const Vec& x) const { return r.v == twist(r.h, r.beta, x); }
  /// s^{1+x} = s + sx - xs for s in S.
  AglElement conjugate_complement_element(const AglElement& s, const Vec& x) const {
    require_in_S(s);
    return {s.h, twist(s.h, s.beta, x), s.beta};
  }
  /// hx - x beta over GF(q).
  Vec twist(const MatGF& h, elem_t beta, const Vec& x) const {
    Vec hx = apply_h(h, x);
    const elem_t b = e2_(beta);
    for (unsigned i = 0; i < n(); ++i) hx[i] = F_->sub(hx[i], F_->mul(x[i], b));
    return hx;
  }
  /// s commutes with the radical element x: hx = x beta.
  bool centralizes(const AglElement& s, const Vec& x) const {
    require_in_S(s);
    return is_zero(twist(s.h, s.beta, x));
  }
  /// s lies in C_S(x) for some nonzero x: det(h - beta I) = 0 over GF(q).
  bool in_centralizer_union(const AglElement& s) const {
    require_in_S(s);
    return (s.h.mapped(e1_) - MatGF::scalar(F_, n(), e2_(s.beta))).det() == 0;
  }

  /// [[h, v], [0, beta]] over GF(q).
  MatGF to_dense(const AglElement& r) const {
    MatGF m(F_, n() + 1, n() + 1);
    for (unsigned i = 0; i < n(); ++i) {
      for (unsigned j = 0; j < n(); ++j) m(i, j) = e1_(r.h(i, j));
      m(i, n()) = r.v[i];
    }
    m(n(), n()) = e2_(r.beta);
    return m;
  }
  /// Inverse of to_dense; throws if the matrix is not of AGL shape.
  AglElement from_dense(const MatGF& m) const {
    if (m.rows() != n() + 1 || m.cols() != n() + 1) throw invalid_argument("dense matrix has wrong size");
    AglElement r = zero();
    for (unsigned i = 0; i < n(); ++i) {
      for (unsigned j = 0; j < n(); ++j) {
        auto x = e1_.preimage(m(i, j));
        if (!x) throw invalid_argument("entry outside GF(q1)");
        r.h(i, j) = *x;
      }
      r.v[i] = m(i, n());
      if (m(n(), i) != 0) throw invalid_argument("dense matrix is not block upper triangular");
    }
    auto b = e2_.preimage(m(n(), n()));
    if (!b) throw invalid_argument("corner entry outside GF(q2)");
    r.beta = *b;
    return r;
  }

  /// Mixed-radix index: beta least significant, then v (q-ary, v_0 first),
  /// then h (q1-ary, row-major, h(0,0) first).
  std::uint64_t index(const AglElement& r) const {
    require_indexable();
    std::uint64_t hc = 0;
    for (std::size_t k = n() * n(); k-- > 0;) hc = hc * num_.q1 + r.h.entries()[k];
    std::uint64_t vc = 0;
    for (unsigned i = n(); i-- > 0;) vc = vc * num_.q + r.v[i];
    return (hc * qn_() + vc) * num_.q2 + r.beta;
  }
  AglElement element(std::uint64_t idx) const {
    require_indexable();
    AglElement r = zero();
    r.beta = static_cast<elem_t>(idx % num_.q2);
    idx /= num_.q2;
    for (unsigned i = 0; i < n(); ++i) {
      r.v[i] = static_cast<elem_t>(idx % num_.q);
      idx /= num_.q;
    }
    std::vector<elem_t> e(n() * n());
    for (auto& x : e) {
      x = static_cast<elem_t>(idx % num_.q1);
      idx /= num_.q1;
    }
    r.h = MatGF(F1_, n(), n(), std::move(e));
    return r;
  }
  /// Number of elements when it fits in 64 bits, else throws cap_exceeded.
  std::uint64_t order_u64() const {
    require_indexable();
    return static_cast<std::uint64_t>(order());
  }

  Vec apply_h(const MatGF& h, const Vec& x) const {
    Vec r(n(), 0);
    for (unsigned i = 0; i < n(); ++i) {
      elem_t acc = 0;
      for (unsigned j = 0; j < n(); ++j) acc = F_->add(acc, F_->mul(e1_(h(i, j)), x[j]));
      r[i] = acc;
    }
    return r;
  }

 private:
  static bool is_zero(const Vec& v) {
    for (auto x : v)
      if (x) return false;
    return true;
  }
  void require_in_S(const AglElement& s) const {
    if (!is_zero(s.v)) throw invalid_argument("element is not in the complement S (v != 0)");
  }
  void require_indexable() const {
    if (order() >= BigInt(1) << 62) throw cap_exceeded("ring too large to index: " + spec());
  }
  std::uint64_t qn_() const { return nt::checked_pow(num_.q, n()); }

  AglNumbers num_;
  FieldPtr F1_, F2_, F_;
  Embedding e1_, e2_;
};

}  // namespace ringcover
