#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ringcover/errors.hpp"
#include "ringcover/field.hpp"
#include "ringcover/matrix.hpp"
#include "ringcover/subspace.hpp"

namespace ringcover {

/// Byte-table arithmetic for fields of order at most 256.
class SmallField {
 public:
  explicit SmallField(FieldPtr f) : f_(std::move(f)) {
    q_ = f_->order();
    if (q_ > 256) throw cap_exceeded("packed kernels need a field of order at most 256");
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    for (unsigned a = 0; a < q_; ++a) {
      neg_[a] = static_cast<std::uint8_t>(f_->neg(a));
      if (a) inv_[a] = static_cast<std::uint8_t>(f_->inv(a));
      for (unsigned b = 0; b < q_; ++b) {
        add_[a * q_ + b] = static_cast<std::uint8_t>(f_->add(a, b));
        mul_[a * q_ + b] = static_cast<std::uint8_t>(f_->mul(a, b));
      }
    }
  }

  const FieldPtr& ctx() const { return f_; }
  unsigned order() const { return q_; }
  std::uint8_t add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
  std::uint8_t sub(unsigned a, unsigned b) const { return add_[a * q_ + neg_[b]]; }
  std::uint8_t mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
  std::uint8_t neg(unsigned a) const { return neg_[a]; }
  std::uint8_t inv(unsigned a) const { return inv_[a]; }

 private:
  FieldPtr f_;
  unsigned q_ = 0;
  std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

/// n x n matrix, n <= 8, entries as bytes in row-major order.
struct PackedMat {
  std::array<std::uint8_t, 64> a{};
  bool operator==(const PackedMat& o) const { return a == o.a; }
  bool operator<(const PackedMat& o) const { return a < o.a; }
};

struct PackedVec {
  std::array<std::uint8_t, 8> a{};
  bool operator==(const PackedVec& o) const { return a == o.a; }
};

constexpr unsigned kMaxPackedDim = 8;

/// Matrix and vector arithmetic on packed values over a SmallField.
class PackedAlgebra {
 public:
  PackedAlgebra(FieldPtr f, unsigned n) : F_(std::move(f)), n_(n) {
    if (n < 1 || n > kMaxPackedDim) throw cap_exceeded("packed kernels need 1 <= n <= 8");
  }

  const SmallField& field() const { return F_; }
  unsigned n() const { return n_; }

  std::uint8_t& at(PackedMat& m, unsigned i, unsigned j) const { return m.a[i * kMaxPackedDim + j]; }
  std::uint8_t at(const PackedMat& m, unsigned i, unsigned j) const { return m.a[i * kMaxPackedDim + j]; }

  PackedMat identity() const {
    PackedMat m;
    for (unsigned i = 0; i < n_; ++i) at(m, i, i) = 1;
    return m;
  }
  PackedMat mul(const PackedMat& x, const PackedMat& y) const {
    PackedMat r;
    for (unsigned i = 0; i < n_; ++i)
      for (unsigned k = 0; k < n_; ++k) {
        const unsigned c = at(x, i, k);
        if (!c) continue;
        for (unsigned j = 0; j < n_; ++j) at(r, i, j) = F_.add(at(r, i, j), F_.mul(c, at(y, k, j)));
      }
    return r;
  }
  PackedVec apply(const PackedMat& m, const PackedVec& v) const {
    PackedVec r;
    for (unsigned i = 0; i < n_; ++i) {
      unsigned acc = 0;
      for (unsigned j = 0; j < n_; ++j) acc = F_.add(acc, F_.mul(at(m, i, j), v.a[j]));
      r.a[i] = static_cast<std::uint8_t>(acc);
    }
    return r;
  }
  bool commutes(const PackedMat& x, const PackedMat& y) const { return mul(x, y) == mul(y, x); }

  /// Determinant by elimination on a copy.
  std::uint8_t det(PackedMat m) const {
    unsigned d = 1;
    for (unsigned c = 0; c < n_; ++c) {
      unsigned p = c;
      while (p < n_ && at(m, p, c) == 0) ++p;
      if (p == n_) return 0;
      if (p != c) {
        for (unsigned j = c; j < n_; ++j) std::swap(at(m, p, j), at(m, c, j));
        d = F_.neg(d);
      }
      const unsigned piv = at(m, c, c);
      d = F_.mul(d, piv);
      const unsigned inv = F_.inv(piv);
      for (unsigned i = c + 1; i < n_; ++i) {
        const unsigned fac = F_.mul(at(m, i, c), inv);
        if (!fac) continue;
        for (unsigned j = c + 1; j < n_; ++j) at(m, i, j) = F_.sub(at(m, i, j), F_.mul(fac, at(m, c, j)));
      }
    }
    return static_cast<std::uint8_t>(d);
  }

  /// det(m - beta I) == 0
  bool has_eigenvalue(const PackedMat& m, unsigned beta) const {
    PackedMat t = m;
    for (unsigned i = 0; i < n_; ++i) at(t, i, i) = F_.sub(at(t, i, i), beta);
    return det(t) == 0;
  }

  PackedMat pack(const MatGF& m) const {
    if (m.rows() != n_ || m.cols() != n_) throw invalid_argument("pack: dimension mismatch");
    PackedMat r;
    for (unsigned i = 0; i < n_; ++i)
      for (unsigned j = 0; j < n_; ++j) at(r, i, j) = static_cast<std::uint8_t>(m(i, j));
    return r;
  }
  MatGF unpack(const PackedMat& m) const {
    MatGF r(F_.ctx(), n_, n_);
    for (unsigned i = 0; i < n_; ++i)
      for (unsigned j = 0; j < n_; ++j) r(i, j) = at(m, i, j);
    return r;
  }
  PackedVec pack(const Vec& v) const {
    PackedVec r;
    for (unsigned i = 0; i < n_; ++i) r.a[i] = static_cast<std::uint8_t>(v[i]);
    return r;
  }
  Vec unpack(const PackedVec& v) const { return Vec(v.a.begin(), v.a.begin() + n_); }

  /// Base-q digits, coordinate 0 least significant.
  std::uint64_t code(const PackedVec& v) const {
    std::uint64_t c = 0;
    for (unsigned i = n_; i-- > 0;) c = c * F_.order() + v.a[i];
    return c;
  }
  PackedVec decode(std::uint64_t c) const {
    PackedVec v;
    for (unsigned i = 0; i < n_; ++i) {
      v.a[i] = static_cast<std::uint8_t>(c % F_.order());
      c /= F_.order();
    }
    return v;
  }

 private:
  SmallField F_;
  unsigned n_;
};

/// Codes of m v for every v in GF(q)^n, indexed by the code of v. Each
/// entry is obtained from the code with its lowest nonzero digit d cleared
/// by adding d times one column of m.
inline void image_table(const PackedAlgebra& alg, const PackedMat& m, std::vector<PackedVec>& scratch,
                        std::vector<std::uint32_t>& img) {
  const unsigned q = alg.field().order(), n = alg.n();
  const auto& F = alg.field();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) total *= q;
  scratch.resize(total);
  img.resize(total);
  scratch[0] = PackedVec{};
  img[0] = 0;
  for (std::uint64_t v = 1; v < total; ++v) {
    std::uint64_t c = v, step = 1;
    unsigned j = 0;
    while (c % q == 0) {
      c /= q;
      step *= q;
      ++j;
    }
    const unsigned d = static_cast<unsigned>(c % q);
    const PackedVec& prev = scratch[v - d * step];
    PackedVec& cur = scratch[v];
    for (unsigned i = 0; i < n; ++i) cur.a[i] = F.add(prev.a[i], F.mul(d, alg.at(m, i, j)));
    img[v] = static_cast<std::uint32_t>(alg.code(cur));
  }
}

/// Entry-wise image of a packed matrix under a field embedding.
inline PackedMat map_packed(const PackedMat& m, const std::vector<std::uint8_t>& table, unsigned n) {
  PackedMat r;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) r.a[i * kMaxPackedDim + j] = table[m.a[i * kMaxPackedDim + j]];
  return r;
}

inline std::vector<std::uint8_t> embedding_table(const Embedding& e) {
  std::vector<std::uint8_t> t(e.src()->order());
  for (elem_t a = 0; a < e.src()->order(); ++a) t[a] = static_cast<std::uint8_t>(e(a));
  return t;
}

/// A subspace with constant-time membership by vector code when q^n is small,
/// falling back to reduction against its RREF basis.
class PackedSubspace {
 public:
  static constexpr std::uint64_t kBitsetLimit = 1ULL << 20;

  PackedSubspace(const PackedAlgebra& alg, const Subspace& U) : alg_(&alg), sub_(U) {
    for (auto& b : U.basis_vectors()) {
      basis_.push_back(alg.pack(b));
      basis_codes_.push_back(alg.code(basis_.back()));
    }
    std::uint64_t total = 1;
    for (unsigned i = 0; i < alg.n(); ++i) total *= alg.field().order();
    if (total <= kBitsetLimit) {
      bits_.assign((total + 63) / 64, 0);
      // enumerate the span
      const unsigned q = alg.field().order();
      std::vector<unsigned> coef(basis_.size(), 0);
      while (true) {
        PackedVec v;
        for (std::size_t r = 0; r < basis_.size(); ++r)
          for (unsigned j = 0; j < alg.n(); ++j)
            v.a[j] = alg.field().add(v.a[j], alg.field().mul(coef[r], basis_[r].a[j]));
        const auto c = alg.code(v);
        bits_[c >> 6] |= 1ULL << (c & 63);
        std::size_t i = coef.size();
        bool done = true;
        while (i > 0) {
          --i;
          if (++coef[i] < q) {
            done = false;
            break;
          }
          coef[i] = 0;
        }
        if (done) break;
      }
    }
  }

  const Subspace& subspace() const { return sub_; }
  const std::vector<PackedVec>& basis() const { return basis_; }
  const std::vector<std::uint64_t>& basis_codes() const { return basis_codes_; }
  bool has_bitset() const { return !bits_.empty(); }
  bool contains_code(std::uint64_t c) const { return (bits_[c >> 6] >> (c & 63)) & 1U; }
  /// img[c] is the code of m applied to the vector with code c.
  bool stabilized_by_images(const std::vector<std::uint32_t>& img) const {
    for (auto b : basis_codes_)
      if (!contains_code(img[b])) return false;
    return true;
  }

  bool contains(const PackedVec& v) const {
    if (!bits_.empty()) {
      const auto c = alg_->code(v);
      return (bits_[c >> 6] >> (c & 63)) & 1U;
    }
    return sub_.contains(alg_->unpack(v));
  }
  bool stabilized_by(const PackedMat& m) const {
    for (const auto& b : basis_) {
      if (!contains(alg_->apply(m, b))) return false;
    }
    return true;
  }

 private:
  const PackedAlgebra* alg_;
  Subspace sub_;
  std::vector<PackedVec> basis_;
  std::vector<std::uint64_t> basis_codes_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace ringcover
