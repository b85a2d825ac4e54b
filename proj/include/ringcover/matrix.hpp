#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ringcover/errors.hpp"
#include "ringcover/field.hpp"
#include "ringcover/poly.hpp"

namespace ringcover {

using Vec = std::vector<elem_t>;

/// Dense row-major matrix over a FieldCtx.
class MatGF {
 public:
  MatGF() = default;
  MatGF(FieldPtr f, std::size_t rows, std::size_t cols)
      : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  MatGF(FieldPtr f, std::size_t rows, std::size_t cols, std::vector<elem_t> entries)
      : f_(std::move(f)), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_) throw invalid_argument("matrix entry count mismatch");
  }

  static MatGF identity(const FieldPtr& f, std::size_t n) {
    MatGF m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static MatGF scalar(const FieldPtr& f, std::size_t n, elem_t c) {
    MatGF m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
  }
  /// Matrix whose columns are the given vectors.
  static MatGF from_columns(const FieldPtr& f, std::size_t rows, const std::vector<Vec>& cols) {
    MatGF m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }
  static MatGF from_rows(const FieldPtr& f, std::size_t cols, const std::vector<Vec>& rows) {
    MatGF m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
  }
  /// Companion matrix of a monic polynomial: ones on the subdiagonal, last
  /// column the negated low coefficients.
  static MatGF companion(const Poly& f) {
    if (!f.is_monic() || f.degree() < 1) throw invalid_argument("companion needs a monic polynomial of degree >= 1");
    const auto& F = f.field();
    const std::size_t k = static_cast<std::size_t>(f.degree());
    MatGF m(F, k, k);
    for (std::size_t i = 1; i < k; ++i) m(i, i - 1) = 1;
    for (std::size_t i = 0; i < k; ++i) m(i, k - 1) = F->neg(f.coeff(i));
    return m;
  }
  static MatGF block_diag(const MatGF& a, const MatGF& b) {
    MatGF m(a.f_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
    return m;
  }

  const FieldPtr& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<elem_t>& entries() const { return a_; }

  elem_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  elem_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec column(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vec row(std::size_t i) const { return Vec(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_), a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)); }

  bool operator==(const MatGF& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const MatGF& o) const { return !(*this == o); }

  MatGF operator+(const MatGF& o) const {
    check_same_shape(o);
    MatGF m(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_->add(a_[i], o.a_[i]);
    return m;
  }
  MatGF operator-(const MatGF& o) const {
    check_same_shape(o);
    MatGF m(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_->sub(a_[i], o.a_[i]);
    return m;
  }
  MatGF operator*(const MatGF& o) const {
    if (cols_ != o.rows_) throw invalid_argument("matrix product dimension mismatch");
    MatGF m(f_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const elem_t c = (*this)(i, k);
        if (c == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) m(i, j) = f_->add(m(i, j), f_->mul(c, o(k, j)));
      }
    }
    return m;
  }
  Vec operator*(const Vec& v) const {
    if (v.size() != cols_) throw invalid_argument("matrix-vector dimension mismatch");
    Vec r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      elem_t acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc = f_->add(acc, f_->mul((*this)(i, j), v[j]));
      r[i] = acc;
    }
    return r;
  }
  MatGF scaled(elem_t c) const {
    MatGF m(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_->mul(a_[i], c);
    return m;
  }
  MatGF transpose() const {
    MatGF m(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  MatGF pow(std::uint64_t e) const {
    MatGF r = identity(f_, rows_), b = *this;
    while (e > 0) {
      if (e & 1U) r = r * b;
      e >>= 1U;
      if (e > 0) b = b * b;
    }
    return r;
  }
  /// Entries pushed into a larger field.
  MatGF mapped(const Embedding& e) const {
    MatGF m(e.dst(), rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = e(a_[i]);
    return m;
  }

  /// In-place reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref_in_place() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && (*this)(p, c) == 0) ++p;
      if (p == rows_) continue;
      if (p != r)
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
      const elem_t inv = f_->inv((*this)(r, c));
      for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = f_->mul((*this)(r, j), inv);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r) continue;
        const elem_t fac = (*this)(i, c);
        if (fac == 0) continue;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = f_->sub((*this)(i, j), f_->mul(fac, (*this)(r, j)));
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }
  MatGF rref() const {
    MatGF m = *this;
    m.rref_in_place();
    return m;
  }
  std::size_t rank() const {
    MatGF m = *this;
    return m.rref_in_place().size();
  }

  elem_t det() const {
    if (!is_square()) throw invalid_argument("determinant of a non-square matrix");
    MatGF m = *this;
    elem_t d = 1;
    const std::size_t n = rows_;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && m(p, c) == 0) ++p;
      if (p == n) return 0;
      if (p != c) {
        for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
        d = f_->neg(d);
      }
      d = f_->mul(d, m(c, c));
      const elem_t inv = f_->inv(m(c, c));
      for (std::size_t i = c + 1; i < n; ++i) {
        const elem_t fac = f_->mul(m(i, c), inv);
        if (fac == 0) continue;
        for (std::size_t j = c; j < n; ++j) m(i, j) = f_->sub(m(i, j), f_->mul(fac, m(c, j)));
      }
    }
    return d;
  }

  std::optional<MatGF> inverse() const {
    if (!is_square()) throw invalid_argument("inverse of a non-square matrix");
    const std::size_t n = rows_;
    MatGF aug(f_, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = 1;
    }
    auto piv = aug.rref_in_place();
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    MatGF inv(f_, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
  }
  bool is_invertible() const { return det() != 0; }

  /// Basis of the right null space {v : A v = 0}.
  std::vector<Vec> kernel() const {
    MatGF m = *this;
    const auto piv = m.rref_in_place();
    std::vector<bool> is_piv(cols_, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_piv[free]) continue;
      Vec v(cols_, 0);
      v[free] = 1;
      for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = f_->neg(m(r, free));
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /// A^N = I and A^(N/r) != I for every prime r | N.
  bool has_order(std::uint64_t N) const {
    const MatGF I = identity(f_, rows_);
    if (pow(N) != I) return false;
    for (auto r : nt::prime_factors(N)) {
      if (pow(N / r) == I) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) s += "; ";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += " ";
        s += std::to_string((*this)(i, j));
      }
    }
    return s + "]";
  }

 private:
  void check_same_shape(const MatGF& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw invalid_argument("matrix shape mismatch");
  }

  FieldPtr f_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<elem_t> a_;
};

inline std::ostream& operator<<(std::ostream& os, const MatGF& m) { return os << m.to_string(); }

/// Evaluate a polynomial at a square matrix.
inline MatGF poly_at(const Poly& p, const MatGF& A) {
  const auto& F = A.field();
  MatGF acc(F, A.rows(), A.cols());
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc = acc * A + MatGF::scalar(F, A.rows(), p.coeffs()[i]);
  }
  return acc;
}

/// Minimal polynomial of v relative to A: least monic m with m(A) v = 0.
inline Poly local_minimal_polynomial(const MatGF& A, const Vec& v) {
  const auto& F = A.field();
  const std::size_t n = A.rows();
  // Krylov vectors v, Av, A^2 v, ... until linear dependence.
  std::vector<Vec> krylov{v};
  while (true) {
    const std::size_t k = krylov.size();
    Vec next = A * krylov.back();
    MatGF sys(F, n, k + 1);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) sys(i, j) = krylov[j][i];
    for (std::size_t i = 0; i < n; ++i) sys(i, k) = next[i];
    MatGF r = sys;
    auto piv = r.rref_in_place();
    if (piv.size() == k) {
      // dependent: next = sum c_j krylov[j] with c_j read off the RREF
      std::vector<elem_t> coeffs(k + 1, 0);
      for (std::size_t row = 0; row < piv.size(); ++row) coeffs[piv[row]] = F->neg(r(row, k));
      coeffs[k] = 1;
      return Poly(F, std::move(coeffs));
    }
    krylov.push_back(std::move(next));
  }
}

/// Minimal polynomial of a square matrix: lcm of the local minimal
/// polynomials of the standard basis vectors.
inline Poly minimal_polynomial(const MatGF& A) {
  if (!A.is_square()) throw invalid_argument("minimal polynomial of a non-square matrix");
  const auto& F = A.field();
  Poly m = Poly::constant(F, 1);
  for (std::size_t j = 0; j < A.rows(); ++j) {
    Vec e(A.rows(), 0);
    e[j] = 1;
    m = poly_lcm(m, local_minimal_polynomial(A, e));
  }
  return m;
}

/// Characteristic polynomial det(xI - A) by reduction to Hessenberg form.
inline Poly characteristic_polynomial(const MatGF& A0) {
  if (!A0.is_square()) throw invalid_argument("characteristic polynomial of a non-square matrix");
  const auto& F = A0.field();
  const std::size_t n = A0.rows();
  MatGF H = A0;
  // similarity transform to upper Hessenberg
  for (std::size_t c = 0; c + 2 <= n; ++c) {
    std::size_t p = c + 1;
    while (p < n && H(p, c) == 0) ++p;
    if (p == n) continue;
    if (p != c + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(H(p, j), H(c + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(H(i, p), H(i, c + 1));
    }
    const elem_t inv = F->inv(H(c + 1, c));
    for (std::size_t i = c + 2; i < n; ++i) {
      const elem_t fac = F->mul(H(i, c), inv);
      if (fac == 0) continue;
      for (std::size_t j = 0; j < n; ++j) H(i, j) = F->sub(H(i, j), F->mul(fac, H(c + 1, j)));
      for (std::size_t r = 0; r < n; ++r) H(r, c + 1) = F->add(H(r, c + 1), F->mul(fac, H(r, i)));
    }
  }
  // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1}^{k} h_{j,j-1}) p_{i-1}
  std::vector<Poly> P;
  P.push_back(Poly::constant(F, 1));
  for (std::size_t k = 0; k < n; ++k) {
    Poly pk = Poly::linear(F, H(k, k)) * P[k];
    elem_t prod = 1;
    for (std::size_t i = k; i-- > 0;) {
      prod = F->mul(prod, H(i + 1, i));
      if (prod == 0) break;
      pk = pk - P[i].scaled(F->mul(H(i, k), prod));
    }
    P.push_back(std::move(pk));
  }
  return P[n];
}

}  // namespace ringcover
