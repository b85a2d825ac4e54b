#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "ringcover/errors.hpp"
#include "ringcover/field.hpp"
#include "ringcover/matrix.hpp"

namespace ringcover {

/// A subspace of GF(q)^n stored by its reduced row echelon basis, so equal
/// subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;

  /// Span of the given vectors.
  static Subspace span(const FieldPtr& f, std::size_t n, const std::vector<Vec>& vectors) {
    MatGF m = MatGF::from_rows(f, n, vectors);
    return from_matrix(std::move(m));
  }
  /// Row space of a matrix.
  static Subspace from_matrix(MatGF m) {
    auto piv = m.rref_in_place();
    const std::size_t k = piv.size();
    std::vector<elem_t> rows(m.entries().begin(), m.entries().begin() + static_cast<std::ptrdiff_t>(k * m.cols()));
    Subspace s;
    s.basis_ = MatGF(m.field(), k, m.cols(), std::move(rows));
    s.pivots_ = std::move(piv);
    return s;
  }
  static Subspace zero(const FieldPtr& f, std::size_t n) { return from_matrix(MatGF(f, 0, n)); }
  static Subspace whole(const FieldPtr& f, std::size_t n) { return from_matrix(MatGF::identity(f, n)); }

  const FieldPtr& field() const { return basis_.field(); }
  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  /// k x n RREF basis matrix.
  const MatGF& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<Vec> basis_vectors() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
    return out;
  }

  bool contains(Vec v) const {
    const auto& F = field();
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      const elem_t c = v[pivots_[r]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = F->sub(v[j], F->mul(c, basis_(r, j)));
    }
    return std::all_of(v.begin(), v.end(), [](elem_t x) { return x == 0; });
  }

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  /// Lexicographic on the row-major RREF entries.
  bool operator<(const Subspace& o) const {
    if (basis_.rows() != o.basis_.rows()) return basis_.rows() < o.basis_.rows();
    return basis_.entries() < o.basis_.entries();
  }

 private:
  MatGF basis_;
  std::vector<std::size_t> pivots_;
};

/// A maps U into itself.
inline bool stabilizes(const MatGF& A, const Subspace& U) {
  if (A.rows() != U.ambient_dim() || A.cols() != U.ambient_dim()) throw invalid_argument("stabilizes: dimension mismatch");
  for (std::size_t i = 0; i < U.dim(); ++i) {
    if (!U.contains(A * U.basis().row(i))) return false;
  }
  return true;
}

/// U + W = V and U meets W trivially.
inline bool is_direct_sum(const Subspace& U, const Subspace& W) {
  const std::size_t n = U.ambient_dim();
  if (U.dim() + W.dim() != n) return false;
  std::vector<Vec> rows = U.basis_vectors();
  for (auto& v : W.basis_vectors()) rows.push_back(v);
  return MatGF::from_rows(U.field(), n, rows).rank() == n;
}

/// Every k-dimensional subspace of GF(q)^n exactly once, sorted
/// lexicographically by RREF rows.
inline std::vector<Subspace> enumerate_subspaces(std::size_t n, std::size_t k, const FieldPtr& f) {
  if (k > n) throw invalid_argument("enumerate_subspaces: k exceeds n");
  std::vector<Subspace> out;
  const elem_t q = f->order();
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    // free slots: (row r, col j) with j > piv[r] and j not a pivot
    std::vector<bool> is_piv(n, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t j = piv[r] + 1; j < n; ++j)
        if (!is_piv[j]) slots.emplace_back(r, j);
    std::vector<elem_t> digit(slots.size(), 0);
    while (true) {
      MatGF m(f, k, n);
      for (std::size_t r = 0; r < k; ++r) m(r, piv[r]) = 1;
      for (std::size_t s = 0; s < slots.size(); ++s) m(slots[s].first, slots[s].second) = digit[s];
      out.push_back(Subspace::from_matrix(std::move(m)));
      std::size_t s = slots.size();
      bool done = true;
      while (s > 0) {
        --s;
        if (++digit[s] < q) {
          done = false;
          break;
        }
        digit[s] = 0;
      }
      if (done) break;
    }
    // next pivot tuple
    std::size_t i = k;
    bool advanced = false;
    while (i > 0) {
      --i;
      if (piv[i] < n - k + i) {
        ++piv[i];
        for (std::size_t j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Span of the standard basis vectors at the non-pivot coordinates of U.
/// Always a complement of U, but distinct subspaces can share it.
inline Subspace pivot_complement(const Subspace& U) {
  const std::size_t n = U.ambient_dim();
  if (U.dim() == 0 || U.dim() >= n) throw invalid_argument("pivot_complement: subspace must be proper and nonzero");
  std::vector<bool> is_piv(n, false);
  for (auto c : U.pivots()) is_piv[c] = true;
  std::vector<Vec> rows;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_piv[j]) continue;
    Vec e(n, 0);
    e[j] = 1;
    rows.push_back(std::move(e));
  }
  return Subspace::span(U.field(), n, rows);
}

/// A fixed bijection from k-dimensional to (n-k)-dimensional subspaces with
/// U + phi(U) = V, for 1 <= k < n/2. Built as a perfect matching in the
/// complement graph, processing U in enumeration order and preferring the
/// pivot complement, then candidates in enumeration order.
class ComplementMap {
 public:
  ComplementMap(const FieldPtr& f, std::size_t n, std::size_t k) : n_(n), k_(k) {
    if (k < 1 || 2 * k >= n) throw out_of_regime("complement bijection needs 1 <= k < n/2");
    small_ = enumerate_subspaces(n, k, f);
    large_ = enumerate_subspaces(n, n - k, f);
    for (std::size_t i = 0; i < large_.size(); ++i) large_index_.emplace(large_[i].basis().entries(), i);
    match_small_.assign(small_.size(), npos);
    match_large_.assign(large_.size(), npos);
    adj_.resize(small_.size());
    for (std::size_t u = 0; u < small_.size(); ++u) {
      std::vector<bool> visited(large_.size(), false);
      if (!augment(u, visited)) throw error("complement bijection: no perfect matching");
    }
  }

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  const std::vector<Subspace>& domain() const { return small_; }
  const std::vector<Subspace>& codomain() const { return large_; }
  std::size_t index_of(const Subspace& U) const {
    auto it = std::lower_bound(small_.begin(), small_.end(), U);
    if (it == small_.end() || *it != U) throw invalid_argument("subspace not in the domain of the complement map");
    return static_cast<std::size_t>(it - small_.begin());
  }
  const Subspace& operator()(std::size_t i) const { return large_[match_small_[i]]; }
  const Subspace& operator()(const Subspace& U) const { return (*this)(index_of(U)); }
  /// Index of phi^{-1}(W) in the domain.
  std::size_t preimage_index(const Subspace& W) const {
    auto it = large_index_.find(W.basis().entries());
    if (it == large_index_.end()) throw invalid_argument("subspace not in the codomain of the complement map");
    return match_large_[it->second];
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  const std::vector<std::size_t>& candidates(std::size_t u) {
    auto& a = adj_[u];
    if (!a.empty()) return a;
    const auto pc = pivot_complement(small_[u]);
    const std::size_t first = large_index_.at(pc.basis().entries());
    a.push_back(first);
    for (std::size_t w = 0; w < large_.size(); ++w) {
      if (w != first && is_direct_sum(small_[u], large_[w])) a.push_back(w);
    }
    return a;
  }

  bool augment(std::size_t u, std::vector<bool>& visited) {
    const auto& cand = candidates(u);
    for (auto w : cand) {
      if (match_large_[w] == npos) {
        match_large_[w] = u;
        match_small_[u] = w;
        return true;
      }
    }
    for (auto w : cand) {
      if (visited[w]) continue;
      visited[w] = true;
      if (augment(match_large_[w], visited)) {
        match_large_[w] = u;
        match_small_[u] = w;
        return true;
      }
    }
    return false;
  }

  std::size_t n_;
  std::size_t k_;
  std::vector<Subspace> small_;
  std::vector<Subspace> large_;
  std::map<std::vector<elem_t>, std::size_t> large_index_;
  std::vector<std::size_t> match_small_;
  std::vector<std::size_t> match_large_;
  std::vector<std::vector<std::size_t>> adj_;
};

/// Cached ComplementMap per (field, n, k).
inline const ComplementMap& complement_map(const FieldPtr& f, std::size_t n, std::size_t k) {
  static std::mutex mu;
  static std::map<std::tuple<unsigned, unsigned, std::size_t, std::size_t>, std::unique_ptr<ComplementMap>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(f->characteristic(), f->degree(), n, k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<ComplementMap>(f, n, k)).first;
  return *it->second;
}

}  // namespace ringcover
