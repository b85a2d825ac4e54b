#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ringcover/errors.hpp"
#include "ringcover/field.hpp"
#include "ringcover/matrix.hpp"
#include "ringcover/poly.hpp"
#include "ringcover/subspace.hpp"

namespace ringcover {

/// Minimal polynomial over F of the defining generator of GF(|F|^k).
inline Poly generator_minimal_polynomial(unsigned k, const FieldPtr& F) {
  if (k < 1) throw invalid_argument("degree must be at least 1");
  auto big = make_field(F->characteristic(), F->degree() * k);
  return minimal_polynomial_of(Embedding(F, big), big->generator());
}

/// Companion matrix of the minimal polynomial of the generator of GF(q^k)
/// over GF(q); its multiplicative order is q^k - 1.
inline MatGF singer_cycle(unsigned k, const FieldPtr& F) {
  return MatGF::companion(generator_minimal_polynomial(k, F));
}

/// Calls visit(g) for every g in GL(k, F) whose first column is e1, in
/// odometer order over the remaining columns.
inline void for_each_gl_fixing_e1(unsigned k, const FieldPtr& F, std::uint64_t cap,
                                  const std::function<void(const MatGF&)>& visit) {
  const std::uint64_t q = F->order();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < k * (k - 1); ++i) {
    total *= q;
    if (total > cap) throw cap_exceeded("GL enumeration exceeds cap");
  }
  std::vector<elem_t> digit(static_cast<std::size_t>(k) * (k - 1), 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    MatGF g(F, k, k);
    g(0, 0) = 1;
    std::size_t s = 0;
    for (unsigned j = 1; j < k; ++j)
      for (unsigned i = 0; i < k; ++i) g(i, j) = digit[s++];
    if (g.is_invertible()) visit(g);
    for (std::size_t i = digit.size(); i-- > 0;) {
      if (++digit[i] < q) break;
      digit[i] = 0;
    }
  }
}

/// Every Singer cycle of GL(k, F), grouped by minimal polynomial. Each
/// conjugate g C g^-1 of a companion matrix C is produced once, using the
/// representatives g with g e1 = e1 (the centraliser of C acts regularly on
/// nonzero vectors).
inline std::vector<MatGF> enumerate_singer_cycles(unsigned k, const FieldPtr& F, std::uint64_t cap = 1ULL << 22) {
  std::vector<MatGF> out;
  for (const auto& f : primitive_polynomials(F, k)) {
    const MatGF C = MatGF::companion(f);
    for_each_gl_fixing_e1(k, F, cap, [&](const MatGF& g) { out.push_back(g * C * *g.inverse()); });
  }
  return out;
}

/// An element of type T_k stabilizing U: a block-diagonal pair of Singer
/// cycles with respect to V = U + phi(U), written in the standard basis.
struct TypeTkElement {
  MatGF matrix;
  Subspace subspace;
  Subspace complement;
  MatGF singer_on_subspace;
  MatGF singer_on_complement;
  Poly subspace_minpoly;
  Poly complement_minpoly;
};

/// Change of basis whose first k columns span U and the rest span W.
inline MatGF adapted_basis(const Subspace& U, const Subspace& W) {
  std::vector<Vec> cols = U.basis_vectors();
  for (auto& v : W.basis_vectors()) cols.push_back(v);
  return MatGF::from_columns(U.field(), U.ambient_dim(), cols);
}

inline TypeTkElement make_type_tk(const Subspace& U, const Subspace& W, const MatGF& singer_u, const MatGF& singer_w) {
  const std::size_t n = U.ambient_dim();
  const std::size_t k = U.dim();
  if (2 * k >= n) throw out_of_regime("type T_k elements need k < n/2");
  if (singer_u.rows() != k || singer_w.rows() != n - k) throw invalid_argument("make_type_tk: Singer block sizes do not match");
  if (!is_direct_sum(U, W)) throw invalid_argument("make_type_tk: subspaces are not complementary");
  const MatGF P = adapted_basis(U, W);
  TypeTkElement t;
  t.matrix = P * MatGF::block_diag(singer_u, singer_w) * *P.inverse();
  t.subspace = U;
  t.complement = W;
  t.singer_on_subspace = singer_u;
  t.singer_on_complement = singer_w;
  t.subspace_minpoly = minimal_polynomial(singer_u);
  t.complement_minpoly = minimal_polynomial(singer_w);
  return t;
}

/// Same, with the complement chosen by the fixed bijection phi_k.
inline TypeTkElement make_type_tk(const Subspace& U, const MatGF& singer_u, const MatGF& singer_w) {
  const auto& phi = complement_map(U.field(), U.ambient_dim(), U.dim());
  return make_type_tk(U, phi(U), singer_u, singer_w);
}

}  // namespace ringcover
