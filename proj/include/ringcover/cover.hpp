#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ringcover/agl.hpp"
#include "ringcover/errors.hpp"
#include "ringcover/field.hpp"
#include "ringcover/formulas.hpp"
#include "ringcover/matrix.hpp"
#include "ringcover/packed.hpp"
#include "ringcover/singer.hpp"
#include "ringcover/subspace.hpp"

namespace ringcover {

/// A maximal subring of S = S1 + S2, lifted to R by adding J when used in a cover.
struct MaxSubringDescriptor {
  enum class Kind {
    stabilizer,          // {h : hU in U} + S2
    field_centralizer,   // centralizer of a prime-degree field generated by `matrix`, + S2
    subfield_conjugate,  // matrix M_n(r) matrix^-1 + S2, r a maximal subfield of GF(q1)
    s2_subfield,         // S1 + GF(r), r a maximal subfield of GF(q2)
    s2_zero,             // S1 + {0}, maximal when q2 is prime
    scalar,              // {(a, a)}, the scalar subring used when n = 1
  };
  Kind kind = Kind::stabilizer;
  unsigned param = 0;  // k, l, or the order r of the subfield
  std::optional<Subspace> subspace;
  std::optional<MatGF> matrix;
  FieldPtr subfield;

  std::string kind_name() const {
    switch (kind) {
      case Kind::stabilizer: return "stabilizer";
      case Kind::field_centralizer: return "field_centralizer";
      case Kind::subfield_conjugate: return "subfield_conjugate";
      case Kind::s2_subfield: return "s2_subfield";
      case Kind::s2_zero: return "s2_zero";
      case Kind::scalar: return "scalar";
    }
    return "?";
  }
  /// Which factor of S the subring cuts down: 1 for S1, 2 for S2, 0 for neither.
  int side() const {
    switch (kind) {
      case Kind::s2_subfield:
      case Kind::s2_zero: return 2;
      case Kind::scalar: return 0;
      default: return 1;
    }
  }

  static MaxSubringDescriptor stabilizer_of(const Subspace& U) {
    MaxSubringDescriptor m;
    m.kind = Kind::stabilizer;
    m.param = static_cast<unsigned>(U.dim());
    m.subspace = U;
    return m;
  }
  static MaxSubringDescriptor centralizer_of(const MatGF& g, unsigned l) {
    MaxSubringDescriptor m;
    m.kind = Kind::field_centralizer;
    m.param = l;
    m.matrix = g;
    return m;
  }
  static MaxSubringDescriptor conjugate_of_subfield(const MatGF& x, const FieldPtr& r) {
    MaxSubringDescriptor m;
    m.kind = Kind::subfield_conjugate;
    m.param = r->order();
    m.matrix = x;
    m.subfield = r;
    return m;
  }
  static MaxSubringDescriptor s2_side(const FieldPtr& r) {
    MaxSubringDescriptor m;
    m.kind = Kind::s2_subfield;
    m.param = r->order();
    m.subfield = r;
    return m;
  }
  static MaxSubringDescriptor s2_zero_side() {
    MaxSubringDescriptor m;
    m.kind = Kind::s2_zero;
    m.param = 1;
    return m;
  }
  static MaxSubringDescriptor scalars() {
    MaxSubringDescriptor m;
    m.kind = Kind::scalar;
    return m;
  }
};

/// (h, beta) lies in the subring described by m; v is ignored because every
/// cover member has the form M + J.
inline bool member_contains(const AglRing& R, const MaxSubringDescriptor& m, const MatGF& h, elem_t beta) {
  using K = MaxSubringDescriptor::Kind;
  switch (m.kind) {
    case K::stabilizer: return stabilizes(h, *m.subspace);
    case K::field_centralizer: return h * *m.matrix == *m.matrix * h;
    case K::subfield_conjugate: {
      const MatGF y = *m.matrix->inverse() * h * *m.matrix;
      const unsigned deg = m.subfield->degree();
      for (auto e : y.entries())
        if (!R.F1()->in_subfield(e, deg)) return false;
      return true;
    }
    case K::s2_subfield: return R.F2()->in_subfield(beta, m.subfield->degree());
    case K::s2_zero: return beta == 0;
    case K::scalar: {
      const elem_t b = R.emb2()(beta);
      for (unsigned i = 0; i < R.n(); ++i)
        for (unsigned j = 0; j < R.n(); ++j)
          if (R.emb1()(h(i, j)) != (i == j ? b : 0)) return false;
      return true;
    }
  }
  return false;
}

inline bool member_contains(const AglRing& R, const MaxSubringDescriptor& m, const AglElement& r) {
  return member_contains(R, m, r.h, r.beta);
}

inline std::string regime_message(const AglNumbers& x) {
  return "A(" + std::to_string(x.n) + "," + std::to_string(x.q1) + "," + std::to_string(x.q2) +
         ") is outside the explicit-cover regime (needs n >= 3 and d < n - n/a); here the covering number equals "
         "that of M_n(q1) and the ring is not sigma-elementary, see `formula`";
}

/// Regime check for the explicit cover; n = 1 is always allowed.
inline void require_cover_regime(const AglNumbers& x) {
  if (x.n != 1 && !in_cover_regime(x)) throw out_of_regime(regime_message(x));
}

/// The family C: stabilizers of all d-dimensional subspaces of GF(q1)^n, in
/// enumeration order, then S1 + GF(r) for each maximal subfield GF(r) of
/// GF(q2) containing GF(q1) cap GF(q2).
inline std::vector<MaxSubringDescriptor> build_script_C(const AglRing& R) {
  const auto& x = R.numbers();
  if (!in_cover_regime(x)) throw out_of_regime(regime_message(x));
  std::vector<MaxSubringDescriptor> out;
  for (const auto& U : enumerate_subspaces(x.n, x.d, R.F1())) out.push_back(MaxSubringDescriptor::stabilizer_of(U));
  const auto base = make_field(static_cast<unsigned>(x.p), std::gcd(x.d1, x.d2));
  for (const auto& r : maximal_subfields_containing(R.F2(), base)) out.push_back(MaxSubringDescriptor::s2_side(r));
  return out;
}

/// Complements S^{1+x} for the listed x (codes into GF(q)^n) together with
/// the members of Z, each lifted by J.
struct CoverFamily {
  std::shared_ptr<const AglRing> ring;
  std::vector<std::uint64_t> complement_codes;
  std::vector<MaxSubringDescriptor> zed;

  BigInt size() const { return BigInt(complement_codes.size()) + BigInt(zed.size()); }
  bool complements_complete() const { return BigInt(complement_codes.size()) == ring->distinct_complements(); }

  Vec complement_vector(std::uint64_t code) const {
    Vec x(ring->n());
    const auto q = ring->numbers().q;
    for (auto& e : x) {
      e = static_cast<elem_t>(code % q);
      code /= q;
    }
    return x;
  }
  /// Member i in family order: complements first, then Z.
  bool contains(std::size_t i, const AglElement& r) const {
    if (i < complement_codes.size()) return ring->in_complement(r, complement_vector(complement_codes[i]));
    return member_contains(*ring, zed.at(i - complement_codes.size()), r);
  }
};

/// All q^n complements plus C (n >= 3 in regime) or the scalar subring (n = 1).
inline CoverFamily build_cover(std::shared_ptr<const AglRing> R, std::uint64_t max_complements = 1ULL << 24) {
  require_cover_regime(R->numbers());
  CoverFamily f;
  f.ring = R;
  const BigInt qn = R->distinct_complements();
  if (qn > BigInt(max_complements)) throw cap_exceeded("too many complements to list: " + to_string(qn));
  const auto N = static_cast<std::uint64_t>(qn);
  f.complement_codes.resize(N);
  for (std::uint64_t i = 0; i < N; ++i) f.complement_codes[i] = i;
  if (R->n() == 1) {
    f.zed.push_back(MaxSubringDescriptor::scalars());
  } else {
    f.zed = build_script_C(*R);
  }
  return f;
}

inline CoverFamily build_cover(unsigned n, std::uint64_t q1, std::uint64_t q2) {
  return build_cover(std::make_shared<const AglRing>(n, q1, q2));
}

struct SweepReport {
  std::string mode;  // "naive" or "reduced"
  bool covered = false;
  std::uint64_t elements_checked = 0;
  std::vector<std::uint64_t> per_member_hits;  // naive: whole family; reduced: Z only
  std::uint64_t complement_covered = 0;        // elements attributed to complements
  std::uint64_t centralizer_union = 0;         // reduced: s with det(h - beta I) = 0
  std::optional<std::uint64_t> first_uncovered;
  std::optional<AglElement> first_uncovered_element;
  unsigned workers = 1;
  double elapsed_ms = 0;
};

namespace detail {

/// Packed membership tests for the Z members on (h, beta).
class CompiledZed {
 public:
  CompiledZed(const AglRing& R, const std::vector<MaxSubringDescriptor>& zed)
      : R_(R), alg1_(R.F1(), R.n()), algF_(R.F(), R.n()) {
    e1_ = embedding_table(R.emb1());
    e2_ = embedding_table(R.emb2());
    std::uint64_t vectors = 1;
    for (unsigned i = 0; i < R.n(); ++i) vectors *= R.F1()->order();
    use_images_ = vectors <= kImageTableLimit;
    using K = MaxSubringDescriptor::Kind;
    for (const auto& m : zed) {
      Item it;
      it.kind = m.kind;
      switch (m.kind) {
        case K::stabilizer: it.sub = std::make_unique<PackedSubspace>(alg1_, *m.subspace); break;
        case K::field_centralizer: it.g = alg1_.pack(*m.matrix); break;
        case K::subfield_conjugate:
          it.g = alg1_.pack(*m.matrix);
          it.ginv = alg1_.pack(*m.matrix->inverse());
          it.in_sub.resize(R.F1()->order());
          for (elem_t a = 0; a < R.F1()->order(); ++a) it.in_sub[a] = R.F1()->in_subfield(a, m.subfield->degree());
          break;
        case K::s2_subfield:
        case K::s2_zero:
        case K::scalar:
          it.beta_ok.resize(R.F2()->order());
          for (elem_t b = 0; b < R.F2()->order(); ++b)
            it.beta_ok[b] = m.kind == K::s2_zero ? b == 0
                            : m.kind == K::scalar ? true
                                                  : R.F2()->in_subfield(b, m.subfield->degree());
          break;
      }
      items_.push_back(std::move(it));
    }
  }

  const PackedAlgebra& alg1() const { return alg1_; }
  const PackedAlgebra& algF() const { return algF_; }
  const std::vector<std::uint8_t>& e1() const { return e1_; }
  const std::vector<std::uint8_t>& e2() const { return e2_; }
  std::size_t size() const { return items_.size(); }

  /// Per-thread cache of h-only predicate values.
  struct Cache {
    std::vector<std::uint64_t> stamp;
    std::vector<std::uint8_t> value;
    std::uint64_t now = 0;
    std::uint64_t img_stamp = 0;
    std::vector<PackedVec> scratch;
    std::vector<std::uint32_t> img;
  };
  Cache make_cache() const {
    Cache c;
    c.stamp.assign(items_.size(), 0);
    c.value.assign(items_.size(), 0);
    return c;
  }

  /// Index of the first member containing (h, beta), or size().
  std::size_t first_member(const PackedMat& h, const PackedMat& hF, unsigned beta, Cache& c) const {
    using K = MaxSubringDescriptor::Kind;
    for (std::size_t i = 0; i < items_.size(); ++i) {
      const Item& it = items_[i];
      bool in = false;
      switch (it.kind) {
        case K::s2_subfield:
        case K::s2_zero: in = it.beta_ok[beta]; break;
        case K::scalar: {
          const unsigned b = e2_[beta];
          in = true;
          for (unsigned r = 0; r < R_.n() && in; ++r)
            for (unsigned s = 0; s < R_.n() && in; ++s) in = algF_.at(hF, r, s) == (r == s ? b : 0);
          break;
        }
        default:
          if (c.stamp[i] != c.now) {
            c.stamp[i] = c.now;
            c.value[i] = h_predicate(it, h, c);
          }
          in = c.value[i];
      }
      if (in) return i;
    }
    return items_.size();
  }

 private:
  struct Item {
    MaxSubringDescriptor::Kind kind;
    std::unique_ptr<PackedSubspace> sub;
    PackedMat g, ginv;
    std::vector<bool> in_sub;
    std::vector<bool> beta_ok;
  };

  bool h_predicate(const Item& it, const PackedMat& h, Cache& c) const {
    using K = MaxSubringDescriptor::Kind;
    switch (it.kind) {
      case K::stabilizer:
        if (!use_images_ || !it.sub->has_bitset()) return it.sub->stabilized_by(h);
        if (c.img_stamp != c.now) {
          c.img_stamp = c.now;
          image_table(alg1_, h, c.scratch, c.img);
        }
        return it.sub->stabilized_by_images(c.img);
      case K::field_centralizer: return alg1_.commutes(h, it.g);
      case K::subfield_conjugate: {
        const PackedMat y = alg1_.mul(alg1_.mul(it.ginv, h), it.g);
        for (unsigned r = 0; r < R_.n(); ++r)
          for (unsigned s = 0; s < R_.n(); ++s)
            if (!it.in_sub[alg1_.at(y, r, s)]) return false;
        return true;
      }
      default: return false;
    }
  }

  static constexpr std::uint64_t kImageTableLimit = 4096;

  const AglRing& R_;
  bool use_images_ = false;
  PackedAlgebra alg1_, algF_;
  std::vector<std::uint8_t> e1_, e2_;
  std::vector<Item> items_;
};

/// Steps h through M_n(q1) in code order: entry (0,0) least significant, row-major.
class MatrixOdometer {
 public:
  MatrixOdometer(unsigned n, unsigned q, std::uint64_t code) : n_(n), q_(q) {
    for (unsigned k = 0; k < n * n; ++k) {
      m_.a[(k / n) * kMaxPackedDim + k % n] = static_cast<std::uint8_t>(code % q);
      code /= q;
    }
  }
  const PackedMat& get() const { return m_; }
  void next() {
    for (unsigned k = 0; k < n_ * n_; ++k) {
      auto& e = m_.a[(k / n_) * kMaxPackedDim + k % n_];
      if (++e < q_) return;
      e = 0;
    }
  }

 private:
  unsigned n_, q_;
  PackedMat m_;
};

inline unsigned resolve_workers(unsigned workers) {
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  return workers;
}

inline void require_packable(const AglRing& R) {
  if (R.n() > kMaxPackedDim || R.numbers().q > 256) {
    throw cap_exceeded("sweeps need n <= 8 and q <= 256");
  }
}

/// Runs body(lo, hi, worker) over [0, total) split into contiguous ranges.
template <class Body>
void partition(std::uint64_t total, unsigned workers, Body&& body) {
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(total, 1)));
  if (workers <= 1) {
    body(0, total, 0U);
    return;
  }
  std::vector<std::thread> th;
  std::vector<std::exception_ptr> err(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = total * w / workers, hi = total * (w + 1) / workers;
    th.emplace_back([&, lo, hi, w] {
      try {
        body(lo, hi, w);
      } catch (...) {
        err[w] = std::current_exception();
      }
    });
  }
  for (auto& t : th) t.join();
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
}

struct WorkerTally {
  std::vector<std::uint64_t> hits;
  std::uint64_t checked = 0, complement_covered = 0, centralizer_union = 0;
  std::optional<std::uint64_t> first_uncovered;

  /// An uncovered element with matrix code hc could still lower the minimum.
  bool may_improve(std::uint64_t hc, std::uint64_t qn, std::uint64_t q2) const {
    return !first_uncovered || *first_uncovered / (qn * q2) == hc;
  }
  void record(std::uint64_t idx) {
    if (!first_uncovered || idx < *first_uncovered) first_uncovered = idx;
  }
};

inline SweepReport merge_tallies(std::vector<WorkerTally>& tallies, std::size_t members, const AglRing& R) {
  SweepReport rep;
  rep.per_member_hits.assign(members, 0);
  for (auto& t : tallies) {
    for (std::size_t i = 0; i < members; ++i) rep.per_member_hits[i] += t.hits[i];
    rep.elements_checked += t.checked;
    rep.complement_covered += t.complement_covered;
    rep.centralizer_union += t.centralizer_union;
    if (t.first_uncovered && (!rep.first_uncovered || *t.first_uncovered < *rep.first_uncovered)) {
      rep.first_uncovered = t.first_uncovered;
    }
  }
  rep.covered = !rep.first_uncovered;
  if (rep.first_uncovered) rep.first_uncovered_element = R.element(*rep.first_uncovered);
  return rep;
}

/// Codes of (h - beta I) x for the listed x; entry i is the image of complement i.
inline void complement_images(const PackedAlgebra& algF, const PackedMat& A, const std::vector<PackedVec>& xs,
                              std::vector<std::uint64_t>& out) {
  out.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = algF.code(algF.apply(A, xs[i]));
}

inline PackedMat minus_scalar(const PackedAlgebra& algF, PackedMat A, unsigned b) {
  for (unsigned i = 0; i < algF.n(); ++i) algF.at(A, i, i) = algF.field().sub(algF.at(A, i, i), b);
  return A;
}

}  // namespace detail

/// Sweeps every element of R and attributes it to the first family member
/// containing it (complements in list order, then Z).
inline SweepReport verify_cover_naive(const CoverFamily& fam, unsigned workers = 0,
                                      std::uint64_t cap = 1ULL << 24) {
  const auto t0 = std::chrono::steady_clock::now();
  const AglRing& R = *fam.ring;
  detail::require_packable(R);
  if (R.order() > BigInt(cap)) throw cap_exceeded("|R| = " + to_string(R.order()) + " exceeds the naive sweep cap; use reduced mode");
  workers = detail::resolve_workers(workers);
  const detail::CompiledZed Z(R, fam.zed);
  const auto& x = R.numbers();
  const std::uint64_t qn = nt::checked_pow(x.q, x.n);
  const std::uint64_t hcount = nt::checked_pow(x.q1, x.n * x.n);
  const std::size_t nc = fam.complement_codes.size();
  std::vector<PackedVec> xs;
  for (auto c : fam.complement_codes) xs.push_back(Z.algF().pack(fam.complement_vector(c)));

  std::vector<detail::WorkerTally> tallies(workers);
  detail::partition(hcount, workers, [&](std::uint64_t lo, std::uint64_t hi, unsigned w) {
    auto& T = tallies[w];
    T.hits.assign(nc + Z.size(), 0);
    auto cache = Z.make_cache();
    std::vector<std::uint64_t> img;
    std::vector<std::uint64_t> owner(qn, 0), owner_stamp(qn, 0);
    std::uint64_t stamp = 0;
    detail::MatrixOdometer od(x.n, static_cast<unsigned>(x.q1), lo);
    for (std::uint64_t hc = lo; hc < hi; ++hc, od.next()) {
      const PackedMat& h = od.get();
      const PackedMat hF = map_packed(h, Z.e1(), x.n);
      ++cache.now;
      for (unsigned beta = 0; beta < x.q2; ++beta) {
        const PackedMat A = detail::minus_scalar(Z.algF(), hF, Z.e2()[beta]);
        detail::complement_images(Z.algF(), A, xs, img);
        ++stamp;
        std::uint64_t distinct = 0;
        for (std::size_t i = 0; i < nc; ++i) {
          if (owner_stamp[img[i]] != stamp) {
            owner_stamp[img[i]] = stamp;
            owner[img[i]] = i;
            ++distinct;
          }
        }
        for (std::uint64_t v = 0; v < qn; ++v)
          if (owner_stamp[v] == stamp) ++T.hits[owner[v]];
        T.complement_covered += distinct;
        T.checked += qn;
        const std::uint64_t rest = qn - distinct;
        if (rest == 0) continue;
        const std::size_t m = Z.first_member(h, hF, beta, cache);
        if (m < Z.size()) {
          T.hits[nc + m] += rest;
        } else if (T.may_improve(hc, qn, x.q2)) {
          for (std::uint64_t v = 0; v < qn; ++v)
            if (owner_stamp[v] != stamp) {
              T.record((hc * qn + v) * x.q2 + beta);
              break;
            }
        }
      }
    }
  });
  SweepReport rep = detail::merge_tallies(tallies, nc + Z.size(), R);
  rep.mode = "naive";
  rep.workers = workers;
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// Sweeps s = (h, beta) in S only. When det(h - beta I) != 0 the coset s + J
/// is covered by the complements exactly when all q^n of them are listed;
/// otherwise s must lie in a member of Z, which then contains s + J.
inline SweepReport verify_cover_reduced(const CoverFamily& fam, unsigned workers = 0,
                                        std::uint64_t cap = 1ULL << 28) {
  const auto t0 = std::chrono::steady_clock::now();
  const AglRing& R = *fam.ring;
  detail::require_packable(R);
  if (R.complement_order() > BigInt(cap)) throw cap_exceeded("|S| = " + to_string(R.complement_order()) + " exceeds the reduced sweep cap");
  workers = detail::resolve_workers(workers);
  const detail::CompiledZed Z(R, fam.zed);
  const auto& x = R.numbers();
  const std::uint64_t qn = nt::checked_pow(x.q, x.n);
  const std::uint64_t hcount = nt::checked_pow(x.q1, x.n * x.n);
  const bool complete = fam.complements_complete();
  std::vector<PackedVec> xs;
  if (!complete)
    for (auto c : fam.complement_codes) xs.push_back(Z.algF().pack(fam.complement_vector(c)));

  // least v not of the form (h - beta I) x for a listed x
  auto least_uncovered_v = [&](const PackedMat& A) {
    std::vector<bool> hit(qn, false);
    if (complete) {
      for (std::uint64_t c = 0; c < qn; ++c) hit[Z.algF().code(Z.algF().apply(A, Z.algF().decode(c)))] = true;
    } else {
      for (const auto& v : xs) hit[Z.algF().code(Z.algF().apply(A, v))] = true;
    }
    for (std::uint64_t v = 0; v < qn; ++v)
      if (!hit[v]) return v;
    return qn;
  };

  std::vector<detail::WorkerTally> tallies(workers);
  detail::partition(hcount, workers, [&](std::uint64_t lo, std::uint64_t hi, unsigned w) {
    auto& T = tallies[w];
    T.hits.assign(Z.size(), 0);
    auto cache = Z.make_cache();
    detail::MatrixOdometer od(x.n, static_cast<unsigned>(x.q1), lo);
    for (std::uint64_t hc = lo; hc < hi; ++hc, od.next()) {
      const PackedMat& h = od.get();
      const PackedMat hF = map_packed(h, Z.e1(), x.n);
      ++cache.now;
      for (unsigned beta = 0; beta < x.q2; ++beta) {
        ++T.checked;
        const PackedMat A = detail::minus_scalar(Z.algF(), hF, Z.e2()[beta]);
        const bool in_union = Z.algF().det(A) == 0;
        if (in_union) ++T.centralizer_union;
        if (!in_union && complete) {
          ++T.complement_covered;
          continue;
        }
        const std::size_t m = Z.first_member(h, hF, beta, cache);
        if (m < Z.size()) {
          ++T.hits[m];
          continue;
        }
        if (T.may_improve(hc, qn, x.q2)) {
          const std::uint64_t v = least_uncovered_v(A);
          if (v < qn) T.record((hc * qn + v) * x.q2 + beta);
        }
      }
    }
  });
  SweepReport rep = detail::merge_tallies(tallies, Z.size(), R);
  rep.mode = "reduced";
  rep.workers = workers;
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace ringcover
