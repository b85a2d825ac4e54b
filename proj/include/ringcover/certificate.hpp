#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ringcover/agl.hpp"
#include "ringcover/cover.hpp"
#include "ringcover/errors.hpp"
#include "ringcover/field.hpp"
#include "ringcover/formulas.hpp"
#include "ringcover/matrix.hpp"
#include "ringcover/packed.hpp"
#include "ringcover/poly.hpp"
#include "ringcover/singer.hpp"
#include "ringcover/subspace.hpp"

namespace ringcover {

/// One matrix t of type T_k together with every root alpha that pairs with it
/// in Pi, and a nonzero witness x with t x = x alpha for each root.
struct PiMatrix {
  PackedMat t;
  std::uint32_t domain_index = 0;  // index of U in the complement map domain
  std::vector<std::uint8_t> alphas;
  std::vector<PackedVec> witnesses;
};

/// Pi_0 (index 0, alpha of degree d) or Pi_i (alpha generating the i-th
/// maximal subfield GF(r_i) of GF(q2) that contains GF(q1)).
struct PiClass {
  unsigned index = 0;
  unsigned degree = 0;  // d or d_i, the dimension of the alpha side
  unsigned k = 0;       // min(degree, n - degree)
  FieldPtr field;       // GF(q) for Pi_0, GF(r_i) otherwise
  std::vector<PiMatrix> matrices;

  std::uint64_t size() const {
    std::uint64_t s = 0;
    for (const auto& m : matrices) s += m.alphas.size();
    return s;
  }
};

struct PiSet {
  std::vector<PiClass> classes;
  std::uint64_t witnesses_checked = 0;
  bool witnesses_ok = true;
  std::uint64_t size() const {
    std::uint64_t s = 0;
    for (const auto& c : classes) s += c.size();
    return s;
  }
};

/// Throws unless A(n,q1,q2) is in the explicit-cover regime with GF(q1) in GF(q2).
inline void require_certificate_regime(const AglRing& R) {
  const auto& x = R.numbers();
  if (!in_cover_regime(x)) throw out_of_regime(regime_message(x));
  if (x.d2 % x.d1 != 0) {
    throw out_of_regime("the Pi construction needs GF(q1) inside GF(q2) (d1 | d2); got q1 = " + std::to_string(x.q1) +
                        ", q2 = " + std::to_string(x.q2));
  }
  if (x.n > kMaxPackedDim || x.q > 256) throw cap_exceeded("certificate needs n <= 8 and q <= 256");
}

namespace detail {

/// x = g(t) u0 with m(y) = (y - alpha) g(y), computed over GF(q).
inline PackedVec eigen_witness(const PackedAlgebra& algF, const PackedMat& tF, const Poly& mF, elem_t alpha,
                               const PackedVec& u0) {
  const auto& F = algF.field();
  const int e = mF.degree();
  // synthetic division: g has coefficients g_{e-1} .. g_0
  std::vector<unsigned> g(static_cast<std::size_t>(e), 0);
  unsigned carry = 0;
  for (int i = e; i >= 1; --i) {
    carry = F.add(mF.coeff(static_cast<std::size_t>(i)), F.mul(carry, alpha));
    g[static_cast<std::size_t>(i - 1)] = carry;
  }
  PackedVec x;
  for (int i = e - 1; i >= 0; --i) {
    PackedVec y = algF.apply(tF, x);
    for (unsigned j = 0; j < algF.n(); ++j) y.a[j] = F.add(y.a[j], F.mul(g[static_cast<std::size_t>(i)], u0.a[j]));
    x = y;
  }
  return x;
}

}  // namespace detail

/// Builds every Pi_i with an eigenvector witness per element.
inline PiSet build_Pi(const AglRing& R) {
  require_certificate_regime(R);
  const auto& x = R.numbers();
  const unsigned n = x.n;
  const PackedAlgebra alg1(R.F1(), n), algF(R.F(), n);
  const auto e1 = embedding_table(R.emb1());
  const Embedding into_q2(R.F1(), R.F2());

  std::vector<std::pair<unsigned, FieldPtr>> specs;  // (alpha-side dimension, field of alpha)
  specs.emplace_back(x.d, R.F2());
  for (const auto& r : maximal_subfields_containing(R.F2(), R.F1())) specs.emplace_back(r->degree() / R.F1()->degree(), r);

  PiSet out;
  for (unsigned ci = 0; ci < specs.size(); ++ci) {
    PiClass cls;
    cls.index = ci;
    cls.degree = specs[ci].first;
    cls.field = specs[ci].second;
    const unsigned e = cls.degree;
    cls.k = std::min(e, n - e);
    const bool alpha_on_domain = cls.k == e;
    const auto& cm = complement_map(R.F1(), n, cls.k);
    const auto small = enumerate_singer_cycles(cls.k, R.F1());
    const auto large = enumerate_singer_cycles(n - cls.k, R.F1());
    const auto& alpha_side = alpha_on_domain ? small : large;

    // minimal polynomial and roots in GF(q2) for each alpha-side Singer cycle
    std::vector<Poly> minpolys;
    std::vector<std::vector<elem_t>> roots;
    std::map<std::vector<elem_t>, std::size_t> poly_index;
    std::vector<std::size_t> singer_poly;
    for (const auto& S : alpha_side) {
      Poly m = minimal_polynomial(S);
      auto it = poly_index.find(m.coeffs());
      if (it == poly_index.end()) {
        it = poly_index.emplace(m.coeffs(), minpolys.size()).first;
        auto rs = roots_in(m, into_q2);
        for (auto a : rs) {
          if (R.F2()->degree_of(a) != e * R.F1()->degree()) throw error("Pi construction: root of unexpected degree");
        }
        roots.push_back(std::move(rs));
        minpolys.push_back(m.mapped(R.emb1()));
      }
      singer_poly.push_back(it->second);
    }

    for (std::size_t u = 0; u < cm.domain().size(); ++u) {
      const Subspace& U = cm.domain()[u];
      const Subspace& W = cm(u);
      const MatGF P = adapted_basis(U, W);
      const PackedMat Pp = alg1.pack(P), Pi = alg1.pack(*P.inverse());
      const PackedVec u0 = algF.pack((alpha_on_domain ? U : W).basis().row(0));
      PackedVec u0F;
      for (unsigned j = 0; j < n; ++j) u0F.a[j] = e1[u0.a[j]];
      for (std::size_t a = 0; a < small.size(); ++a) {
        for (std::size_t b = 0; b < large.size(); ++b) {
          PackedMat D;
          for (unsigned i = 0; i < cls.k; ++i)
            for (unsigned j = 0; j < cls.k; ++j) alg1.at(D, i, j) = static_cast<std::uint8_t>(small[a](i, j));
          for (unsigned i = 0; i < n - cls.k; ++i)
            for (unsigned j = 0; j < n - cls.k; ++j)
              alg1.at(D, cls.k + i, cls.k + j) = static_cast<std::uint8_t>(large[b](i, j));
          PiMatrix pm;
          pm.t = alg1.mul(alg1.mul(Pp, D), Pi);
          pm.domain_index = static_cast<std::uint32_t>(u);
          const std::size_t pi = singer_poly[alpha_on_domain ? a : b];
          const PackedMat tF = map_packed(pm.t, e1, n);
          for (auto alpha : roots[pi]) {
            // GF(q2) = GF(q) here, so alpha is already an element of GF(q)
            const PackedVec w = detail::eigen_witness(algF, tF, minpolys[pi], alpha, u0F);
            const PackedVec tw = algF.apply(tF, w);
            bool nonzero = false, eigen = true;
            for (unsigned j = 0; j < n; ++j) {
              nonzero |= w.a[j] != 0;
              eigen &= tw.a[j] == algF.field().mul(w.a[j], alpha);
            }
            ++out.witnesses_checked;
            if (!nonzero || !eigen) out.witnesses_ok = false;
            pm.alphas.push_back(static_cast<std::uint8_t>(alpha));
            pm.witnesses.push_back(w);
          }
          cls.matrices.push_back(std::move(pm));
        }
      }
    }
    out.classes.push_back(std::move(cls));
  }
  return out;
}

namespace detail {

/// Packed membership of t (S1 part) and alpha (S2 part) in a maximal subring of S.
class PiMembership {
 public:
  PiMembership(const AglRing& R, const PackedAlgebra& alg1, const MaxSubringDescriptor& m)
      : R_(R), alg1_(alg1), kind_(m.kind) {
    using K = MaxSubringDescriptor::Kind;
    switch (m.kind) {
      case K::stabilizer: sub_ = std::make_unique<PackedSubspace>(alg1, *m.subspace); break;
      case K::field_centralizer: g_ = alg1.pack(*m.matrix); break;
      case K::subfield_conjugate:
        g_ = alg1.pack(*m.matrix);
        ginv_ = alg1.pack(*m.matrix->inverse());
        entry_ok_.resize(R.F1()->order());
        for (elem_t a = 0; a < R.F1()->order(); ++a) entry_ok_[a] = R.F1()->in_subfield(a, m.subfield->degree());
        break;
      case K::s2_subfield:
      case K::s2_zero:
        alpha_ok_.resize(R.F2()->order());
        for (elem_t b = 0; b < R.F2()->order(); ++b)
          alpha_ok_[b] = m.kind == K::s2_zero ? b == 0 : R.F2()->in_subfield(b, m.subfield->degree());
        break;
      case K::scalar: throw invalid_argument("scalar subring is not a maximal subring of S for n >= 3");
    }
  }

  bool s2_side() const { return !alpha_ok_.empty(); }
  bool alpha_in(std::uint8_t a) const { return alpha_ok_[a]; }
  bool t_in(const PackedMat& t, const std::vector<std::uint32_t>* img) const {
    using K = MaxSubringDescriptor::Kind;
    switch (kind_) {
      case K::stabilizer:
        return img && sub_->has_bitset() ? sub_->stabilized_by_images(*img) : sub_->stabilized_by(t);
      case K::field_centralizer: return alg1_.commutes(t, g_);
      case K::subfield_conjugate: {
        const PackedMat y = alg1_.mul(alg1_.mul(ginv_, t), g_);
        for (unsigned r = 0; r < R_.n(); ++r)
          for (unsigned s = 0; s < R_.n(); ++s)
            if (!entry_ok_[alg1_.at(y, r, s)]) return false;
        return true;
      }
      default: return true;
    }
  }
  bool wants_images() const { return kind_ == MaxSubringDescriptor::Kind::stabilizer && sub_->has_bitset(); }

 private:
  const AglRing& R_;
  const PackedAlgebra& alg1_;
  MaxSubringDescriptor::Kind kind_;
  std::unique_ptr<PackedSubspace> sub_;
  PackedMat g_, ginv_;
  std::vector<bool> entry_ok_, alpha_ok_;
};

}  // namespace detail

/// |M ∩ Pi_i| for every listed M and every class i, by direct membership tests.
inline std::vector<std::vector<std::uint64_t>> count_intersections(const AglRing& R, const PiSet& pi,
                                                                   const std::vector<MaxSubringDescriptor>& members) {
  const PackedAlgebra alg1(R.F1(), R.n());
  std::vector<detail::PiMembership> comp;
  comp.reserve(members.size());
  bool images = false;
  for (const auto& m : members) {
    comp.emplace_back(R, alg1, m);
    images |= comp.back().wants_images();
  }
  std::uint64_t vectors = 1;
  for (unsigned i = 0; i < R.n(); ++i) vectors *= R.F1()->order();
  images &= vectors <= 4096;
  std::vector<std::vector<std::uint64_t>> out(members.size(), std::vector<std::uint64_t>(pi.classes.size(), 0));
  std::vector<PackedVec> scratch;
  std::vector<std::uint32_t> img;
  for (std::size_t c = 0; c < pi.classes.size(); ++c) {
    for (const auto& pm : pi.classes[c].matrices) {
      if (images) image_table(alg1, pm.t, scratch, img);
      for (std::size_t j = 0; j < comp.size(); ++j) {
        if (comp[j].s2_side()) {
          for (auto a : pm.alphas) out[j][c] += comp[j].alpha_in(a);
        } else if (comp[j].t_in(pm.t, images ? &img : nullptr)) {
          out[j][c] += pm.alphas.size();
        }
      }
    }
  }
  return out;
}

inline std::vector<std::uint64_t> count_intersection(const AglRing& R, const PiSet& pi, const MaxSubringDescriptor& M) {
  return count_intersections(R, pi, {M}).front();
}

/// c(M) = sum_i |M ∩ Pi_i| / |M_i ∩ Pi_i|.
inline BigRat c_value(const std::vector<std::uint64_t>& counts, const std::vector<BigInt>& denominators) {
  if (counts.size() != denominators.size()) throw invalid_argument("c_value: size mismatch");
  BigRat c = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (denominators[i] == 0) throw error("c_value: a member of C meets no element of its Pi class");
    c += BigRat(BigInt(counts[i]), denominators[i]);
  }
  return c;
}

/// One class of the partition of the maximal subrings of S.
struct MaxClass {
  std::string name;  // "M_0", "M_1", "I-k", "II-l", "III-r", "IV-r"
  std::string type;  // "M0", "Mi", "I", "II", "III", "IV"
  unsigned param = 0;
  bool in_C = false;
  BigInt population;
  MaxSubringDescriptor representative;
  std::vector<MaxSubringDescriptor> members;  // every member, or representative plus sampled conjugates
  bool enumerated = false;                    // members lists the whole class
  std::string note;
};

struct ClassifyOptions {
  std::uint64_t seed = 0;
  unsigned samples = 8;
  std::uint64_t max_population = 100000;  // largest class enumerated in full
  std::uint64_t work_budget = 50000000;   // population * |Pi| membership tests
  std::uint64_t max_gl_candidates = 1ULL << 20;
};

namespace detail {

inline MatGF random_invertible(const FieldPtr& F, unsigned n, std::mt19937_64& rng) {
  std::uniform_int_distribution<elem_t> pick(0, F->order() - 1);
  while (true) {
    MatGF x(F, n, n);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) x(i, j) = pick(rng);
    if (x.is_invertible()) return x;
  }
}

inline Subspace transform(const MatGF& x, const Subspace& U) {
  std::vector<Vec> rows;
  for (auto& b : U.basis_vectors()) rows.push_back(x * b);
  return Subspace::span(U.field(), U.ambient_dim(), rows);
}

/// Block diagonal of n/l copies of the degree-l Singer cycle; its centraliser
/// is a Type II-l maximal subring.
inline MatGF field_generator(unsigned n, unsigned l, const FieldPtr& F) {
  const MatGF C = singer_cycle(l, F);
  MatGF g = C;
  for (unsigned i = 1; i < n / l; ++i) g = MatGF::block_diag(g, C);
  return g;
}

/// Calls visit(x) for every x in GL(n, F).
inline void for_each_gl(unsigned n, const FieldPtr& F, const std::function<void(const PackedMat&)>& visit) {
  const PackedAlgebra alg(F, n);
  const std::uint64_t total = nt::checked_pow(F->order(), n * n);
  MatrixOdometer od(n, F->order(), 0);
  for (std::uint64_t c = 0; c < total; ++c, od.next())
    if (alg.det(od.get()) != 0) visit(od.get());
}

/// Conjugates x g x^-1 up to equality of the generated field, keyed by the
/// least Galois conjugate (g^(q^j)).
inline std::vector<MatGF> field_generator_orbit(unsigned n, unsigned l, const FieldPtr& F) {
  const PackedAlgebra alg(F, n);
  const PackedMat g0 = alg.pack(field_generator(n, l, F));
  std::map<PackedMat, PackedMat> seen;
  for_each_gl(n, F, [&](const PackedMat& x) {
    const PackedMat xi = alg.pack(*alg.unpack(x).inverse());
    PackedMat g = alg.mul(alg.mul(x, g0), xi);
    PackedMat key = g;
    PackedMat c = g;
    for (unsigned j = 1; j < l; ++j) {
      PackedMat p = alg.identity();
      for (unsigned s = 0; s < F->order(); ++s) p = alg.mul(p, c);
      c = p;
      key = std::min(key, c);
    }
    seen.emplace(key, g);
  });
  std::vector<MatGF> out;
  for (auto& [k, g] : seen) out.push_back(alg.unpack(g));
  return out;
}

/// Conjugating matrices x, one per distinct x M_n(r) x^-1, keyed by the
/// GF(r)-lattice x GF(r)^n up to GF(q)^x scaling.
inline std::vector<MatGF> subfield_conjugate_orbit(unsigned n, const FieldPtr& F, const FieldPtr& r) {
  const PackedAlgebra alg(F, n);
  std::vector<elem_t> sub;
  for (elem_t a = 0; a < F->order(); ++a)
    if (F->in_subfield(a, r->degree())) sub.push_back(a);
  std::map<std::vector<std::uint64_t>, PackedMat> seen;
  for_each_gl(n, F, [&](const PackedMat& x) {
    std::vector<std::uint64_t> best;
    for (elem_t c = 1; c < F->order(); ++c) {
      std::vector<std::uint64_t> lattice;
      std::vector<std::size_t> digit(n, 0);
      while (true) {
        PackedVec w;
        for (unsigned i = 0; i < n; ++i) w.a[i] = static_cast<std::uint8_t>(F->mul(c, sub[digit[i]]));
        lattice.push_back(alg.code(alg.apply(x, w)));
        unsigned i = 0;
        while (i < n && ++digit[i] == sub.size()) digit[i++] = 0;
        if (i == n) break;
      }
      std::sort(lattice.begin(), lattice.end());
      if (best.empty() || lattice < best) best = std::move(lattice);
    }
    seen.emplace(std::move(best), x);
  });
  std::vector<MatGF> out;
  for (auto& [k, x] : seen) out.push_back(alg.unpack(x));
  return out;
}

}  // namespace detail

/// Partition of the maximal subrings of S into M_0, M_i, M_{I,k}, M_{II,l},
/// M_{III,r}, M_{IV,r}. Members are listed in full when the class is small
/// enough, otherwise as the representative plus seeded random conjugates.
inline std::vector<MaxClass> classify_max_subrings_of_S(const AglRing& R, std::uint64_t pi_size,
                                                        const ClassifyOptions& opt = {}) {
  require_certificate_regime(R);
  const auto& x = R.numbers();
  const unsigned n = x.n;
  const BigInt Q1 = x.q1;
  std::mt19937_64 rng(opt.seed);
  std::vector<MaxClass> out;
  auto affordable = [&](const BigInt& pop, bool needs_gl) {
    if (pop > BigInt(opt.max_population)) return false;
    if (pop * BigInt(std::max<std::uint64_t>(pi_size, 1)) > BigInt(opt.work_budget)) return false;
    if (needs_gl && ipow(Q1, n * n) > BigInt(opt.max_gl_candidates)) return false;
    return true;
  };

  // Type I classes, including M_0 = I-d
  for (unsigned k = 1; k < n; ++k) {
    MaxClass c;
    c.in_C = k == x.d;
    c.type = c.in_C ? "M0" : "I";
    c.name = c.in_C ? "M_0" : "I-" + std::to_string(k);
    c.param = k;
    c.population = qbinom(n, k, Q1);
    if (affordable(c.population, false) || c.in_C) {
      for (const auto& U : enumerate_subspaces(n, k, R.F1())) c.members.push_back(MaxSubringDescriptor::stabilizer_of(U));
      c.enumerated = true;
      c.representative = c.members.front();
    } else {
      const auto U0 = enumerate_subspaces(n, k, R.F1()).front();
      c.representative = MaxSubringDescriptor::stabilizer_of(U0);
      c.members.push_back(c.representative);
      for (unsigned s = 0; s < opt.samples; ++s)
        c.members.push_back(MaxSubringDescriptor::stabilizer_of(detail::transform(detail::random_invertible(R.F1(), n, rng), U0)));
    }
    out.push_back(std::move(c));
  }
  // M_i: S1 + GF(r_i)
  {
    unsigned i = 0;
    for (const auto& r : maximal_subfields_containing(R.F2(), R.F1())) {
      MaxClass c;
      c.in_C = true;
      c.type = "Mi";
      c.name = "M_" + std::to_string(++i);
      c.param = r->order();
      c.population = 1;
      c.representative = MaxSubringDescriptor::s2_side(r);
      c.members = {c.representative};
      c.enumerated = true;
      out.push_back(std::move(c));
    }
  }
  // Type II: centralisers of prime-degree field extensions
  for (auto l64 : nt::prime_factors(n)) {
    const unsigned l = static_cast<unsigned>(l64);
    MaxClass c;
    c.type = "II";
    c.name = "II-" + std::to_string(l);
    c.param = l;
    c.population = field_centralizer_population(n, l, Q1);
    const MatGF g0 = detail::field_generator(n, l, R.F1());
    c.representative = MaxSubringDescriptor::centralizer_of(g0, l);
    if (affordable(c.population, true)) {
      for (const auto& g : detail::field_generator_orbit(n, l, R.F1())) c.members.push_back(MaxSubringDescriptor::centralizer_of(g, l));
      c.enumerated = true;
    } else {
      c.members.push_back(c.representative);
      for (unsigned s = 0; s < opt.samples; ++s) {
        const MatGF y = detail::random_invertible(R.F1(), n, rng);
        c.members.push_back(MaxSubringDescriptor::centralizer_of(y * g0 * *y.inverse(), l));
      }
    }
    out.push_back(std::move(c));
  }
  // Type III: conjugates of M_n(r) for maximal subfields GF(r) of GF(q1)
  for (const auto& r : maximal_subfields(R.F1())) {
    MaxClass c;
    c.type = "III";
    c.name = "III-" + std::to_string(r->order());
    c.param = r->order();
    c.population = subfield_conjugate_population(n, BigInt(r->order()), Q1);
    c.representative = MaxSubringDescriptor::conjugate_of_subfield(MatGF::identity(R.F1(), n), r);
    if (affordable(c.population, true)) {
      for (const auto& y : detail::subfield_conjugate_orbit(n, R.F1(), r)) c.members.push_back(MaxSubringDescriptor::conjugate_of_subfield(y, r));
      c.enumerated = true;
    } else {
      c.members.push_back(c.representative);
      for (unsigned s = 0; s < opt.samples; ++s)
        c.members.push_back(MaxSubringDescriptor::conjugate_of_subfield(detail::random_invertible(R.F1(), n, rng), r));
    }
    out.push_back(std::move(c));
  }
  // Type IV: S1 + GF(r) for maximal subfields not containing GF(q1) cap GF(q2),
  // and S1 + {0} when GF(q2) is a prime field
  for (const auto& r : maximal_subfields(R.F2())) {
    if (r->degree() % R.F1()->degree() == 0) continue;
    MaxClass c;
    c.type = "IV";
    c.name = "IV-" + std::to_string(r->order());
    c.param = r->order();
    c.population = 1;
    c.representative = MaxSubringDescriptor::s2_side(r);
    c.members = {c.representative};
    c.enumerated = true;
    out.push_back(std::move(c));
  }
  if (R.F2()->degree() == 1) {
    MaxClass c;
    c.type = "IV";
    c.name = "IV-1";
    c.param = 1;
    c.population = 1;
    c.representative = MaxSubringDescriptor::s2_zero_side();
    c.members = {c.representative};
    c.enumerated = true;
    c.note = "zero subring of the prime field GF(q2)";
    out.push_back(std::move(c));
  }
  return out;
}

struct CertificateRow {
  MaxClass cls;
  std::uint64_t members_checked = 0;
  std::string invariance;  // "full", "sampled" or "single"
  bool invariant = true;
  std::optional<BigInt> population_enumerated;
  bool population_ok = true;
  std::vector<std::uint64_t> counts;  // representative |M ∩ Pi_i|
  std::optional<BigRat> c;            // classes outside C
  std::string expectation;            // what this row must satisfy
  bool expectation_ok = true;
  std::optional<BigRat> type2_ratio_bound;  // l^2 / q1^((l-1)^2+3), bounds |M ∩ Pi_0| / |M_0 ∩ Pi_0|
  std::optional<BigRat> type2_c_bound;      // 2 l^2 / q1^((l-1)^2+3)
  std::optional<BigRat> ratio0;             // exact |M ∩ Pi_0| / |M_0 ∩ Pi_0|
};

struct PiSummary {
  unsigned index = 0;
  unsigned degree = 0;
  unsigned k = 0;
  std::uint64_t field_order = 0;
  std::uint64_t size = 0;
  BigInt expected;
  std::uint64_t matrices = 0;
};

struct Certificate {
  AglNumbers params{};
  std::uint64_t seed = 0;
  std::vector<PiSummary> pi;
  std::vector<BigInt> denominators;  // |M_i ∩ Pi_i|
  std::vector<BigInt> denominators_expected;
  std::uint64_t witnesses_checked = 0;
  bool witnesses_ok = false;
  bool pi_counts_ok = false;
  bool cover_of_pi = false;         // every Pi element lies in a member of C
  bool pi_partitioned = false;      // ... in exactly one, and it belongs to the matching M_i
  bool every_member_meets_pi = false;
  bool invariance = false;
  bool c_bounded = false;
  std::vector<CertificateRow> rows;
  BigRat max_c = 0;
  std::string max_c_class;
  std::vector<std::string> failures;
  bool pass = false;
  double elapsed_ms = 0;
};

/// Checks the minimal-cover criterion for C on Pi at this instance and
/// tabulates c(M) for every class outside C.
inline Certificate minimality_certificate(const AglRing& R, const ClassifyOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  require_certificate_regime(R);
  const auto& x = R.numbers();
  const BigInt Q1 = x.q1;
  Certificate cert;
  cert.params = x;
  cert.seed = opt.seed;

  const PiSet pi = build_Pi(R);
  cert.witnesses_checked = pi.witnesses_checked;
  cert.witnesses_ok = pi.witnesses_ok;
  if (!pi.witnesses_ok) cert.failures.push_back("a Pi element has no valid centralizer witness");

  cert.pi_counts_ok = true;
  for (const auto& c : pi.classes) {
    PiSummary s;
    s.index = c.index;
    s.degree = c.degree;
    s.k = c.k;
    s.field_order = c.field->order();
    s.size = c.size();
    s.matrices = c.matrices.size();
    s.expected = subfield_pi_count(x.n, c.degree, Q1);
    if (BigInt(s.size) != s.expected) {
      cert.pi_counts_ok = false;
      cert.failures.push_back("|Pi_" + std::to_string(c.index) + "| = " + std::to_string(s.size) + ", expected " + to_string(s.expected));
    }
    cert.pi.push_back(s);
  }

  auto classes = classify_max_subrings_of_S(R, pi.size(), opt);

  // C members: every M_0 member and each M_i
  std::vector<MaxSubringDescriptor> c_members;
  std::vector<std::size_t> c_member_class;  // Pi class index the member belongs to
  for (const auto& cls : classes) {
    if (!cls.in_C) continue;
    const std::size_t ci = cls.type == "M0" ? 0 : static_cast<std::size_t>(std::stoul(cls.name.substr(2)));
    for (const auto& m : cls.members) {
      c_members.push_back(m);
      c_member_class.push_back(ci);
    }
  }

  // conditions on how Pi sits inside C, element by element
  {
    const PackedAlgebra alg1(R.F1(), x.n);
    std::vector<detail::PiMembership> comp;
    for (const auto& m : c_members) comp.emplace_back(R, alg1, m);
    std::vector<std::uint64_t> hit(c_members.size(), 0);
    std::vector<PackedVec> scratch;
    std::vector<std::uint32_t> img;
    bool covered = true, partitioned = true;
    for (std::size_t ci = 0; ci < pi.classes.size(); ++ci) {
      for (const auto& pm : pi.classes[ci].matrices) {
        image_table(alg1, pm.t, scratch, img);
        std::vector<bool> t_in(comp.size());
        for (std::size_t j = 0; j < comp.size(); ++j) t_in[j] = comp[j].s2_side() || comp[j].t_in(pm.t, &img);
        for (auto a : pm.alphas) {
          std::size_t owners = 0, owner = 0;
          for (std::size_t j = 0; j < comp.size(); ++j) {
            const bool in = comp[j].s2_side() ? comp[j].alpha_in(a) : t_in[j];
            if (in) {
              ++owners;
              owner = j;
              ++hit[j];
            }
          }
          if (owners == 0) covered = false;
          if (owners != 1 || c_member_class[owner] != ci) partitioned = false;
        }
      }
    }
    cert.cover_of_pi = covered;
    cert.pi_partitioned = partitioned;
    cert.every_member_meets_pi = std::all_of(hit.begin(), hit.end(), [](std::uint64_t h) { return h > 0; });
    if (!covered) cert.failures.push_back("C does not cover Pi");
    if (!partitioned) cert.failures.push_back("Pi is not partitioned among the members of C by class");
    if (!cert.every_member_meets_pi) cert.failures.push_back("some member of C contains no element of Pi");
  }

  // class rows
  cert.invariance = true;
  cert.c_bounded = true;
  cert.denominators.assign(pi.classes.size(), 0);
  cert.denominators_expected.assign(pi.classes.size(), 0);
  for (auto& cls : classes) {
    CertificateRow row;
    const auto counts = count_intersections(R, pi, cls.members);
    row.counts = counts.front();
    row.members_checked = cls.members.size();
    row.invariance = cls.members.size() == 1 && cls.population == 1 ? "single" : cls.enumerated ? "full" : "sampled";
    for (const auto& c : counts)
      if (c != row.counts) row.invariant = false;
    if (!row.invariant) {
      cert.invariance = false;
      cert.failures.push_back("intersection counts vary within class " + cls.name);
    }
    if (cls.enumerated) {
      row.population_enumerated = BigInt(cls.members.size());
      row.population_ok = *row.population_enumerated == cls.population;
      if (!row.population_ok) {
        cert.failures.push_back("class " + cls.name + " enumerated " + to_string(*row.population_enumerated) +
                                " members, expected " + to_string(cls.population));
      }
    }
    if (cls.type == "M0") {
      cert.denominators[0] = row.counts[0];
      cert.denominators_expected[0] = stabilizer_pi_count(x.n, x.d, Q1);
      row.expectation = "|M_0 ∩ Pi_0| = " + to_string(cert.denominators_expected[0]);
      row.expectation_ok = BigInt(row.counts[0]) == cert.denominators_expected[0];
    } else if (cls.type == "Mi") {
      const std::size_t ci = static_cast<std::size_t>(std::stoul(cls.name.substr(2)));
      cert.denominators[ci] = row.counts[ci];
      cert.denominators_expected[ci] = subfield_pi_count(x.n, pi.classes[ci].degree, Q1);
      row.expectation = "|M_i ∩ Pi_i| = |Pi_i| = " + to_string(cert.denominators_expected[ci]);
      row.expectation_ok = BigInt(row.counts[ci]) == cert.denominators_expected[ci];
    }
    if (!row.expectation_ok) cert.failures.push_back("class " + cls.name + " fails: " + row.expectation);
    row.cls = std::move(cls);
    cert.rows.push_back(std::move(row));
  }

  for (auto& row : cert.rows) {
    if (row.cls.in_C) continue;
    row.c = c_value(row.counts, cert.denominators);
    const BigRat& c = *row.c;
    if (c > 1) cert.c_bounded = false;
    if (c > cert.max_c || cert.max_c_class.empty()) {
      if (c >= cert.max_c) {
        cert.max_c = c;
        cert.max_c_class = row.cls.name;
      }
    }
    const auto& t = row.cls.type;
    if (t == "I" && row.cls.param == x.n - x.d) {
      row.expectation = "c = 1";
      row.expectation_ok = c == 1;
    } else if (t == "III" || t == "IV") {
      row.expectation = "c = 0";
      row.expectation_ok = c == 0;
    } else if (t == "II") {
      const unsigned l = row.cls.param;
      const BigInt den = ipow(Q1, (l - 1) * (l - 1) + 3);
      row.type2_ratio_bound = BigRat(BigInt(l * l), den);
      row.type2_c_bound = BigRat(BigInt(2 * l * l), den);
      row.ratio0 = BigRat(BigInt(row.counts[0]), cert.denominators[0]);
      if (std::gcd(x.n, x.d) % l != 0) {
        row.expectation = "c = 0";
        row.expectation_ok = c == 0;
      } else {
        row.expectation = "c <= 2 l^2 / q1^((l-1)^2+3)";
        row.expectation_ok = c <= *row.type2_c_bound && *row.ratio0 <= *row.type2_ratio_bound;
      }
    } else {
      row.expectation = "c <= 1";
      row.expectation_ok = c <= 1;
    }
    if (!row.expectation_ok) cert.failures.push_back("class " + row.cls.name + " fails: " + row.expectation);
  }
  if (!cert.c_bounded) cert.failures.push_back("some class outside C has c(M) > 1");

  cert.pass = cert.failures.empty();
  cert.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return cert;
}

}  // namespace ringcover
