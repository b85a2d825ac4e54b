#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "ringcover/errors.hpp"

namespace ringcover {

/// Fixed-size bitset over ring element indices.
class Mask {
 public:
  Mask() = default;
  explicit Mask(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t universe() const { return n_; }
  void set(std::size_t i) { w_[i >> 6] |= 1ULL << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(1ULL << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  bool all() const { return count() == n_; }
  bool none() const {
    return std::all_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x == 0; });
  }
  bool subset_of(const Mask& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  std::size_t intersect_count(const Mask& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) c += static_cast<std::size_t>(std::popcount(w_[i] & o.w_[i]));
    return c;
  }
  Mask operator|(const Mask& o) const {
    Mask r = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] |= o.w_[i];
    return r;
  }
  Mask operator&(const Mask& o) const {
    Mask r = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
    return r;
  }
  Mask minus(const Mask& o) const {
    Mask r = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~o.w_[i];
    return r;
  }
  bool operator==(const Mask& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const Mask& o) const { return !(*this == o); }
  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t x = w_[i];
      while (x) {
        out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
    return out;
  }
  /// Lowest set index, or universe() when empty.
  std::size_t first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
    return n_;
  }
  std::size_t hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : w_) h = (h ^ x) * 1099511628211ULL;
    return h;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct MaskHash {
  std::size_t operator()(const Mask& m) const { return m.hash(); }
};

struct TableCaps {
  std::size_t max_order = 4096;
  std::size_t max_lattice = 200000;
};

/// A finite ring given by addition and multiplication tables on 0..N-1.
class TableRing {
 public:
  using idx_t = std::uint16_t;

  TableRing() = default;
  TableRing(std::size_t N, std::vector<idx_t> add, std::vector<idx_t> mul, std::size_t zero,
            std::optional<std::size_t> unity = std::nullopt, const TableCaps& caps = {})
      : N_(N), add_(std::move(add)), mul_(std::move(mul)), zero_(zero), unity_(unity) {
    if (N_ == 0) throw invalid_argument("ring must have at least one element");
    if (N_ > caps.max_order) throw cap_exceeded("table ring order " + std::to_string(N_) + " exceeds cap " + std::to_string(caps.max_order));
    if (add_.size() != N_ * N_ || mul_.size() != N_ * N_) throw invalid_argument("table size mismatch");
    neg_.assign(N_, 0);
    for (std::size_t a = 0; a < N_; ++a) {
      bool found = false;
      for (std::size_t b = 0; b < N_; ++b)
        if (add_[a * N_ + b] == zero_) {
          neg_[a] = static_cast<idx_t>(b);
          found = true;
          break;
        }
      if (!found) throw invalid_argument("addition table has no inverse for element " + std::to_string(a));
    }
    if (!unity_) {
      for (std::size_t e = 0; e < N_; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < N_ && ok; ++a) ok = mul_[e * N_ + a] == a && mul_[a * N_ + e] == a;
        if (ok) {
          unity_ = e;
          break;
        }
      }
    }
  }

  /// Builds the tables from element operations on 0..N-1.
  static TableRing from_ops(std::size_t N, const std::function<std::size_t(std::size_t, std::size_t)>& add,
                            const std::function<std::size_t(std::size_t, std::size_t)>& mul, std::size_t zero,
                            std::optional<std::size_t> unity = std::nullopt, const TableCaps& caps = {}) {
    if (N > caps.max_order) throw cap_exceeded("table ring order " + std::to_string(N) + " exceeds cap " + std::to_string(caps.max_order));
    std::vector<idx_t> A(N * N), M(N * N);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) {
        A[a * N + b] = static_cast<idx_t>(add(a, b));
        M[a * N + b] = static_cast<idx_t>(mul(a, b));
      }
    return TableRing(N, std::move(A), std::move(M), zero, unity, caps);
  }

  std::size_t size() const { return N_; }
  std::size_t zero() const { return zero_; }
  std::optional<std::size_t> unity() const { return unity_; }
  std::size_t add(std::size_t a, std::size_t b) const { return add_[a * N_ + b]; }
  std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a * N_ + b]; }
  std::size_t neg(std::size_t a) const { return neg_[a]; }
  std::size_t sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }
  const std::vector<idx_t>& add_table() const { return add_; }
  const std::vector<idx_t>& mul_table() const { return mul_; }

  Mask empty_mask() const { return Mask(N_); }
  Mask full_mask() const {
    Mask m(N_);
    for (std::size_t i = 0; i < N_; ++i) m.set(i);
    return m;
  }

  /// Ring axioms on all triples when N <= full_limit, otherwise on `samples`
  /// random triples. Returns a description of the first violation.
  std::optional<std::string> check_axioms(std::size_t full_limit = 256, std::size_t samples = 200000,
                                          std::uint64_t seed = 0) const {
    auto check = [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
      if (add(a, b) != add(b, a)) return "addition not commutative";
      if (add(add(a, b), c) != add(a, add(b, c))) return "addition not associative";
      if (mul(mul(a, b), c) != mul(a, mul(b, c))) return "multiplication not associative";
      if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) return "left distributivity fails";
      if (mul(add(a, b), c) != add(mul(a, c), mul(b, c))) return "right distributivity fails";
      return std::nullopt;
    };
    for (std::size_t a = 0; a < N_; ++a)
      if (add(a, zero_) != a) return "zero is not neutral";
    if (N_ <= full_limit) {
      for (std::size_t a = 0; a < N_; ++a)
        for (std::size_t b = 0; b < N_; ++b)
          for (std::size_t c = 0; c < N_; ++c)
            if (auto e = check(a, b, c)) return e;
    } else {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, N_ - 1);
      for (std::size_t s = 0; s < samples; ++s)
        if (auto e = check(pick(rng), pick(rng), pick(rng))) return e;
    }
    return std::nullopt;
  }

  /// a^k = 0 for some k.
  bool is_nilpotent(std::size_t a) const {
    std::size_t x = a;
    for (std::size_t k = 0; k <= N_; ++k) {
      if (x == zero_) return true;
      x = mul(x, a);
    }
    return false;
  }

  /// External direct sum; element (a, b) has index a * |o| + b.
  TableRing direct_sum(const TableRing& o, const TableCaps& caps = {}) const {
    const std::size_t M = o.size();
    const std::size_t N = N_ * M;
    std::optional<std::size_t> u;
    if (unity_ && o.unity_) u = *unity_ * M + *o.unity_;
    return from_ops(
        N, [&](std::size_t x, std::size_t y) { return add(x / M, y / M) * M + o.add(x % M, y % M); },
        [&](std::size_t x, std::size_t y) { return mul(x / M, y / M) * M + o.mul(x % M, y % M); },
        zero_ * M + o.zero_, u, caps);
  }

 private:
  std::size_t N_ = 0;
  std::vector<idx_t> add_, mul_, neg_;
  std::size_t zero_ = 0;
  std::optional<std::size_t> unity_;
};

/// Least subring containing `seed` and 0.
inline Mask closure(const TableRing& R, const Mask& seed) {
  Mask in = seed;
  in.set(R.zero());
  std::vector<std::size_t> members = in.elements();
  std::vector<std::size_t> queue = members;
  auto push = [&](std::size_t x) {
    if (!in.test(x)) {
      in.set(x);
      members.push_back(x);
      queue.push_back(x);
    }
  };
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::size_t x = queue[qi];
    push(R.neg(x));
    for (std::size_t j = 0; j < members.size(); ++j) {
      const std::size_t y = members[j];
      push(R.add(x, y));
      push(R.mul(x, y));
      push(R.mul(y, x));
    }
  }
  return in;
}

inline Mask closure(const TableRing& R, const std::vector<std::size_t>& seed) {
  Mask m = R.empty_mask();
  for (auto s : seed) m.set(s);
  return closure(R, m);
}

/// Least two-sided ideal containing `seed`.
inline Mask ideal_closure(const TableRing& R, const Mask& seed) {
  Mask in = seed;
  in.set(R.zero());
  std::vector<std::size_t> members = in.elements();
  std::vector<std::size_t> queue = members;
  auto push = [&](std::size_t x) {
    if (!in.test(x)) {
      in.set(x);
      members.push_back(x);
      queue.push_back(x);
    }
  };
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::size_t x = queue[qi];
    push(R.neg(x));
    for (std::size_t r = 0; r < R.size(); ++r) {
      push(R.mul(r, x));
      push(R.mul(x, r));
    }
    for (std::size_t j = 0; j < members.size(); ++j) push(R.add(x, members[j]));
  }
  return in;
}

namespace detail {

/// Join-closure of `generators` under `join`, seeded with {0}.
inline std::vector<Mask> join_lattice(const TableRing& R, std::vector<Mask> generators,
                                      const std::function<Mask(const Mask&)>& close, const TableCaps& caps) {
  std::unordered_set<Mask, MaskHash> seen;
  std::vector<Mask> out;
  auto add = [&](Mask m) {
    if (seen.insert(m).second) {
      if (out.size() >= caps.max_lattice) throw cap_exceeded("lattice size exceeds cap " + std::to_string(caps.max_lattice));
      out.push_back(std::move(m));
    }
  };
  Mask zero = R.empty_mask();
  zero.set(R.zero());
  add(zero);
  std::vector<Mask> gens;
  {
    std::unordered_set<Mask, MaskHash> g;
    for (auto& m : generators)
      if (g.insert(m).second) gens.push_back(m);
  }
  for (auto& g : gens) add(g);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens) {
      if (g.subset_of(out[i])) continue;
      add(close(out[i] | g));
    }
  }
  std::sort(out.begin(), out.end(), [](const Mask& a, const Mask& b) {
    const auto ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.elements() < b.elements();
  });
  return out;
}

}  // namespace detail

/// Complete subring lattice, ascending by size, then by member list.
inline std::vector<Mask> all_subrings(const TableRing& R, const TableCaps& caps = {}) {
  std::vector<Mask> cyclic;
  cyclic.reserve(R.size());
  for (std::size_t r = 0; r < R.size(); ++r) cyclic.push_back(closure(R, std::vector<std::size_t>{r}));
  return detail::join_lattice(R, std::move(cyclic), [&](const Mask& m) { return closure(R, m); }, caps);
}

/// Proper subrings not contained in any other proper subring.
inline std::vector<Mask> maximal_among_proper(const TableRing& R, const std::vector<Mask>& lattice) {
  std::vector<Mask> proper;
  for (auto& m : lattice)
    if (!m.all()) proper.push_back(m);
  std::vector<Mask> out;
  for (std::size_t i = 0; i < proper.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < proper.size() && maximal; ++j) {
      if (i != j && proper[j].count() > proper[i].count() && proper[i].subset_of(proper[j])) maximal = false;
    }
    if (maximal) out.push_back(proper[i]);
  }
  (void)R;
  return out;
}

inline std::vector<Mask> maximal_subrings(const TableRing& R, const TableCaps& caps = {}) {
  return maximal_among_proper(R, all_subrings(R, caps));
}

/// All two-sided ideals, ascending by size; {0} first and R last.
inline std::vector<Mask> two_sided_ideals(const TableRing& R, const TableCaps& caps = {}) {
  std::vector<Mask> cyclic;
  for (std::size_t r = 0; r < R.size(); ++r) {
    Mask s = R.empty_mask();
    s.set(r);
    cyclic.push_back(ideal_closure(R, s));
  }
  return detail::join_lattice(R, std::move(cyclic), [&](const Mask& m) { return ideal_closure(R, m); }, caps);
}

/// I is an additive subgroup absorbing multiplication on both sides.
inline bool is_two_sided_ideal(const TableRing& R, const Mask& I) {
  if (!I.test(R.zero())) return false;
  const auto el = I.elements();
  for (auto a : el) {
    if (!I.test(R.neg(a))) return false;
    for (auto b : el)
      if (!I.test(R.add(a, b))) return false;
    for (std::size_t r = 0; r < R.size(); ++r)
      if (!I.test(R.mul(r, a)) || !I.test(R.mul(a, r))) return false;
  }
  return true;
}

inline bool is_subring(const TableRing& R, const Mask& S) { return closure(R, S) == S; }

struct Quotient {
  TableRing ring;
  std::vector<std::size_t> projection;  // element -> coset label
};

/// R/I with cosets labelled in order of their least element.
inline Quotient quotient(const TableRing& R, const Mask& I, const TableCaps& caps = {}) {
  if (!is_two_sided_ideal(R, I)) throw invalid_argument("quotient: not a two-sided ideal");
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(R.size(), none);
  std::vector<std::size_t> rep;
  const auto el = I.elements();
  for (std::size_t a = 0; a < R.size(); ++a) {
    if (label[a] != none) continue;
    const std::size_t l = rep.size();
    rep.push_back(a);
    for (auto i : el) label[R.add(a, i)] = l;
  }
  const std::size_t M = rep.size();
  std::optional<std::size_t> u;
  if (R.unity()) u = label[*R.unity()];
  TableRing Q = TableRing::from_ops(
      M, [&](std::size_t x, std::size_t y) { return label[R.add(rep[x], rep[y])]; },
      [&](std::size_t x, std::size_t y) { return label[R.mul(rep[x], rep[y])]; }, label[R.zero()], u, caps);
  return {std::move(Q), std::move(label)};
}

/// Largest nil two-sided ideal, which for a finite ring is the Jacobson radical.
inline Mask jacobson_radical(const TableRing& R, const TableCaps& caps = {}) {
  Mask best = R.empty_mask();
  best.set(R.zero());
  for (const auto& I : two_sided_ideals(R, caps)) {
    bool nil = true;
    for (auto a : I.elements())
      if (!R.is_nilpotent(a)) {
        nil = false;
        break;
      }
    if (nil && I.count() > best.count()) best = I;
  }
  return best;
}

/// Binary dump: "RCTB", u32 N, u32 zero, u32 unity (0xffffffff if
/// none), then add and mul tables as little-endian u16, row-major.
inline void write_table_binary(const TableRing& R, std::ostream& os) {
  auto u32 = [&](std::uint32_t x) {
    for (int i = 0; i < 4; ++i) os.put(static_cast<char>((x >> (8 * i)) & 0xff));
  };
  auto u16 = [&](std::uint16_t x) {
    os.put(static_cast<char>(x & 0xff));
    os.put(static_cast<char>(x >> 8));
  };
  os.write("RCTB", 4);
  u32(static_cast<std::uint32_t>(R.size()));
  u32(static_cast<std::uint32_t>(R.zero()));
  u32(R.unity() ? static_cast<std::uint32_t>(*R.unity()) : 0xffffffffU);
  for (auto x : R.add_table()) u16(x);
  for (auto x : R.mul_table()) u16(x);
}

inline TableRing read_table_binary(std::istream& is, const TableCaps& caps = {}) {
  char magic[4];
  if (!is.read(magic, 4) || std::string(magic, 4) != "RCTB") throw invalid_argument("not a ring table file");
  auto u32 = [&]() {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) throw invalid_argument("truncated ring table file");
    return static_cast<std::uint32_t>(b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24));
  };
  const std::size_t N = u32();
  const std::size_t zero = u32();
  const std::uint32_t unity = u32();
  if (N > caps.max_order) throw cap_exceeded("table ring order exceeds cap");
  std::vector<TableRing::idx_t> A(N * N), M(N * N);
  auto read16 = [&](std::vector<TableRing::idx_t>& t) {
    for (auto& x : t) {
      unsigned char b[2];
      if (!is.read(reinterpret_cast<char*>(b), 2)) throw invalid_argument("truncated ring table file");
      x = static_cast<TableRing::idx_t>(b[0] | (b[1] << 8));
    }
  };
  read16(A);
  read16(M);
  std::optional<std::size_t> u;
  if (unity != 0xffffffffU) u = unity;
  return TableRing(N, std::move(A), std::move(M), zero, u, caps);
}

}  // namespace ringcover
