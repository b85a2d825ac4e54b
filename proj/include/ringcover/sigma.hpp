#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringcover/agl.hpp"
#include "ringcover/errors.hpp"
#include "ringcover/ring_spec.hpp"
#include "ringcover/table_ring.hpp"

namespace ringcover {

/// Universe 0..N-1 with candidate sets; `forced` sets are always taken.
struct CoverInstance {
  std::size_t universe = 0;
  std::vector<Mask> sets;
  std::vector<std::size_t> forced;
};

struct SigmaResult {
  bool coverable = false;  // false models sigma = infinity
  std::size_t value = 0;   // meaningful when coverable
  std::vector<std::size_t> witness;
  bool exhausted = false;  // branch and bound ran to completion
  std::uint64_t nodes = 0;

  std::string to_string() const { return coverable ? std::to_string(value) : std::string("infinite"); }
};

/// a < b where NotCoverable compares greater than every finite value.
inline bool sigma_less(const SigmaResult& a, const SigmaResult& b) {
  if (!a.coverable) return false;
  if (!b.coverable) return true;
  return a.value < b.value;
}

namespace detail {

class CoverSearch {
 public:
  explicit CoverSearch(const CoverInstance& in) : in_(in) {
    contain_.resize(in.universe);
    for (std::size_t s = 0; s < in.sets.size(); ++s)
      for (auto e : in.sets[s].elements()) contain_[e].push_back(s);
  }

  SigmaResult run() {
    SigmaResult r;
    Mask uncovered(in_.universe);
    for (std::size_t i = 0; i < in_.universe; ++i) uncovered.set(i);
    std::vector<std::size_t> chosen;
    for (auto f : in_.forced) {
      if (f >= in_.sets.size()) throw invalid_argument("forced set index out of range");
      if (std::find(chosen.begin(), chosen.end(), f) == chosen.end()) {
        chosen.push_back(f);
        uncovered = uncovered.minus(in_.sets[f]);
      }
    }
    for (auto e : uncovered.elements()) {
      if (contain_[e].empty()) {
        r.coverable = false;
        r.exhausted = true;
        return r;
      }
    }
    best_ = greedy(uncovered, chosen);
    search(uncovered, chosen);
    r.coverable = true;
    r.value = best_.size();
    r.witness = best_;
    std::sort(r.witness.begin(), r.witness.end());
    r.exhausted = true;
    r.nodes = nodes_;
    return r;
  }

 private:
  std::vector<std::size_t> greedy(Mask uncovered, std::vector<std::size_t> chosen) const {
    while (!uncovered.none()) {
      std::size_t best = 0, gain = 0;
      for (std::size_t s = 0; s < in_.sets.size(); ++s) {
        const auto g = in_.sets[s].intersect_count(uncovered);
        if (g > gain) {
          gain = g;
          best = s;
        }
      }
      chosen.push_back(best);
      uncovered = uncovered.minus(in_.sets[best]);
    }
    return chosen;
  }

  void search(const Mask& uncovered, std::vector<std::size_t>& chosen) {
    ++nodes_;
    if (uncovered.none()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + 1 >= best_.size()) return;
    std::size_t max_gain = 0;
    for (const auto& s : in_.sets) max_gain = std::max(max_gain, s.intersect_count(uncovered));
    const std::size_t left = uncovered.count();
    const std::size_t lower = (left + max_gain - 1) / max_gain;
    if (chosen.size() + lower >= best_.size()) return;
    // branch on the uncovered element with the fewest candidates, lowest index first
    std::size_t pick = in_.universe, fewest = static_cast<std::size_t>(-1);
    for (auto e : uncovered.elements()) {
      if (contain_[e].size() < fewest) {
        fewest = contain_[e].size();
        pick = e;
      }
    }
    for (auto s : contain_[pick]) {
      chosen.push_back(s);
      search(uncovered.minus(in_.sets[s]), chosen);
      chosen.pop_back();
    }
  }

  const CoverInstance& in_;
  std::vector<std::vector<std::size_t>> contain_;
  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Minimum number of candidate sets covering the universe, by branch and bound.
inline SigmaResult min_cover(const CoverInstance& in) {
  for (const auto& s : in.sets)
    if (s.universe() != in.universe) throw invalid_argument("candidate set over a different universe");
  if (in.universe == 0) {
    SigmaResult r;
    r.coverable = true;
    r.exhausted = true;
    return r;
  }
  return detail::CoverSearch(in).run();
}

struct ExactCover {
  SigmaResult result;
  std::vector<Mask> maximal;  // candidates, indexed by witness entries
};

/// Covering number by minimum set cover over the maximal subrings.
inline ExactCover covering_number_exact(const TableRing& R, const TableCaps& caps = {}) {
  ExactCover out;
  out.maximal = maximal_subrings(R, caps);
  CoverInstance in;
  in.universe = R.size();
  in.sets = out.maximal;
  out.result = min_cover(in);
  return out;
}

inline ExactCover covering_number_agl_brute(unsigned n, std::uint64_t q1, std::uint64_t q2, const TableCaps& caps = {}) {
  return covering_number_exact(agl_table(AglRing(n, q1, q2), caps), caps);
}

struct IdealReport {
  std::size_t ideal_order = 0;
  std::size_t quotient_order = 0;
  SigmaResult quotient_sigma;
  bool strictly_larger = false;  // sigma(R) < sigma(R/I)
  bool monotone = false;         // sigma(R) <= sigma(R/I)
};

struct ElementaryReport {
  SigmaResult sigma;
  std::vector<IdealReport> ideals;  // every nonzero two-sided ideal, ascending by size
  bool elementary = false;
};

/// sigma(R) < sigma(R/I) for every nonzero two-sided ideal I.
inline ElementaryReport is_sigma_elementary_brute(const TableRing& R, const TableCaps& caps = {}) {
  ElementaryReport rep;
  rep.sigma = covering_number_exact(R, caps).result;
  rep.elementary = true;
  for (const auto& I : two_sided_ideals(R, caps)) {
    if (I.count() == 1) continue;
    IdealReport ir;
    ir.ideal_order = I.count();
    auto Q = quotient(R, I, caps);
    ir.quotient_order = Q.ring.size();
    ir.quotient_sigma = covering_number_exact(Q.ring, caps).result;
    ir.strictly_larger = sigma_less(rep.sigma, ir.quotient_sigma);
    ir.monotone = ir.strictly_larger || (rep.sigma.coverable == ir.quotient_sigma.coverable &&
                                         (!rep.sigma.coverable || rep.sigma.value == ir.quotient_sigma.value));
    if (!ir.strictly_larger) rep.elementary = false;
    rep.ideals.push_back(std::move(ir));
  }
  return rep;
}

}  // namespace ringcover
