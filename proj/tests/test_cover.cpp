#include <random>

#include <gtest/gtest.h>

#include "ringcover/cover.hpp"
#include "ringcover/ring_spec.hpp"
#include "ringcover/sigma.hpp"

using namespace ringcover;

TEST(Cover, FamilySizesMatchFormula) {
  for (auto [n, q1, q2] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{
           {3, 3, 3}, {4, 2, 2}, {5, 2, 4}, {3, 4, 4}, {3, 2, 2}, {1, 3, 3}, {1, 2, 4}, {5, 2, 2}}) {
    const auto f = build_cover(n, q1, q2);
    const auto s = sigma_agl_formula(n, q1, q2);
    const BigInt expected = s.kind == SigmaFormulaResult::Kind::unknown ? *s.upper_bound : s.value;
    EXPECT_EQ(f.size(), expected) << n << "," << q1 << "," << q2;
  }
  EXPECT_EQ(build_cover(3, 3, 3).size(), 40);
  EXPECT_EQ(build_cover(5, 2, 4).size(), 1180);
}

TEST(Cover, RejectsOutOfRegime) {
  EXPECT_THROW(build_cover(2, 2, 2), out_of_regime);
  EXPECT_THROW(build_cover(4, 2, 4), out_of_regime);
  EXPECT_THROW(build_cover(3, 2, 4), out_of_regime);
}

TEST(Cover, SmallRingMembersAgainstSubringLattice) {
  for (auto [q1, q2] : std::vector<std::pair<unsigned, unsigned>>{{3, 3}, {2, 4}, {5, 5}}) {
    const auto f = build_cover(1, q1, q2);
    const auto& R = *f.ring;
    const auto T = agl_table(R);
    const auto maximal = maximal_subrings(T);
    for (std::size_t i = 0; i < f.complement_codes.size() + f.zed.size(); ++i) {
      Mask m(T.size());
      for (std::size_t e = 0; e < T.size(); ++e)
        if (f.contains(i, R.element(e))) m.set(e);
      EXPECT_TRUE(is_subring(T, m)) << "member " << i;
      EXPECT_TRUE(m.test(*T.unity())) << "member " << i;
      // the scalar member {h = beta} is maximal only when q1 = q2
      const bool maximal_expected = i < f.complement_codes.size() || q1 == q2;
      EXPECT_EQ(std::find(maximal.begin(), maximal.end(), m) != maximal.end(), maximal_expected) << "member " << i;
    }
  }
}

TEST(Cover, MembersAreSubringsContainingOne) {
  const auto f = build_cover(3, 3, 3);
  const auto& R = *f.ring;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> pick(0, R.order_u64() - 1);
  const std::size_t members = f.complement_codes.size() + f.zed.size();
  for (std::size_t i = 0; i < members; ++i) {
    EXPECT_TRUE(f.contains(i, R.one()));
    std::vector<AglElement> inside;
    while (inside.size() < 40) {
      auto r = R.element(pick(rng));
      if (i < f.complement_codes.size()) {
        // project onto the member: v = hx - x beta
        r.v = R.twist(r.h, r.beta, f.complement_vector(f.complement_codes[i]));
      }
      if (f.contains(i, r)) inside.push_back(r);
    }
    for (std::size_t a = 0; a + 1 < inside.size(); ++a) {
      EXPECT_TRUE(f.contains(i, R.mul(inside[a], inside[a + 1])));
      EXPECT_TRUE(f.contains(i, R.sub(inside[a], inside[a + 1])));
    }
  }
}

TEST(Cover, SweepsAgree) {
  for (auto [n, q1, q2] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{1, 2, 2}, {1, 3, 3}, {1, 2, 4}, {3, 3, 3}, {4, 2, 2}}) {
    const auto f = build_cover(n, q1, q2);
    const auto a = verify_cover_naive(f, 1);
    const auto b = verify_cover_reduced(f, 1);
    EXPECT_TRUE(a.covered);
    EXPECT_TRUE(b.covered);
    EXPECT_EQ(BigInt(a.elements_checked), f.ring->order());
    EXPECT_EQ(BigInt(b.elements_checked), f.ring->complement_order());
  }
}

TEST(Cover, SweepsLocateTheSameGap) {
  const auto f = build_cover(3, 3, 3);
  for (std::size_t drop = 0; drop < f.zed.size(); drop += 3) {
    auto g = f;
    g.zed.erase(g.zed.begin() + static_cast<std::ptrdiff_t>(drop));
    const auto a = verify_cover_naive(g, 1), b = verify_cover_reduced(g, 1);
    ASSERT_FALSE(a.covered);
    ASSERT_FALSE(b.covered);
    EXPECT_EQ(a.first_uncovered, b.first_uncovered);
    // the reported element really lies in no member
    const auto& r = *a.first_uncovered_element;
    for (std::size_t i = 0; i < g.complement_codes.size() + g.zed.size(); ++i) EXPECT_FALSE(g.contains(i, r));
  }
  auto h = f;
  h.complement_codes.erase(h.complement_codes.begin() + 5);
  const auto a = verify_cover_naive(h, 1), b = verify_cover_reduced(h, 1);
  EXPECT_FALSE(a.covered);
  EXPECT_EQ(a.first_uncovered, b.first_uncovered);
}

TEST(Cover, WorkerCountDoesNotChangeResults) {
  auto f = build_cover(4, 2, 2);
  f.zed.pop_back();
  const auto a = verify_cover_naive(f, 1), b = verify_cover_naive(f, 4);
  EXPECT_EQ(a.first_uncovered, b.first_uncovered);
  EXPECT_EQ(a.per_member_hits, b.per_member_hits);
  const auto c = verify_cover_reduced(f, 1), d = verify_cover_reduced(f, 3);
  EXPECT_EQ(c.first_uncovered, d.first_uncovered);
  EXPECT_EQ(c.per_member_hits, d.per_member_hits);
  EXPECT_EQ(c.centralizer_union, d.centralizer_union);
}

TEST(Cover, NonPrimeFieldSweepsAgree) {
  auto f = build_cover(3, 4, 4);
  f.zed.erase(f.zed.begin() + 3);
  const auto a = verify_cover_naive(f, 0, 1ULL << 27), b = verify_cover_reduced(f);
  EXPECT_FALSE(a.covered);
  EXPECT_EQ(a.first_uncovered, b.first_uncovered);
}

TEST(Cover, CapsAreEnforced) {
  const auto f = build_cover(5, 2, 4);
  EXPECT_THROW(verify_cover_naive(f), cap_exceeded);
}
