#include <set>

#include <gtest/gtest.h>

#include "ringcover/agl.hpp"
#include "ringcover/ring_spec.hpp"
#include "ringcover/table_ring.hpp"

using namespace ringcover;

namespace {

struct Params {
  unsigned n;
  std::uint64_t q1, q2;
};

const std::vector<Params> kSmall = {{1, 2, 2}, {1, 2, 4}, {1, 3, 3}, {1, 4, 2}, {2, 2, 2}};

}  // namespace

TEST(Agl, Numbers) {
  auto x = agl_numbers(5, 2, 4);
  EXPECT_EQ(x.q, 4u);
  EXPECT_EQ(x.d, 2u);
  EXPECT_EQ(x.a, 5u);
  EXPECT_TRUE(in_cover_regime(x));
  EXPECT_FALSE(in_cover_regime(agl_numbers(2, 2, 2)));
  EXPECT_FALSE(in_cover_regime(agl_numbers(4, 2, 4)));  // d = 2 = n - n/2
  EXPECT_TRUE(in_cover_regime(agl_numbers(3, 3, 3)));
  AglRing R(3, 3, 3);
  EXPECT_EQ(R.order(), ipow(BigInt(3), 13));
  EXPECT_EQ(R.distinct_complements(), 27);
}

TEST(Agl, IndexRoundTrip) {
  for (auto p : kSmall) {
    AglRing R(p.n, p.q1, p.q2);
    const auto N = R.order_u64();
    for (std::uint64_t i = 0; i < N; ++i) ASSERT_EQ(R.index(R.element(i)), i);
  }
}

TEST(Agl, RadicalSquaresToZeroAndMeetsCentreTrivially) {
  for (auto p : kSmall) {
    AglRing R(p.n, p.q1, p.q2);
    const auto N = R.order_u64();
    std::vector<AglElement> all, radical;
    for (std::uint64_t i = 0; i < N; ++i) {
      all.push_back(R.element(i));
      if (R.in_radical(all.back())) radical.push_back(all.back());
    }
    EXPECT_EQ(BigInt(radical.size()), R.distinct_complements());
    for (const auto& a : radical)
      for (const auto& b : radical) ASSERT_TRUE(R.mul(a, b) == R.zero());
    std::size_t central_radical = 0;
    for (const auto& j : radical) {
      bool central = true;
      for (const auto& r : all) {
        if (!(R.mul(j, r) == R.mul(r, j))) {
          central = false;
          break;
        }
      }
      central_radical += central;
    }
    EXPECT_EQ(central_radical, 1u) << R.spec();
  }
}

TEST(Agl, StructuredMatchesDenseMatrices) {
  for (auto p : std::vector<Params>{{1, 2, 2}, {1, 2, 4}, {1, 4, 2}, {2, 2, 2}}) {
    AglRing R(p.n, p.q1, p.q2);
    const auto N = R.order_u64();
    std::set<std::vector<elem_t>> images;
    for (std::uint64_t i = 0; i < N; ++i) {
      const auto a = R.element(i);
      const auto Da = R.to_dense(a);
      images.insert(Da.entries());
      EXPECT_TRUE(R.from_dense(Da) == a);
      for (std::uint64_t j = 0; j < N; j += (N > 64 ? 7 : 1)) {
        const auto b = R.element(j);
        const auto Db = R.to_dense(b);
        ASSERT_EQ(R.to_dense(R.mul(a, b)), Da * Db);
        ASSERT_EQ(R.to_dense(R.add(a, b)), Da + Db);
      }
    }
    EXPECT_EQ(images.size(), N);
  }
}

TEST(Agl, TableSatisfiesRingAxioms) {
  for (auto p : kSmall) {
    auto T = agl_table(AglRing(p.n, p.q1, p.q2));
    EXPECT_EQ(T.check_axioms(), std::nullopt);
    ASSERT_TRUE(T.unity());
    AglRing R(p.n, p.q1, p.q2);
    EXPECT_EQ(*T.unity(), R.index(R.one()));
  }
}

TEST(Agl, ComplementsAreConjugatesOfS) {
  AglRing R(1, 3, 3);
  const auto F = R.F();
  for (elem_t x0 = 0; x0 < 3; ++x0) {
    const Vec x = {x0};
    std::size_t count = 0;
    for (std::uint64_t i = 0; i < R.order_u64(); ++i) {
      const auto r = R.element(i);
      if (R.in_complement(r, x)) {
        ++count;
      }
    }
    EXPECT_EQ(BigInt(count), R.complement_order());
    // s -> s^{1+x} is a ring homomorphism on S
    for (std::uint64_t i = 0; i < R.order_u64(); ++i) {
      const auto s = R.element(i);
      if (!R.in_complement_S(s)) continue;
      for (std::uint64_t j = 0; j < R.order_u64(); ++j) {
        const auto t = R.element(j);
        if (!R.in_complement_S(t)) continue;
        EXPECT_TRUE(R.conjugate_complement_element(R.mul(s, t), x) ==
                    R.mul(R.conjugate_complement_element(s, x), R.conjugate_complement_element(t, x)));
      }
    }
  }
  (void)F;
}

TEST(Agl, CentralizerUnionMatchesEigenvectorSearch) {
  AglRing R(2, 2, 4);
  const auto q = R.numbers().q;
  for (std::uint64_t hc = 0; hc < 16; ++hc) {
    for (elem_t beta = 0; beta < R.numbers().q2; ++beta) {
      AglElement s = R.zero();
      for (unsigned k = 0; k < 4; ++k) s.h(k / 2, k % 2) = static_cast<elem_t>((hc >> k) & 1U);
      s.beta = beta;
      bool found = false;
      for (elem_t a = 0; a < q; ++a)
        for (elem_t b = 0; b < q; ++b)
          if ((a || b) && R.centralizes(s, Vec{a, b})) found = true;
      EXPECT_EQ(found, R.in_centralizer_union(s));
    }
  }
}

TEST(Agl, RejectsBadInput) {
  EXPECT_THROW(AglRing(3, 2, 3), invalid_argument);
  EXPECT_THROW(AglRing(0, 2, 2), invalid_argument);
  AglRing R(2, 2, 2);
  EXPECT_THROW(R.make(MatGF(R.F1(), 3, 3), Vec(2, 0), 0), invalid_argument);
  auto r = R.one();
  r.v[0] = 1;
  EXPECT_THROW(R.in_centralizer_union(r), invalid_argument);
}
