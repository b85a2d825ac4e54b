#include <set>

#include <gtest/gtest.h>

#include "ringcover/formulas.hpp"
#include "ringcover/singer.hpp"
#include "ringcover/subspace.hpp"

using namespace ringcover;

TEST(Subspace, EnumerationCountsEqualQBinomial) {
  for (unsigned q : {2u, 3u, 4u}) {
    auto F = field_of_order(q);
    for (unsigned n = 1; n <= 5; ++n) {
      if (q == 4 && n == 5) continue;  // covered by the acceptance run
      for (unsigned k = 0; k <= n; ++k) {
        auto subs = enumerate_subspaces(n, k, F);
        EXPECT_EQ(BigInt(subs.size()), qbinom(n, k, BigInt(q))) << n << "," << k << "," << q;
        std::set<std::vector<elem_t>> seen;
        for (const auto& U : subs) {
          EXPECT_EQ(U.dim(), k);
          seen.insert(U.basis().entries());
        }
        EXPECT_EQ(seen.size(), subs.size());
        EXPECT_TRUE(std::is_sorted(subs.begin(), subs.end()));
      }
    }
  }
}

TEST(Subspace, QBinomialExamples) {
  EXPECT_EQ(qbinom(3, 1, BigInt(3)), 13);
  EXPECT_EQ(qbinom(5, 2, BigInt(2)), 155);
  EXPECT_EQ(qbinom(7, 0, BigInt(5)), 1);
  for (unsigned n = 0; n <= 8; ++n)
    for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(qbinom(n, k, BigInt(4)), qbinom(n, n - k, BigInt(4)));
}

TEST(Subspace, ComplementMapIsABijectionOfComplements) {
  for (auto [n, k, q] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{3, 1, 2}, {3, 1, 3}, {4, 1, 2}, {5, 1, 2}, {5, 2, 2}, {3, 1, 4}}) {
    auto F = field_of_order(q);
    const auto& phi = complement_map(F, n, k);
    std::set<std::vector<elem_t>> images;
    for (std::size_t i = 0; i < phi.domain().size(); ++i) {
      const auto& U = phi.domain()[i];
      const auto& W = phi(i);
      EXPECT_EQ(W.dim(), n - k);
      EXPECT_TRUE(is_direct_sum(U, W));
      EXPECT_EQ(phi.preimage_index(W), i);
      images.insert(W.basis().entries());
    }
    EXPECT_EQ(images.size(), phi.domain().size());
    EXPECT_EQ(phi.codomain().size(), phi.domain().size());
  }
  EXPECT_THROW(ComplementMap(field_of_order(2), 4, 2), out_of_regime);
}

TEST(Singer, CyclesHaveOrderQkMinusOne) {
  for (auto [k, q] : std::vector<std::pair<unsigned, unsigned>>{{1, 3}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {4, 2}, {3, 3}}) {
    auto F = field_of_order(q);
    const auto cycles = enumerate_singer_cycles(k, F);
    EXPECT_EQ(BigInt(cycles.size()), singer_cycle_count(k, BigInt(q))) << k << "," << q;
    const std::uint64_t N = nt::checked_pow(q, k) - 1;
    std::set<std::vector<elem_t>> seen;
    for (const auto& C : cycles) {
      ASSERT_TRUE(C.has_order(N));
      seen.insert(C.entries());
    }
    EXPECT_EQ(seen.size(), cycles.size());
  }
}

TEST(Singer, KnownCounts) {
  EXPECT_EQ(enumerate_singer_cycles(2, field_of_order(3)).size(), 12u);
  EXPECT_EQ(enumerate_singer_cycles(3, field_of_order(2)).size(), 48u);
  EXPECT_EQ(enumerate_singer_cycles(2, field_of_order(2)).size(), 2u);
}

TEST(Singer, TypeTkStabilizesExactlyTheTwoSubspaces) {
  auto F = field_of_order(2);
  const unsigned n = 5, k = 2;
  const auto& phi = complement_map(F, n, k);
  const auto small = enumerate_singer_cycles(k, F);
  const auto large = enumerate_singer_cycles(n - k, F);
  const auto subs_k = enumerate_subspaces(n, k, F), subs_nk = enumerate_subspaces(n, n - k, F);
  for (std::size_t u = 0; u < phi.domain().size(); u += 17) {
    const auto t = make_type_tk(phi.domain()[u], small[u % small.size()], large[(3 * u) % large.size()]);
    std::size_t stab = 0;
    for (unsigned d = 1; d < n; ++d)
      for (const auto& W : enumerate_subspaces(n, d, F)) stab += stabilizes(t.matrix, W);
    EXPECT_EQ(stab, 2u);
    EXPECT_TRUE(stabilizes(t.matrix, t.subspace));
    EXPECT_TRUE(stabilizes(t.matrix, t.complement));
  }
}
