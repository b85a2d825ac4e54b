#include <gtest/gtest.h>

#include "ringcover/field.hpp"
#include "ringcover/numtheory.hpp"

using namespace ringcover;

namespace {

const std::vector<std::uint64_t> kOrders = {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81};

}  // namespace

TEST(Field, OrderAndGenerator) {
  for (auto q : kOrders) {
    auto F = field_of_order(q);
    EXPECT_EQ(F->order(), q);
    EXPECT_EQ(F->multiplicative_order(F->generator()), q - 1) << q;
  }
}

TEST(Field, AxiomsExhaustiveUpTo27) {
  for (auto q : kOrders) {
    if (q > 27) continue;
    auto F = field_of_order(q);
    for (elem_t a = 0; a < q; ++a) {
      EXPECT_EQ(F->add(a, 0), a);
      EXPECT_EQ(F->mul(a, 1), a);
      EXPECT_EQ(F->add(a, F->neg(a)), 0u);
      if (a) EXPECT_EQ(F->mul(a, F->inv(a)), 1u);
      for (elem_t b = 0; b < q; ++b) {
        EXPECT_EQ(F->add(a, b), F->add(b, a));
        EXPECT_EQ(F->mul(a, b), F->mul(b, a));
        for (elem_t c = 0; c < q; ++c) {
          ASSERT_EQ(F->add(F->add(a, b), c), F->add(a, F->add(b, c)));
          ASSERT_EQ(F->mul(F->mul(a, b), c), F->mul(a, F->mul(b, c)));
          ASSERT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
        }
      }
    }
  }
}

TEST(Field, FrobeniusIsAdditive) {
  for (auto q : kOrders) {
    auto F = field_of_order(q);
    const unsigned p = F->characteristic();
    for (elem_t a = 0; a < q; ++a)
      for (elem_t b = 0; b < q; ++b) ASSERT_EQ(F->pow(F->add(a, b), p), F->add(F->pow(a, p), F->pow(b, p)));
  }
}

TEST(Field, EmbeddingsAreRingHomomorphisms) {
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs = {{2, 4}, {2, 8}, {4, 16}, {2, 64}, {4, 64},
                                                                       {8, 64}, {3, 9}, {3, 27}, {9, 81}, {5, 25}};
  for (auto [s, t] : pairs) {
    auto S = field_of_order(s), T = field_of_order(t);
    Embedding e(S, T);
    EXPECT_EQ(e(1), 1u);
    for (elem_t a = 0; a < s; ++a) {
      EXPECT_EQ(e.preimage(e(a)), a);
      for (elem_t b = 0; b < s; ++b) {
        ASSERT_EQ(e(S->add(a, b)), T->add(e(a), e(b))) << s << "->" << t;
        ASSERT_EQ(e(S->mul(a, b)), T->mul(e(a), e(b))) << s << "->" << t;
      }
    }
  }
}

TEST(Field, EmbeddingsCompose) {
  auto F2 = field_of_order(2), F4 = field_of_order(4), F16 = field_of_order(16);
  Embedding a(F2, F4), b(F4, F16), c(F2, F16);
  for (elem_t x = 0; x < 2; ++x) EXPECT_EQ(b(a(x)), c(x));
  auto F8 = field_of_order(8), F64 = field_of_order(64), F256 = field_of_order(256);
  Embedding d(F4, F256), e(F16, F256), f(F8, F64), g(F2, F8), k(F2, F64);
  for (elem_t x = 0; x < 4; ++x) EXPECT_EQ(e(b(x)), d(x));
  EXPECT_THROW(Embedding(F16, F64), invalid_argument);
  for (elem_t x = 0; x < 2; ++x) EXPECT_EQ(f(g(x)), k(x));
}

TEST(Field, SubfieldMembershipCounts) {
  auto F = field_of_order(64);
  for (unsigned k : {1u, 2u, 3u, 6u}) {
    unsigned count = 0;
    for (elem_t a = 0; a < 64; ++a) count += F->in_subfield(a, k);
    EXPECT_EQ(count, 1u << k);
  }
  EXPECT_FALSE(F->in_subfield(F->generator(), 4));
  EXPECT_EQ(F->degree_of(F->generator()), 6u);
}

TEST(Field, MaximalSubfields) {
  auto F64 = field_of_order(64), F4 = field_of_order(4);
  auto m = maximal_subfields(F64);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0]->order(), 4u);
  EXPECT_EQ(m[1]->order(), 8u);
  auto c = maximal_subfields_containing(F64, F4);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0]->order(), 4u);
  auto c2 = maximal_subfields_containing(field_of_order(4096), F4);
  ASSERT_EQ(c2.size(), 2u);
  EXPECT_EQ(c2[0]->order(), 16u);
  EXPECT_EQ(c2[1]->order(), 64u);
  EXPECT_TRUE(maximal_subfields(field_of_order(5)).empty());
  EXPECT_THROW(maximal_subfields_containing(field_of_order(8), F4), invalid_argument);
}

TEST(Field, Compositum) {
  EXPECT_EQ(compositum(4, 8), 64u);
  EXPECT_EQ(compositum(2, 4), 4u);
  EXPECT_EQ(compositum(9, 27), 729u);
  EXPECT_THROW(compositum(2, 3), invalid_argument);
}

TEST(Field, RejectsNonPrimePowers) {
  EXPECT_THROW(field_of_order(6), invalid_argument);
  EXPECT_THROW(field_of_order(1), invalid_argument);
}

TEST(NumberTheory, Basics) {
  EXPECT_EQ(nt::prime_factors(60), (std::vector<std::uint64_t>{2, 3, 5}));
  EXPECT_EQ(nt::least_prime_divisor(35), 5u);
  EXPECT_EQ(nt::divisors(12), (std::vector<unsigned>{1, 2, 3, 4, 6, 12}));
  EXPECT_TRUE(nt::is_prime(97));
  EXPECT_FALSE(nt::is_prime(91));
  auto pp = nt::as_prime_power(81);
  ASSERT_TRUE(pp);
  EXPECT_EQ(pp->p, 3u);
  EXPECT_EQ(pp->exponent, 4u);
  EXPECT_FALSE(nt::as_prime_power(12));
}
