#include <gtest/gtest.h>

#include "ringcover/bounds.hpp"
#include "ringcover/formulas.hpp"
#include "ringcover/subspace.hpp"

using namespace ringcover;

TEST(Formulas, Omega) {
  EXPECT_EQ(omega(1), 0u);
  EXPECT_EQ(omega(2), 1u);
  EXPECT_EQ(omega(12), 2u);
  EXPECT_EQ(omega(30), 3u);
  EXPECT_THROW(omega(0), invalid_argument);
}

TEST(Formulas, EulerPhi) {
  EXPECT_EQ(euler_phi(std::uint64_t{1}), 1u);
  EXPECT_EQ(euler_phi(std::uint64_t{8}), 4u);
  EXPECT_EQ(euler_phi(std::uint64_t{31}), 30u);
  EXPECT_EQ(euler_phi(BigInt(255)), 128);
}

TEST(Formulas, GLOrderMatchesInvertibleCount) {
  for (unsigned q : {2u, 3u}) {
    auto F = field_of_order(q);
    std::uint64_t count = 0;
    const std::uint64_t total = nt::checked_pow(q, 4);
    for (std::uint64_t c = 0; c < total; ++c) {
      MatGF m(F, 2, 2);
      std::uint64_t x = c;
      for (unsigned k = 0; k < 4; ++k, x /= q) m(k / 2, k % 2) = static_cast<elem_t>(x % q);
      count += m.is_invertible();
    }
    EXPECT_EQ(gl_order(2, BigInt(q)), BigInt(count));
  }
}

TEST(Formulas, MatrixRing) {
  EXPECT_EQ(sigma_matrix_ring(2, BigInt(2)), 4);
  EXPECT_EQ(sigma_matrix_ring(3, BigInt(2)), 15);
  EXPECT_EQ(sigma_matrix_ring(2, BigInt(3)), 7);
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const BigInt Q = q;
    EXPECT_EQ(sigma_matrix_ring(2, Q) * 2, Q * Q + Q + 2);
  }
  EXPECT_THROW(sigma_matrix_ring(1, BigInt(2)), invalid_argument);
}

TEST(Formulas, AglCases) {
  auto a = sigma_agl_formula(1, 2, 2);
  EXPECT_EQ(a.value, 3);
  EXPECT_EQ(a.elementary, Tri::no);
  EXPECT_EQ(sigma_agl_formula(1, 4, 4).value, 4);
  EXPECT_EQ(sigma_agl_formula(1, 2, 4).value, 5);
  EXPECT_EQ(sigma_agl_formula(1, 3, 3).value, 4);
  EXPECT_EQ(sigma_agl_formula(1, 5, 5).value, 6);
  EXPECT_EQ(sigma_agl_formula(1, 3, 3).elementary, Tri::yes);
  auto b = sigma_agl_formula(3, 3, 3);
  EXPECT_EQ(b.value, 40);
  EXPECT_EQ(b.elementary, Tri::yes);
  EXPECT_EQ(b.case_tag, "explicit_cover");
  EXPECT_EQ(sigma_agl_formula(5, 2, 4).value, 1180);
  auto c = sigma_agl_formula(2, 2, 2);
  EXPECT_EQ(c.value, 4);
  EXPECT_EQ(c.elementary, Tri::no);
  EXPECT_EQ(sigma_agl_formula(2, 3, 9).value, sigma_matrix_ring(2, BigInt(3)));
  auto d = sigma_agl_formula(3, 2, 2);
  EXPECT_EQ(d.kind, SigmaFormulaResult::Kind::unknown);
  EXPECT_EQ(*d.upper_bound, 15);
  EXPECT_EQ(d.elementary, Tri::no);
  EXPECT_THROW(sigma_agl_formula(3, 2, 3), invalid_argument);
}

TEST(Formulas, CountsMatchEnumeration) {
  for (unsigned n = 3; n <= 5; ++n)
    for (unsigned k = 1; 2 * k < n; ++k) {
      const auto F = field_of_order(2);
      EXPECT_EQ(BigInt(enumerate_subspaces(n, k, F).size()), qbinom(n, k, BigInt(2)));
    }
  EXPECT_EQ(type_tk_count(3, 1, BigInt(3)), 12);
  EXPECT_EQ(subfield_pi_count(3, 1, BigInt(3)), 156);
  EXPECT_EQ(subfield_pi_count(5, 1, BigInt(2)), 83328);
  EXPECT_EQ(field_centralizer_population(3, 3, BigInt(3)), 144);
  EXPECT_EQ(field_centralizer_population(4, 2, BigInt(2)), 56);
  EXPECT_EQ(field_centralizer_population(5, 5, BigInt(2)), 64512);
  EXPECT_EQ(subfield_conjugate_population(3, BigInt(2), BigInt(4)), 360);
}

TEST(Bounds, MatrixRingBoundEqualityCase) {
  EXPECT_TRUE(check_matrix_ring_bound(2, 2, 1).equality);
  EXPECT_TRUE(check_matrix_ring_bound(2, 2, 1).pass());
  EXPECT_FALSE(check_matrix_ring_bound(3, 2, 2).equality);
  EXPECT_TRUE(check_matrix_ring_bound(4, 3, 2).pass());
  EXPECT_THROW(check_matrix_ring_bound(4, 3, 1), invalid_argument);
}

TEST(Bounds, ProductLowerBoundEqualityCases) {
  EXPECT_TRUE(check_product_lower_bound(2, 2).equality);
  EXPECT_TRUE(check_product_lower_bound(3, 2).equality);
  EXPECT_FALSE(check_product_lower_bound(5, 2).equality);
  EXPECT_TRUE(check_product_lower_bound(5, 2).pass());
}

TEST(Bounds, SingerRatio) {
  const auto c = check_singer_ratio_estimate(6, 2, 2, 4);
  EXPECT_TRUE(c.pass());
  EXPECT_LE(c.lhs, BigRat(1, 256));
  EXPECT_THROW(check_singer_ratio_estimate(4, 2, 2, 2), invalid_argument);
}

TEST(Bounds, AglBelowMatrixRing) {
  const auto c = check_agl_below_matrix_ring(3, 2, 1);
  EXPECT_TRUE(c.equality);
  EXPECT_EQ(c.lhs, 15);
  EXPECT_EQ(c.rhs, 15);
  EXPECT_TRUE(check_agl_below_matrix_ring(5, 3, 2).pass());
}

TEST(Bounds, FullGridsPass) {
  for (const auto& name : bound_check_names()) {
    const auto rows = sweep_bounds(name, default_grid(name));
    EXPECT_FALSE(rows.empty()) << name;
    for (const auto& r : rows) EXPECT_TRUE(r.pass()) << name << " " << to_string(r.lhs) << " vs " << to_string(r.rhs);
  }
}

TEST(Bounds, ListParsing) {
  EXPECT_EQ(parse_int_list("2..4,8"), (std::vector<std::uint64_t>{2, 3, 4, 8}));
  EXPECT_THROW(parse_int_list("3..1"), invalid_argument);
  EXPECT_THROW(parse_int_list("a"), invalid_argument);
  EXPECT_THROW(sweep_bounds("nope", default_grid("nope")), invalid_argument);
}
