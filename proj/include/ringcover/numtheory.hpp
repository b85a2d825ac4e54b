#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "ringcover/errors.hpp"

namespace ringcover::nt {

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Distinct prime divisors of n in ascending order (empty for n <= 1).
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::uint64_t least_prime_divisor(std::uint64_t n) {
  if (n < 2) throw invalid_argument("least_prime_divisor: n must be at least 2");
  return prime_factors(n).front();
}

/// All positive divisors of m in ascending order.
inline std::vector<unsigned> divisors(unsigned m) {
  std::vector<unsigned> out;
  for (unsigned k = 1; k <= m; ++k) {
    if (m % k == 0) out.push_back(k);
  }
  return out;
}

/// b^e, throwing cap_exceeded on 64-bit overflow.
inline std::uint64_t checked_pow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (b != 0 && r > UINT64_MAX / b) throw cap_exceeded("integer power overflows 64 bits");
    r *= b;
  }
  return r;
}

struct PrimePower {
  std::uint64_t p;
  unsigned exponent;
};

inline std::optional<PrimePower> as_prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  auto f = prime_factors(q);
  if (f.size() != 1) return std::nullopt;
  PrimePower pp{f[0], 0};
  while (q > 1) {
    q /= pp.p;
    ++pp.exponent;
  }
  return pp;
}

inline PrimePower require_prime_power(std::uint64_t q) {
  auto pp = as_prime_power(q);
  if (!pp) throw invalid_argument(std::to_string(q) + " is not a prime power");
  return *pp;
}

}  // namespace ringcover::nt
