#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "ringcover/errors.hpp"
#include "ringcover/formulas.hpp"
#include "ringcover/numtheory.hpp"

namespace ringcover {

/// Ranges of n and q swept by a bound check.
struct BoundGrid {
  std::vector<unsigned> n;
  std::vector<std::uint64_t> q;
};

inline const std::vector<std::string>& bound_check_names() {
  static const std::vector<std::string> names = {"matrix_ring_bound", "qbinom_estimate", "singer_ratio_estimate",
                                                 "product_lower_bound", "agl_below_matrix_ring"};
  return names;
}

/// Default grid: n <= 10 and q in {2,3,4,5,8,9}; the comparison with the
/// matrix ring uses n in 3..7 and q1 <= 4.
inline BoundGrid default_grid(const std::string& check) {
  BoundGrid g;
  if (check == "agl_below_matrix_ring") {
    for (unsigned n = 3; n <= 7; ++n) g.n.push_back(n);
    g.q = {2, 3, 4};
    return g;
  }
  for (unsigned n = 2; n <= 10; ++n) g.n.push_back(n);
  g.q = {2, 3, 4, 5, 8, 9};
  return g;
}

/// "2..10" or "2,3,4,5,8,9" or a mix such as "2..4,8".
inline std::vector<std::uint64_t> parse_int_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw invalid_argument("bad number in list: '" + text + "'");
    return std::stoull(s);
  };
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(item));
    } else {
      const auto lo = number(item.substr(0, dots)), hi = number(item.substr(dots + 2));
      if (lo > hi || hi - lo > 1000) throw invalid_argument("bad range in list: '" + item + "'");
      for (auto v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  if (out.empty()) throw invalid_argument("empty list");
  return out;
}

/// Every admissible parameter tuple of the grid for the named check.
inline std::vector<BoundCheck> sweep_bounds(const std::string& check, const BoundGrid& grid) {
  std::vector<BoundCheck> out;
  for (auto q : grid.q) nt::require_prime_power(q);
  for (unsigned n : grid.n) {
    if (n < 1) throw invalid_argument("grid values of n must be positive");
    const unsigned a = static_cast<unsigned>(nt::least_prime_divisor(n));
    for (auto q : grid.q) {
      if (check == "matrix_ring_bound") {
        if (n < 2) continue;
        for (unsigned d = 1; d <= n; ++d)
          if (d * a >= n * (a - 1)) out.push_back(check_matrix_ring_bound(n, q, d));
      } else if (check == "qbinom_estimate") {
        if (n < 2) continue;
        for (unsigned d = 1; d <= n; ++d)
          for (unsigned m = 1; m <= d; ++m)
            if (n % m == 0 && d % m == 0)
              for (auto& c : check_qbinom_estimate(n, d, m, q)) out.push_back(std::move(c));
      } else if (check == "singer_ratio_estimate") {
        if (n < 5) continue;
        for (unsigned d = 2; d * a < n * (a - 1); ++d)
          for (unsigned l = 2; l <= d; ++l)
            if (nt::is_prime(l) && n % l == 0 && d % l == 0) out.push_back(check_singer_ratio_estimate(n, d, l, q));
      } else if (check == "product_lower_bound") {
        if (n >= 2) out.push_back(check_product_lower_bound(n, q));
      } else if (check == "agl_below_matrix_ring") {
        if (n < 3) continue;
        for (unsigned d = 1; d * a < n * (a - 1); ++d) out.push_back(check_agl_below_matrix_ring(n, q, d));
      } else {
        throw invalid_argument("unknown bound check '" + check + "'");
      }
    }
  }
  return out;
}

/// name,params,relation,lhs,rhs,holds,equality,equality_expected,pass,intermediates
inline std::string bounds_csv(const std::vector<BoundCheck>& rows) {
  std::ostringstream os;
  os << "check,params,relation,lhs,rhs,holds,equality,equality_expected,pass,intermediates\n";
  auto kv = [](const std::map<std::string, std::string>& m) {
    std::string s;
    for (const auto& [k, v] : m) s += (s.empty() ? "" : ";") + k + "=" + v;
    return s;
  };
  for (const auto& c : rows) {
    os << c.name << ',' << kv(c.params) << ',' << c.relation << ',' << to_string(c.lhs) << ',' << to_string(c.rhs) << ','
       << c.holds << ',' << c.equality << ',' << c.equality_expected << ',' << c.pass() << ',' << kv(c.intermediates)
       << '\n';
  }
  return os.str();
}

}  // namespace ringcover
