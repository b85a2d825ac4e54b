// Covering number of A(3,3,3) three ways: closed form, explicit cover sweep,
// and the c(M) certificate on Pi.
#include <iostream>

#include "ringcover/ringcover.hpp"

int main() {
  using namespace ringcover;

  const auto formula = sigma_agl_formula(3, 3, 3);
  std::cout << "formula: sigma(A(3,3,3)) = " << to_string(formula.value) << " (" << formula.case_tag << ")\n";

  const auto family = build_cover(3, 3, 3);
  const auto sweep = verify_cover_reduced(family);
  std::cout << "cover: " << to_string(family.size()) << " members, covered = " << std::boolalpha << sweep.covered << "\n";

  const auto cert = minimality_certificate(*family.ring);
  for (const auto& row : cert.rows)
    if (row.c) std::cout << "  c(" << row.cls.name << ") = " << to_string(*row.c) << "\n";
  std::cout << "certificate: " << (cert.pass ? "pass" : "fail") << "\n";

  const auto small = covering_number_agl_brute(1, 3, 3);
  std::cout << "brute force: sigma(A(1,3,3)) = " << small.result.to_string() << "\n";
  return cert.pass && sweep.covered ? 0 : 1;
}
