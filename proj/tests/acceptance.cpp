// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.
#include <chrono>
#include <functional>
#include <iomanip>
#include <numeric>
#include <iostream>
#include <sstream>
#include <string>

#include "ringcover/ringcover.hpp"

using namespace ringcover;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  o.detail << std::boolalpha;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > limit_s) {
    o.ok = false;
    o.detail << " [time " << s << " s exceeds " << limit_s << " s]";
  }
  if (!o.ok) ++failures;
  std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << std::fixed
            << std::setprecision(1) << s << " s / limit " << limit_s << " s)" << o.detail.str() << std::endl;
}

std::string sig(const SigmaResult& r) { return r.to_string(); }

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  criterion(1, "brute-force covering numbers of small rings", 7 * 60, [](Outcome& o) {
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"agl:1,2,2", "3"},       {"agl:1,4,4", "4"},       {"agl:1,2,4", "5"},      {"agl:1,3,3", "4"},
        {"field:2+field:2", "3"}, {"field:4+field:4", "4"}, {"field:4", "infinite"}};
    for (const auto& [spec, want] : cases) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto got = sig(covering_number_exact(build_table(parse_ring_spec(spec))).result);
      const double s = since(t0);
      o.detail << " " << spec << "=" << got;
      o.require(got == want, spec + " expected " + want);
      o.require(s < 60, spec + " took over 60 s");
    }
  });

  criterion(2, "sigma(M_2(2)) by brute force equals the closed form; sigma(M_3(2)) = 15", 60, [](Outcome& o) {
    const auto brute = covering_number_exact(matrix_ring_table(2, 2)).result;
    const auto formula = sigma_matrix_ring(2, BigInt(2));
    o.detail << " brute=" << sig(brute) << " formula=" << formula << " M_3(2)=" << sigma_matrix_ring(3, BigInt(2));
    o.require(brute.coverable && BigInt(brute.value) == formula && formula == 4, "sigma(M_2(2)) = 4");
    o.require(sigma_matrix_ring(3, BigInt(2)) == 15, "sigma(M_3(2)) = 15");
  });

  criterion(3, "sigma-elementary verdicts with monotone quotient tables", 5 * 60, [](Outcome& o) {
    const std::vector<std::pair<std::string, bool>> cases = {{"agl:1,2,2", false}, {"agl:1,3,3", true}, {"mat:2,2", true}};
    for (const auto& [spec, want] : cases) {
      const auto rep = is_sigma_elementary_brute(build_table(parse_ring_spec(spec)));
      o.detail << " " << spec << "=" << (rep.elementary ? "elementary" : "not elementary") << " (sigma " << sig(rep.sigma)
               << "; quotients";
      for (const auto& i : rep.ideals) o.detail << " |I|=" << i.ideal_order << ":" << sig(i.quotient_sigma);
      o.detail << ")";
      o.require(rep.elementary == want, spec + " verdict");
      for (const auto& i : rep.ideals) o.require(i.monotone, spec + " sigma(R) <= sigma(R/I)");
    }
  });

  criterion(4, "A(3,3,3): 40-member cover, naive sweep over all 3^13 elements, 1 in every member", 10 * 60, [](Outcome& o) {
    const auto f = build_cover(3, 3, 3);
    const BigInt expected = ipow(BigInt(3), 3) + qbinom(3, 1, BigInt(3)) + omega(1);
    o.require(f.size() == 40 && expected == 40, "family size 40");
    const std::size_t members = f.complement_codes.size() + f.zed.size();
    for (std::size_t i = 0; i < members; ++i) o.require(f.contains(i, f.ring->one()), "member " + std::to_string(i) + " contains 1");
    const auto s = verify_cover_naive(f);
    o.detail << " size=" << f.size() << " checked=" << s.elements_checked << " covered=" << s.covered;
    o.require(s.covered, "covered");
    o.require(BigInt(s.elements_checked) == ipow(BigInt(3), 13), "all 3^13 elements checked");
  });

  criterion(5, "reduced sweeps: A(4,2,2) with 31 members, A(5,2,4) with 1180 members over all of S", 30 * 60, [](Outcome& o) {
    const auto f = build_cover(4, 2, 2);
    const auto a = verify_cover_reduced(f);
    o.detail << " A(4,2,2): size=" << f.size() << " covered=" << a.covered;
    o.require(f.size() == 31 && a.covered, "A(4,2,2)");
    const auto g = build_cover(5, 2, 4);
    const auto b = verify_cover_reduced(g);
    o.detail << " A(5,2,4): size=" << g.size() << " |S| checked=" << b.elements_checked
             << " centralizer union=" << b.centralizer_union << " covered=" << b.covered;
    o.require(g.size() == 1180 && g.size() == ipow(BigInt(4), 5) + 155 + 1, "family size 1180");
    o.require(BigInt(b.elements_checked) == g.ring->complement_order(), "every element of S checked");
    o.require(b.covered, "A(5,2,4) covered");
  });

  criterion(6, "c(M) certificate at A(3,3,3), A(4,2,2), A(5,2,4)", 10 * 60, [](Outcome& o) {
    for (auto [n, q1, q2] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{3, 3, 3}, {4, 2, 2}, {5, 2, 4}}) {
      const AglRing R(n, q1, q2);
      const auto c = minimality_certificate(R);
      const auto& x = R.numbers();
      const std::string tag = R.spec();
      o.detail << " " << tag << ":";
      o.require(c.pass, tag + " certificate" + (c.failures.empty() ? "" : ": " + c.failures.front()));
      for (const auto& r : c.rows) {
        if (!r.c) continue;
        o.detail << " " << r.cls.name << "=" << to_string(*r.c);
        o.require(*r.c <= 1, tag + " c <= 1 on " + r.cls.name);
        const bool unit_class = r.cls.type == "I" && r.cls.param == x.n - x.d;
        o.require((*r.c == 1) == unit_class, tag + " c = 1 exactly on I-(n-d), row " + r.cls.name);
        if (r.cls.type == "III" || (r.cls.type == "II" && std::gcd(x.n, x.d) % r.cls.param != 0))
          o.require(*r.c == 0, tag + " c = 0 on " + r.cls.name);
      }
    }
  });

  criterion(7, "counting identities for Pi and subspace enumeration", 5 * 60, [](Outcome& o) {
    const AglRing R(3, 3, 3);
    const auto pi = build_Pi(R);
    o.require(pi.size() == 156, "|Pi_0| = 156");
    for (const auto& U : enumerate_subspaces(3, 1, R.F1())) {
      const auto c = count_intersection(R, pi, MaxSubringDescriptor::stabilizer_of(U));
      o.require(c[0] == 12 && BigInt(c[0]) == stabilizer_pi_count(3, 1, BigInt(3)), "per-U count 12");
    }
    std::size_t checked = 0;
    for (unsigned q : {2u, 3u, 4u})
      for (unsigned n = 1; n <= 5; ++n)
        for (unsigned k = 0; k <= n; ++k) {
          o.require(BigInt(enumerate_subspaces(n, k, field_of_order(q)).size()) == qbinom(n, k, BigInt(q)),
                    "subspace count n=" + std::to_string(n) + " k=" + std::to_string(k) + " q=" + std::to_string(q));
          ++checked;
        }
    o.detail << " |Pi_0|=" << pi.size() << " per-U=12 subspace counts checked=" << checked;
  });

  criterion(8, "exact bound sweeps with their equality cases", 5 * 60, [](Outcome& o) {
    for (const auto& name : bound_check_names()) {
      const auto rows = sweep_bounds(name, default_grid(name));
      std::size_t eq = 0, bad = 0;
      for (const auto& r : rows) {
        eq += r.equality;
        bad += !r.pass();
      }
      o.detail << " " << name << ": " << rows.size() << " rows, " << eq << " equal, " << bad << " failing;";
      o.require(!rows.empty() && bad == 0, name);
    }
    o.require(check_matrix_ring_bound(2, 2, 1).equality, "matrix ring bound equality at n=q=2, d=1");
    o.require(check_product_lower_bound(2, 2).equality && check_product_lower_bound(3, 2).equality, "product bound equalities");
    const auto c = check_agl_below_matrix_ring(3, 2, 1);
    o.require(c.equality && c.lhs == 15, "comparison equality at (3,2) with value 15");
  });

  criterion(9, "property suites", 10 * 60, [](Outcome& o) {
    // field axioms
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
      auto F = field_of_order(q);
      for (elem_t a = 0; a < q; ++a)
        for (elem_t b = 0; b < q; ++b)
          for (elem_t c = 0; c < q; ++c) {
            if (F->mul(a, F->add(b, c)) != F->add(F->mul(a, b), F->mul(a, c)) ||
                F->mul(F->mul(a, b), c) != F->mul(a, F->mul(b, c)) || F->add(F->add(a, b), c) != F->add(a, F->add(b, c))) {
              o.require(false, "field axioms GF(" + std::to_string(q) + ")");
            }
          }
    }
    // J^2 = 0 and J meets the centre trivially
    for (auto [n, q1, q2] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{1, 2, 2}, {1, 2, 4}, {1, 3, 3}}) {
      const AglRing R(n, q1, q2);
      const auto T = agl_table(R);
      const auto J = jacobson_radical(T);
      o.require(BigInt(J.count()) == R.distinct_complements(), R.spec() + " |J|");
      for (auto a : J.elements()) {
        o.require(R.in_radical(R.element(a)), R.spec() + " radical is the v-block");
        for (auto b : J.elements()) o.require(T.mul(a, b) == T.zero(), R.spec() + " J^2 = 0");
        if (a == T.zero()) continue;
        bool central = true;
        for (std::size_t r = 0; r < T.size(); ++r) central &= T.mul(a, r) == T.mul(r, a);
        o.require(!central, R.spec() + " J meets the centre trivially");
      }
    }
    // structured arithmetic agrees with dense block matrices
    for (auto [n, q1, q2] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{1, 2, 2}, {1, 2, 4}}) {
      const AglRing R(n, q1, q2);
      const auto N = R.order_u64();
      for (std::uint64_t i = 0; i < N; ++i)
        for (std::uint64_t j = 0; j < N; ++j) {
          const auto a = R.element(i), b = R.element(j);
          o.require(R.to_dense(R.mul(a, b)) == R.to_dense(a) * R.to_dense(b), R.spec() + " products");
          o.require(R.to_dense(R.add(a, b)) == R.to_dense(a) + R.to_dense(b), R.spec() + " sums");
        }
    }
    // Singer cycles have order q^k - 1
    for (auto [k, q] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}, {2, 4}}) {
      const std::uint64_t N = nt::checked_pow(q, k) - 1;
      const auto cycles = enumerate_singer_cycles(k, field_of_order(q));
      o.require(BigInt(cycles.size()) == singer_cycle_count(k, BigInt(q)), "Singer cycle count");
      for (const auto& C : cycles) o.require(C.has_order(N), "Singer order");
    }
    // sweep modes agree, including on a deliberately broken family
    for (auto [n, q1, q2] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{3, 3, 3}, {4, 2, 2}}) {
      auto f = build_cover(n, q1, q2);
      o.require(verify_cover_naive(f).covered == verify_cover_reduced(f).covered, "sweep agreement");
      f.zed.erase(f.zed.begin());
      const auto a = verify_cover_naive(f), b = verify_cover_reduced(f);
      o.require(!a.covered && !b.covered && a.first_uncovered == b.first_uncovered, "sweep agreement on a gap");
    }
    o.detail << " fields, J, dense model, Singer orders, sweep agreement";
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
