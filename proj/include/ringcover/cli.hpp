#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ringcover/bounds.hpp"
#include "ringcover/certificate.hpp"
#include "ringcover/cover.hpp"
#include "ringcover/report.hpp"
#include "ringcover/ring_spec.hpp"
#include "ringcover/sigma.hpp"
#include "ringcover/table_ring.hpp"

namespace ringcover {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitParse = 2, kExitCap = 3, kExitRegime = 4, kExitFailed = 5 };

/// Settings shared by every subcommand.
struct RunConfig {
  std::string ring;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string out;
  std::string format;
  std::size_t max_order = TableCaps{}.max_order;
  std::size_t max_lattice = TableCaps{}.max_lattice;
  std::uint64_t naive_cap = 1ULL << 24;
  std::uint64_t reduced_cap = 1ULL << 28;
  std::string mode = "auto";
  bool elementary = false;
  bool skip_certificate = false;
  unsigned samples = 8;
  unsigned n = 0;
  std::uint64_t q1 = 0, q2 = 0;
  std::string check = "all";
  std::string grid_n, grid_q;

  TableCaps caps() const {
    if (max_order == 0 || max_lattice == 0) throw invalid_argument("caps must be positive");
    return {max_order, max_lattice};
  }
};

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw error("cannot write '" + cfg.out + "'");
  f << text;
}

inline RingSpec agl_spec(const RunConfig& cfg) {
  const auto s = parse_ring_spec(cfg.ring);
  if (s.kind != RingSpec::Kind::agl) throw invalid_argument("this command needs an agl:n,q1,q2 ring, got '" + cfg.ring + "'");
  return s;
}

inline std::optional<Certificate> certificate_if_defined(const AglRing& R, const RunConfig& cfg) {
  const auto& x = R.numbers();
  if (cfg.skip_certificate || x.n < 3 || x.d2 % x.d1 != 0) return std::nullopt;
  ClassifyOptions opt;
  opt.seed = cfg.seed;
  opt.samples = cfg.samples;
  return minimality_certificate(R, opt);
}

inline int cmd_formula(const RunConfig& cfg, std::ostream& out) {
  RingSpec s;
  if (!cfg.ring.empty()) {
    s = parse_ring_spec(cfg.ring);
  } else {
    if (cfg.n == 0 || cfg.q1 == 0 || cfg.q2 == 0) throw invalid_argument("formula needs --ring or all of --n, --q1, --q2");
    s = parse_ring_spec("agl:" + std::to_string(cfg.n) + "," + std::to_string(cfg.q1) + "," + std::to_string(cfg.q2));
  }
  emit(cfg, formula_json(s, sigma_formula_for(s)).dump(2) + "\n", out);
  return kExitOk;
}

inline int cmd_brute(const RunConfig& cfg, std::ostream& out) {
  const auto s = parse_ring_spec(cfg.ring);
  const auto caps = cfg.caps();
  const auto t0 = std::chrono::steady_clock::now();
  const TableRing R = build_table(s, caps);
  const auto ex = covering_number_exact(R, caps);
  json j = brute_json(s, ex, 0);
  if (cfg.elementary) {
    j.update(elementary_json(is_sigma_elementary_brute(R, caps)));
  }
  j["elapsed_ms"] = ms_since(t0);
  emit(cfg, j.dump(2) + "\n", out);
  return kExitOk;
}

inline int cmd_build_cover(const RunConfig& cfg, std::ostream& out) {
  const auto s = agl_spec(cfg);
  const auto f = build_cover(s.n, s.q1, s.q2);
  emit(cfg, cover_report_json(f, std::nullopt, std::nullopt, cfg.seed, "build-cover").dump(2) + "\n", out);
  return kExitOk;
}

inline int cmd_verify_cover(const RunConfig& cfg, std::ostream& out) {
  const auto s = agl_spec(cfg);
  const auto f = build_cover(s.n, s.q1, s.q2);
  std::string mode = cfg.mode;
  if (mode == "auto") mode = f.ring->order() <= BigInt(cfg.naive_cap) ? "naive" : "reduced";
  SweepReport sweep;
  if (mode == "naive") {
    sweep = verify_cover_naive(f, cfg.workers, cfg.naive_cap);
  } else if (mode == "reduced") {
    sweep = verify_cover_reduced(f, cfg.workers, cfg.reduced_cap);
  } else {
    throw invalid_argument("unknown sweep mode '" + cfg.mode + "' (naive, reduced or auto)");
  }
  const auto cert = certificate_if_defined(*f.ring, cfg);
  emit(cfg, cover_report_json(f, sweep, cert, cfg.seed, "verify-cover").dump(2) + "\n", out);
  return sweep.covered && (!cert || cert->pass) ? kExitOk : kExitFailed;
}

inline int cmd_certificate(const RunConfig& cfg, std::ostream& out) {
  const auto s = agl_spec(cfg);
  const AglRing R(s.n, s.q1, s.q2);
  ClassifyOptions opt;
  opt.seed = cfg.seed;
  opt.samples = cfg.samples;
  const auto cert = minimality_certificate(R, opt);
  emit(cfg, certificate_json(cert).dump(2) + "\n", out);
  return cert.pass ? kExitOk : kExitFailed;
}

inline int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::string> checks;
  if (cfg.check == "all") {
    checks = bound_check_names();
  } else {
    checks.push_back(cfg.check);
  }
  std::vector<BoundCheck> rows;
  for (const auto& c : checks) {
    BoundGrid g = default_grid(c);
    if (!cfg.grid_n.empty()) {
      g.n.clear();
      for (auto v : parse_int_list(cfg.grid_n)) g.n.push_back(static_cast<unsigned>(v));
    }
    if (!cfg.grid_q.empty()) g.q = parse_int_list(cfg.grid_q);
    for (auto& r : sweep_bounds(c, g)) rows.push_back(std::move(r));
  }
  bool ok = true;
  for (const auto& r : rows) ok &= r.pass();
  if (cfg.format == "json") {
    json j = header_json("bounds");
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"check", r.name},
                     {"params", r.params},
                     {"relation", r.relation},
                     {"lhs", to_string(r.lhs)},
                     {"rhs", to_string(r.rhs)},
                     {"holds", r.holds},
                     {"equality", r.equality},
                     {"equality_expected", r.equality_expected},
                     {"pass", r.pass()},
                     {"intermediates", r.intermediates}});
    }
    j["rows"] = arr;
    j["pass"] = ok;
    emit(cfg, j.dump(2) + "\n", out);
  } else {
    emit(cfg, bounds_csv(rows), out);
  }
  return ok ? kExitOk : kExitFailed;
}

inline int cmd_export_table(const RunConfig& cfg, std::ostream& out) {
  const auto s = parse_ring_spec(cfg.ring);
  const TableRing R = build_table(s, cfg.caps());
  if (cfg.format == "binary") {
    if (cfg.out.empty() || cfg.out == "-") throw invalid_argument("binary export needs --out <file>");
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw error("cannot write '" + cfg.out + "'");
    write_table_binary(R, f);
    return kExitOk;
  }
  json j = header_json("export-table");
  j["ring"] = s.to_string();
  j["N"] = R.size();
  j["zero"] = R.zero();
  if (R.unity()) j["unity"] = *R.unity();
  j["add_table"] = R.add_table();
  j["mul_table"] = R.mul_table();
  emit(cfg, j.dump() + "\n", out);
  return kExitOk;
}

}  // namespace detail

/// Runs the command line given without the program name; returns the exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Covering numbers of AGL-type finite rings"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto ring_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--ring", cfg.ring, "ring spec: agl:n,q1,q2 | mat:n,q | field:q | A+B");
    if (required) o->required();
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--seed", cfg.seed, "seed for sampled conjugates (RINGCOVER_SEED overrides)");
    sub->add_option("--workers", cfg.workers, "worker threads, 0 for all cores");
  };

  auto* formula = app.add_subcommand("formula", "closed-form covering number");
  ring_opt(formula, false);
  formula->add_option("--n", cfg.n, "n");
  formula->add_option("--q1", cfg.q1, "q1");
  formula->add_option("--q2", cfg.q2, "q2");
  formula->add_option("--out", cfg.out, "output file (default stdout)");

  auto* brute = app.add_subcommand("brute", "covering number by subring lattice and exact set cover");
  ring_opt(brute, true);
  common(brute);
  brute->add_flag("--elementary", cfg.elementary, "also decide sigma-elementarity over all ideals");
  brute->add_option("--max-order", cfg.max_order, "largest ring order accepted");
  brute->add_option("--max-lattice", cfg.max_lattice, "largest subring lattice accepted");

  auto* build = app.add_subcommand("build-cover", "list the explicit cover");
  ring_opt(build, true);
  common(build);

  auto* verify = app.add_subcommand("verify-cover", "sweep the explicit cover and run the certificate");
  ring_opt(verify, true);
  common(verify);
  verify->add_option("--mode", cfg.mode, "naive, reduced or auto")->check(CLI::IsMember({"naive", "reduced", "auto"}));
  verify->add_option("--naive-cap", cfg.naive_cap, "largest ring order swept element by element");
  verify->add_option("--reduced-cap", cfg.reduced_cap, "largest |S| swept in reduced mode");
  verify->add_option("--samples", cfg.samples, "sampled conjugates per large class");
  verify->add_flag("--skip-certificate", cfg.skip_certificate, "sweep only");

  auto* cert = app.add_subcommand("certificate", "c(M) table for the classes of maximal subrings");
  ring_opt(cert, true);
  common(cert);
  cert->add_option("--samples", cfg.samples, "sampled conjugates per large class");

  auto* bounds = app.add_subcommand("bounds", "exact inequality sweeps");
  bounds->add_option("--check", cfg.check, "check name or all");
  bounds->add_option("--n", cfg.grid_n, "values of n, e.g. 2..10");
  bounds->add_option("--q", cfg.grid_q, "values of q, e.g. 2,3,4,5,8,9");
  bounds->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  bounds->add_option("--out", cfg.out, "output file (default stdout)");

  auto* exp = app.add_subcommand("export-table", "dump the addition and multiplication tables");
  ring_opt(exp, true);
  exp->add_option("--format", cfg.format, "json or binary")->check(CLI::IsMember({"json", "binary"}));
  exp->add_option("--out", cfg.out, "output file (default stdout)");
  exp->add_option("--max-order", cfg.max_order, "largest ring order accepted");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
  if (const char* env = std::getenv("RINGCOVER_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: RINGCOVER_SEED is not a number\n";
      return kExitParse;
    }
  }

  try {
    if (*formula) return detail::cmd_formula(cfg, out);
    if (*brute) return detail::cmd_brute(cfg, out);
    if (*build) return detail::cmd_build_cover(cfg, out);
    if (*verify) return detail::cmd_verify_cover(cfg, out);
    if (*cert) return detail::cmd_certificate(cfg, out);
    if (*bounds) return detail::cmd_bounds(cfg, out);
    if (*exp) return detail::cmd_export_table(cfg, out);
  } catch (const invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const cap_exceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const out_of_regime& e) {
    err << "error: " << e.what() << "\n";
    return kExitRegime;
  } catch (const verification_failure& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace ringcover
