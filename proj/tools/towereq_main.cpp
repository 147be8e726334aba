#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>

#include "towereq/interval.hpp"
#include "towereq/parser.hpp"
#include "towereq/search.hpp"

namespace {

using namespace towereq;
using ordered_json = nlohmann::ordered_json;

// 0 equal / success, 1 not equal, 2 unknown, 3 bad input, 4 magnitude,
// 5 io, 6 corrupt checkpoint.
int exit_code_for(errc c) {
  switch (c) {
    case errc::magnitude:          return 4;
    case errc::io:                 return 5;
    case errc::corrupt_checkpoint: return 6;
    default:                       return 3;
  }
}

int exit_code_for(Outcome o) {
  switch (o) {
    case Outcome::equal:     return 0;
    case Outcome::not_equal: return 1;
    case Outcome::unknown:   return 2;
  }
  return 2;
}

size_t decimal_digits(mpfr_prec_t bits) {
  return static_cast<size_t>(bits) * 3 / 10 + 1;
}

struct CommonOpts {
  unsigned base = 2;
  mpfr_prec_t bits = 256;
  long max_exponent = kMagnitudeCap;
  std::string format = "text";

  EvalLimits limits() const { return EvalLimits{max_exponent}; }
  bool json() const { return format == "json"; }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_bits = true) {
  cmd->add_option("--base", opts.base, "prime base B of all power atoms")->capture_default_str();
  if (with_bits) {
    cmd->add_option("--bits", opts.bits, "interval precision ceiling in bits")
        ->check(CLI::Range(static_cast<mpfr_prec_t>(16), static_cast<mpfr_prec_t>(1 << 24)))
        ->capture_default_str();
  }
  cmd->add_option("--max-exponent", opts.max_exponent,
                  "refuse to evaluate B^x with |x| beyond this bound")
      ->capture_default_str();
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

int cmd_verify(const std::string& text, const CommonOpts& opts) {
  auto [lhs_node, rhs_node] = parse_equation(text);
  LoweredEquation eq = lower_equation(lhs_node, rhs_node, opts.base);
  ExpSum diff = eq.lhs.exponent() + (-eq.rhs.exponent());
  Verdict v = decide_zero(diff, opts.bits, opts.limits());
  std::optional<bool> trivial;
  if (eq.instance) trivial = is_trivial_solution(*eq.instance);
  if (opts.json()) {
    ordered_json js{{"verdict", to_string(v.outcome)},
                    {"method", to_string(v.method)},
                    {"detail", v.detail}};
    if (trivial) js["trivial"] = *trivial;
    std::cout << js.dump() << "\n";
  } else {
    std::cout << to_string(v.outcome) << " (" << to_string(v.method) << "): " << v.detail << "\n";
    if (trivial) std::cout << "trivial: " << (*trivial ? "yes" : "no") << "\n";
  }
  return exit_code_for(v.outcome);
}

int cmd_eval(const std::string& text, const CommonOpts& opts) {
  PowNum x = lower_value(parse_expression(text), opts.base);
  std::string canon = print_canonical(x);
  Interval v = eval_value(x, opts.bits, opts.limits());
  size_t digits = decimal_digits(opts.bits);
  if (opts.json()) {
    ordered_json js{{"canonical", canon},
                    {"lo", v.lo_str(digits)},
                    {"hi", v.hi_str(digits)},
                    {"bits", static_cast<long>(opts.bits)}};
    std::cout << js.dump() << "\n";
  } else {
    std::cout << canon << "\n";
    std::cout << "value in [" << v.lo_str(digits) << ", " << v.hi_str(digits) << "]\n";
  }
  return 0;
}

int cmd_solve_gamma(const std::string& a_text, const std::string& b_text, unsigned k, unsigned m,
                    unsigned n, const CommonOpts& opts) {
  Rational a = Rational::parse(a_text);
  Rational b = Rational::parse(b_text);
  auto gammas = solve_gamma(opts.base, a, b, k, m, n);
  if (opts.json()) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : gammas) arr.push_back(c.str());
    std::cout << ordered_json{{"gammas", arr}}.dump() << "\n";
  } else {
    if (gammas.empty()) {
      std::cout << "(none)\n";
    } else {
      for (const auto& c : gammas) std::cout << c.str() << "\n";
    }
  }
  return 0;
}

int cmd_family_scan(unsigned k, unsigned m, unsigned n, long max_num, long max_den,
                    const CommonOpts& opts) {
  FamilyScanResult r = family_scan(opts.base, k, m, n, max_num, max_den, opts.bits);
  if (opts.json()) {
    ordered_json hits = ordered_json::array();
    for (size_t i = 0; i < r.hits.size(); ++i) {
      hits.push_back({{"q", r.hits[i].str()}, {"method", to_string(r.hit_methods[i])}});
    }
    ordered_json unknowns = ordered_json::array();
    for (const auto& [q, detail] : r.unknowns) {
      unknowns.push_back({{"q", q.str()}, {"detail", detail}});
    }
    std::cout << ordered_json{{"grid", r.grid.size()}, {"hits", hits}, {"unknowns", unknowns}}.dump()
              << "\n";
  } else {
    std::cout << "grid " << r.grid.size() << " values\n";
    for (size_t i = 0; i < r.hits.size(); ++i) {
      std::cout << "hit q=" << r.hits[i].str() << " (" << to_string(r.hit_methods[i]) << ")\n";
    }
    for (const auto& [q, detail] : r.unknowns) {
      std::cout << "unknown q=" << q.str() << ": " << detail << "\n";
    }
    std::cout << "hits " << r.hits.size() << ", unknowns " << r.unknowns.size() << "\n";
  }
  return 0;
}

int cmd_search(SearchConfig cfg, const CommonOpts& opts) {
  cfg.base = opts.base;
  cfg.bits = opts.bits;
  cfg.limits = opts.limits();
  SearchReport r = run_search(cfg);
  size_t nontrivial = 0;
  for (const auto& s : r.solutions) {
    if (!s.trivial) ++nontrivial;
  }
  if (opts.json()) {
    ordered_json js{{"grid", r.grid_size},      {"cells", r.cells},
                    {"resumed", r.resumed},     {"solutions", r.solutions.size()},
                    {"nontrivial", nontrivial}, {"unknowns", r.unknowns.size()}};
    std::cout << js.dump() << "\n";
  } else {
    std::cout << "grid " << r.grid_size << " values, " << r.cells << " cells"
              << (r.resumed ? ", resumed" : "") << "\n";
    std::cout << "solutions " << r.solutions.size() << " (nontrivial " << nontrivial
              << "), unknowns " << r.unknowns.size() << "\n";
    if (!cfg.results_path.empty()) std::cout << "results -> " << cfg.results_path << "\n";
    if (!cfg.unknowns_path.empty()) std::cout << "unknowns -> " << cfg.unknowns_path << "\n";
    if (!cfg.checkpoint_path.empty()) std::cout << "checkpoint -> " << cfg.checkpoint_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic for power-tower equations x^^k * y^^m = z^^n"};
  app.require_subcommand(1);

  CommonOpts verify_opts;
  std::string verify_text;
  CLI::App* verify = app.add_subcommand("verify", "decide an equation between tower products");
  verify->add_option("equation", verify_text, "e.g. \"2^^3 * 2^^3 = 4^^2\"")->required();
  add_common(verify, verify_opts);

  CommonOpts eval_opts;
  std::string eval_text;
  CLI::App* eval = app.add_subcommand("eval", "canonical form and enclosure of an expression");
  eval->add_option("expression", eval_text, "e.g. \"(1/2)^^3\"")->required();
  add_common(eval, eval_opts);

  CommonOpts solve_opts;
  std::string solve_a, solve_b;
  unsigned solve_k = 2, solve_m = 2, solve_n = 2;
  CLI::App* solve = app.add_subcommand(
      "solve-gamma", "all c with (B^a)^^k * (B^b)^^m = (B^c)^^n, for solvable n");
  solve->add_option("--a", solve_a, "exponent of the first atom")->required();
  solve->add_option("--b", solve_b, "exponent of the second atom")->required();
  solve->add_option("--k", solve_k, "height of the first tower")->capture_default_str();
  solve->add_option("--m", solve_m, "height of the second tower")->capture_default_str();
  solve->add_option("--n", solve_n, "height of the right-hand tower")->capture_default_str();
  add_common(solve, solve_opts, false);

  CommonOpts family_opts;
  unsigned fam_k = 3, fam_m = 3, fam_n = 2;
  long fam_max_num = 2, fam_max_den = 2;
  CLI::App* family = app.add_subcommand(
      "family-scan", "scan q in a rational grid for (B^q)^^k * (B^q)^^m = (B^2q)^^n");
  family->add_option("--k", fam_k, "height of the first tower")->capture_default_str();
  family->add_option("--m", fam_m, "height of the second tower")->capture_default_str();
  family->add_option("--n", fam_n, "height of the right-hand tower")->capture_default_str();
  family->add_option("--max-num", fam_max_num, "largest numerator in the grid")
      ->capture_default_str();
  family->add_option("--max-den", fam_max_den, "largest denominator in the grid")
      ->capture_default_str();
  add_common(family, family_opts);

  CommonOpts search_opts;
  SearchConfig cfg;
  CLI::App* search = app.add_subcommand(
      "search", "scan an (a, b) grid for gammas closing (B^a)^^k * (B^b)^^m = (B^c)^^n");
  search->add_option("--k", cfg.k, "height of the first tower")->capture_default_str();
  search->add_option("--m", cfg.m, "height of the second tower")->capture_default_str();
  search->add_option("--n", cfg.n, "height of the right-hand tower")->capture_default_str();
  search->add_option("--max-num", cfg.max_num, "largest numerator in the grid")
      ->capture_default_str();
  search->add_option("--max-den", cfg.max_den, "largest denominator in the grid")
      ->capture_default_str();
  search->add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
  search->add_flag("--dedup", cfg.dedup_symmetric,
                   "skip mirror cells a > b when the left heights match");
  search->add_option("--results", cfg.results_path, "solutions JSONL path");
  search->add_option("--unknowns", cfg.unknowns_path, "unknowns JSONL path");
  search->add_option("--checkpoint", cfg.checkpoint_path, "checkpoint path, enables resume");
  search->add_option("--checkpoint-every", cfg.checkpoint_every, "cells between commits")
      ->capture_default_str();
  add_common(search, search_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (verify->parsed()) return cmd_verify(verify_text, verify_opts);
    if (eval->parsed()) return cmd_eval(eval_text, eval_opts);
    if (solve->parsed()) {
      return cmd_solve_gamma(solve_a, solve_b, solve_k, solve_m, solve_n, solve_opts);
    }
    if (family->parsed()) {
      return cmd_family_scan(fam_k, fam_m, fam_n, fam_max_num, fam_max_den, family_opts);
    }
    if (search->parsed()) return cmd_search(cfg, search_opts);
  } catch (const towereq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
