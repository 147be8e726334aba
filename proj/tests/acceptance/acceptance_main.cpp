// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Criterion 4 carries an expected emptiness clause that exact verification
// refutes; it is reported honestly rather than weakened.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "towereq/parser.hpp"
#include "towereq/search.hpp"

using namespace towereq;
namespace fs = std::filesystem;

namespace {

int failures = 0;
using clk = std::chrono::steady_clock;

double ms_since(clk::time_point t0) {
  return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

void report(int idx, const std::string& name, bool ok, double ms, double budget_ms,
            const std::string& note = "") {
  bool pass = ok && ms < budget_ms;
  std::printf("[%s] criterion %d: %s (%.1f ms, budget %.0f ms)\n", pass ? "PASS" : "FAIL", idx,
              name.c_str(), ms, budget_ms);
  if (!note.empty()) std::printf("%s", note.c_str());
  if (!pass) ++failures;
}

ExpSum C(long n, long d = 1) { return ExpSum::constant(2, Rational(n, d)); }

double tower_log(double a, unsigned h) {
  double e = a;
  for (unsigned i = 2; i <= h; ++i) e = a * std::pow(2.0, e);
  return e;
}

double as_double(const Rational& q) { return q.num().get_d() / q.den().get_d(); }

// 1: the three height-bounded tower identities verify with exact methods.
void criterion1() {
  auto t0 = clk::now();
  struct Fix {
    EquationInstance inst;
    const char* text;
  };
  std::vector<Fix> fixtures = {
      {{2, Rational(1), Rational(1), Rational(2), 3, 3, 2}, "2^^3 * 2^^3 = 4^^2"},
      {{2, Rational(-1), Rational(-1), Rational(-2), 3, 3, 3}, "(1/2)^^3 * (1/2)^^3 = (1/4)^^3"},
      {{2, Rational(-1, 2), Rational(-1, 2), Rational(-1), 2, 2, 3},
       "(2^(-1/2))^^2 * (2^(-1/2))^^2 = (1/2)^^3"},
  };
  bool ok = true;
  std::string note;
  for (const auto& f : fixtures) {
    Verdict v = verify_instance(f.inst);
    bool good = v.outcome == Outcome::equal && v.method != Method::interval_separation;
    if (!good) {
      ok = false;
      note += std::string("  identity ") + f.text + " gave " + to_string(v.outcome) + "/" +
              to_string(v.method) + "\n";
    }
  }
  report(1, "tower identities verify with exact methods", ok, ms_since(t0), 3 * 1000.0, note);
}

// 2: canonical intermediate values, checked by exact field equality.
void criterion2() {
  auto t0 = clk::now();
  bool ok = true;
  std::string note;
  // (1/2)^^3 exponent is -2^(-1/2): as an element of K_2, -t/2
  ExpSum e = PowNum::tower(PowNum::atom(2, Rational(-1)), 3).exponent();
  if (!(e.embeds_in_radical_field() &&
        e.to_field_element(2) == FieldElement(2, 2, {Rational(0), Rational(-1, 2)}))) {
    ok = false;
    note += "  (1/2)^^3 exponent is not -2^(-1/2): got " + e.str() + "\n";
  }
  // the squared identity value has exponent -2^(1/2), i.e. -t
  ExpSum e2 = e + e;
  if (!(e2.embeds_in_radical_field() &&
        e2.to_field_element(2) == FieldElement(2, 2, {Rational(0), Rational(-1)}))) {
    ok = false;
    note += "  (1/2)^^3 * (1/2)^^3 exponent is not -2^(1/2): got " + e2.str() + "\n";
  }
  // 2^^3 * 2^^3 = 2^8 exactly
  ExpSum lhs = PowNum::tower(PowNum::atom(2, Rational(1)), 3).exponent() +
               PowNum::tower(PowNum::atom(2, Rational(1)), 3).exponent();
  if (!(lhs.as_rational() == Rational(8))) {
    ok = false;
    note += "  2^^3 * 2^^3 exponent is not 8: got " + lhs.str() + "\n";
  }
  report(2, "canonical intermediate values match exactly", ok, ms_since(t0), 1000.0, note);
}

// 3: family scans over q = p/d, |p| <= 20, d <= 6 recover the closed-form
// hit sets, cross-checked by an independent double-precision scan.
void criterion3() {
  auto t0 = clk::now();
  bool ok = true;
  std::string note;
  struct Fam {
    unsigned k, m, n;
    std::vector<Rational> want;
  };
  std::vector<Fam> fams = {
      {3, 3, 2, {Rational(0), Rational(1)}},
      {3, 3, 3, {Rational(0), Rational(-1)}},
      {2, 2, 3, {Rational(0), Rational(-1, 2)}},
  };
  for (const auto& f : fams) {
    FamilyScanResult r = family_scan(2, f.k, f.m, f.n, 20, 6);
    std::vector<Rational> sorted_hits = r.hits, want = f.want;
    auto lt = [](const Rational& a, const Rational& b) { return cmp(a, b) < 0; };
    std::sort(sorted_hits.begin(), sorted_hits.end(), lt);
    std::sort(want.begin(), want.end(), lt);
    if (!(sorted_hits == want) || !r.unknowns.empty()) {
      ok = false;
      note += "  heights (" + std::to_string(f.k) + "," + std::to_string(f.m) + "," +
              std::to_string(f.n) + "): unexpected hit or unknown set\n";
    }
    // independent floating scan at a 1e-12 discrepancy threshold
    for (const auto& q : r.grid) {
      double lhs = tower_log(as_double(q), f.k) + tower_log(as_double(q), f.m);
      double rhs = tower_log(as_double(q + q), f.n);
      bool float_hit = std::isfinite(lhs) && std::isfinite(rhs) &&
                       std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs));
      bool exact_hit = false;
      for (const auto& h : r.hits) exact_hit = exact_hit || h == q;
      if (float_hit != exact_hit) {
        ok = false;
        note += "  float scan disagrees at q=" + q.str() + "\n";
      }
    }
  }
  report(3, "family-scan hit sets are exact", ok, ms_since(t0), 30 * 1000.0, note);
}

// 4: the height-2 grid search decides every cell (no Unknowns) and the
// expected emptiness of nontrivial solutions. The decider is complete here,
// but emptiness is false: the mirror-paired coincidences below are genuine,
// each re-verified exactly, so that clause fails and is reported as found.
void criterion4() {
  auto t0 = clk::now();
  SearchConfig cfg;
  cfg.k = cfg.m = cfg.n = 2;
  cfg.max_num = 4;
  cfg.max_den = 3;
  SearchReport r = run_search(cfg);
  bool no_unknowns = r.unknowns.empty();
  std::vector<SolutionRecord> nontrivial;
  for (const auto& s : r.solutions) {
    if (!s.trivial) nontrivial.push_back(s);
  }
  std::string note;
  if (!no_unknowns) note += "  decider left Unknown cells\n";
  for (const auto& s : nontrivial) {
    Verdict v = verify_instance({2, s.a, s.b, s.c, s.k, s.m, s.n});
    note += "  found nontrivial solution a=" + s.a.str() + " b=" + s.b.str() +
            " c=" + s.c.str() + " (" + to_string(v.outcome) + "/" + to_string(v.method) + ")\n";
  }
  if (!nontrivial.empty()) {
    note += "  analysis: the emptiness clause is refuted by exact verification; every listed\n"
            "  record satisfies the height-2 equation, e.g. a=0, b=-1, c=-2 since\n"
            "  (2^(-1))^(2^(-1)) and (2^(-2))^(2^(-2)) are both 2^(-1/2). The decider itself\n"
            "  is complete on this grid (zero Unknowns), so the failure is in the expected\n"
            "  count, not in the engine.\n";
  }
  report(4, "height-2 search: complete decider and expected emptiness",
         no_unknowns && nontrivial.empty(), ms_since(t0), 60 * 1000.0, note);
}

// 5: property-based substitute for the unprovable finiteness claim.
void criterion5() {
  auto t0 = clk::now();
  bool ok = true;
  std::string note;

  // (i) soundness: Equal verdicts use exact methods; NotEqual verdicts are
  // confirmed by interval separation of the exponent difference.
  {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<long> num(-2, 2), den(1, 2);
    for (int rep = 0; rep < 150 && ok; ++rep) {
      Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
      unsigned k = 2 + rng() % 2, m = 2 + rng() % 2, n = 2 + rng() % 2;
      Verdict v = verify_instance({2, a, b, c, k, m, n});
      ExpSum diff = equation_exponent(PowNum::atom(2, a), PowNum::atom(2, b),
                                      PowNum::atom(2, c), k, m, n);
      if (v.outcome == Outcome::equal) {
        if (v.method == Method::interval_separation || !diff.is_zero()) {
          ok = false;
          note += "  (i) Equal verdict not exact\n";
        }
      } else if (v.outcome == Outcome::not_equal) {
        if (sign_of(diff, 512) == SignResult::undetermined) {
          ok = false;
          note += "  (i) NotEqual verdict not interval-separable\n";
        }
      } else {
        ok = false;
        note += "  (i) Unknown on a decidable instance\n";
      }
    }
  }

  // (ii) exact/interval agreement on 1000 random depth-<=2 exponent sums
  {
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
    for (int rep = 0; rep < 1000 && ok; ++rep) {
      Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
      unsigned k = 2 + rng() % 2, m = 2 + rng() % 2, n = 2 + rng() % 2;
      Verdict v = verify_instance({2, a, b, c, k, m, n});
      ExpSum diff = equation_exponent(PowNum::atom(2, a), PowNum::atom(2, b),
                                      PowNum::atom(2, c), k, m, n);
      SignResult s = sign_of(diff, 256);
      if (v.outcome == Outcome::equal && s != SignResult::undetermined) {
        ok = false;
        note += "  (ii) interval engine separated an Equal instance\n";
      }
      if (v.outcome == Outcome::not_equal && diff.is_zero()) {
        ok = false;
        note += "  (ii) NotEqual with a structurally zero difference\n";
      }
    }
  }

  // (iii) canonicalization idempotence and print/parse round-trips
  {
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
    for (int rep = 0; rep < 1000 && ok; ++rep) {
      std::vector<ExpChain> parts;
      int n = static_cast<int>(rng() % 3);
      for (int i = 0; i < n; ++i) {
        Rational q(num(rng), den(rng));
        if (q.is_zero()) continue;
        parts.push_back({q, share(C(num(rng), den(rng)))});
      }
      ExpSum e = ExpSum::make(2, Rational(num(rng), den(rng)), parts);
      if (!(ExpSum::make(2, e.constant_part(), e.chains()) == e)) {
        ok = false;
        note += "  (iii) canonicalization is not idempotent\n";
      }
      PowNum x = PowNum::from_exponent(e);
      PowNum back = lower_value(parse_expression(print_canonical(x)), 2);
      if (!(back == x)) {
        ok = false;
        note += "  (iii) print/parse round-trip changed the value\n";
      }
    }
  }

  // (iv) worker-count invariance of the search files
  {
    std::mt19937_64 seed(std::random_device{}());
    auto run_with = [&](unsigned workers, const fs::path& dir) {
      SearchConfig cfg;
      cfg.k = cfg.m = cfg.n = 2;
      cfg.max_num = 4;
      cfg.max_den = 3;
      cfg.workers = workers;
      cfg.results_path = (dir / "r.jsonl").string();
      cfg.unknowns_path = (dir / "u.jsonl").string();
      run_search(cfg);
      std::ifstream in(dir / "r.jsonl", std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    };
    fs::path d1 = fs::temp_directory_path() / ("towereq-acc-w1-" + std::to_string(seed()));
    fs::path d8 = fs::temp_directory_path() / ("towereq-acc-w8-" + std::to_string(seed()));
    fs::create_directories(d1);
    fs::create_directories(d8);
    std::string r1 = run_with(1, d1), r8 = run_with(8, d8);
    if (r1 != r8 || r1.empty()) {
      ok = false;
      note += "  (iv) worker counts changed the output bytes\n";
    }
    fs::remove_all(d1);
    fs::remove_all(d8);
  }

  report(5, "soundness, agreement, round-trip, and determinism properties", ok, ms_since(t0),
         120 * 1000.0, note);
}

// 6: monomial recognition inverts c * 2^c over a p/q grid (c = 0 maps to the
// empty list by contract and is excluded).
void criterion6() {
  auto t0 = clk::now();
  bool ok = true;
  std::string note;
  for (long p = -12; p <= 12; ++p) {
    for (long q = 1; q <= 4; ++q) {
      if (p == 0) continue;
      Rational c(p, q);
      unsigned deg = static_cast<unsigned>(c.den().get_ui());
      long pm = static_cast<long>(mpz_class(c.num() % c.den()).get_si());
      if (pm < 0) pm += static_cast<long>(deg);
      long z = static_cast<long>((c - Rational(pm, static_cast<long>(deg))).floor().get_si());
      FieldElement x = FieldElement::theta_power(2, deg, pm).scalar_mul(c * base_pow(2, z));
      bool found = false;
      for (const auto& cand : recognize_monomial(x)) found = found || cand == c;
      if (!found) {
        ok = false;
        note += "  missing preimage c=" + c.str() + "\n";
      }
    }
  }
  report(6, "monomial recognition inverts its construction", ok, ms_since(t0), 5 * 1000.0, note);
}

// 7: interval soundness: finer enclosures nest and contract.
void criterion7() {
  auto t0 = clk::now();
  bool ok = true;
  std::string note;
  std::mt19937_64 rng(707);
  std::uniform_int_distribution<long> num(-8, 8), den(1, 4);
  auto random_sum = [&](int maxdepth, auto&& self) -> ExpSum {
    std::vector<ExpChain> parts;
    int n = static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) {
      Rational q(num(rng), den(rng));
      if (q.is_zero()) continue;
      ExpSum inner = maxdepth > 1 && (rng() % 3 == 0) ? self(maxdepth - 1, self)
                                                      : C(num(rng), den(rng));
      parts.push_back({q, share(std::move(inner))});
    }
    return ExpSum::make(2, Rational(num(rng), den(rng)), parts);
  };
  for (int rep = 0; rep < 1000 && ok; ++rep) {
    ExpSum e = random_sum(2, random_sum);
    Interval coarse = eval_exponent(e, 128);
    Interval fine = eval_exponent(e, 512);
    if (!fine.inside(coarse)) {
      ok = false;
      note += "  512-bit enclosure escaped the 128-bit one: " + e.str() + "\n";
    }
    if (!fine.relative_width_below(400)) {
      ok = false;
      note += "  512-bit enclosure too wide: " + e.str() + "\n";
    }
  }
  report(7, "interval enclosures nest and contract", ok, ms_since(t0), 60 * 1000.0, note);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  if (failures > 0) {
    std::printf("%d of 7 criteria failed; see the notes above for the honest-failure analysis\n",
                failures);
    return 1;
  }
  std::printf("all 7 criteria pass\n");
  return 0;
}
