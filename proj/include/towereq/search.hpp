#pragma once

#include <functional>
#include <string>
#include <vector>

#include "towereq/equality.hpp"

namespace towereq {

// Grid of reduced rationals p/q with |p| <= max_num, 1 <= q <= max_den,
// ordered by denominator, then |p| ascending with the negative value first;
// zero leads. The order is part of the on-disk format.
std::vector<Rational> enumerate_rationals(long max_num, long max_den);

struct SearchConfig {
  unsigned base = 2;
  unsigned k = 2, m = 2, n = 2;
  long max_num = 2, max_den = 2;
  mpfr_prec_t bits = 256;
  EvalLimits limits{};
  unsigned workers = 1;
  // For equal left heights, skip cells with a > b (mirror images).
  bool dedup_symmetric = false;
  std::string results_path;     // JSONL, empty writes nothing
  std::string unknowns_path;    // JSONL, empty writes nothing
  std::string checkpoint_path;  // empty disables checkpointing
  size_t checkpoint_every = 64;
  // Invoked after each intermediate commit with the committed frontier;
  // an exception here aborts the scan (files stay resumable).
  std::function<void(size_t)> on_commit;
};

struct SolutionRecord {
  Rational a, b, c;
  unsigned k, m, n;
  unsigned base;
  Method method;
  bool trivial;
};

struct UnknownRecord {
  Rational a, b, c;
  unsigned k, m, n;
  unsigned base;
  std::string detail;
};

struct SearchReport {
  size_t grid_size = 0;
  size_t cells = 0;
  bool resumed = false;
  std::vector<SolutionRecord> solutions;
  std::vector<UnknownRecord> unknowns;
};

// Scan all (a, b) grid cells for gamma closing the instance. Exactly solvable
// exponent shapes get complete gamma sets from the closed-form solver (which
// may leave the grid); other shapes fall back to trying every grid gamma.
// Results land in the files cell by cell; with a checkpoint path the scan is
// resumable and the final files are byte-identical to an uninterrupted run,
// regardless of worker count.
SearchReport run_search(const SearchConfig& cfg);

struct FamilyScanResult {
  std::vector<Rational> grid;
  std::vector<Rational> hits;  // q with B^q, B^q, B^(2q) closing the instance
  std::vector<Method> hit_methods;
  std::vector<std::pair<Rational, std::string>> unknowns;
};

FamilyScanResult family_scan(unsigned base, unsigned k, unsigned m, unsigned n, long max_num,
                             long max_den, mpfr_prec_t bits = 256);

}  // namespace towereq
