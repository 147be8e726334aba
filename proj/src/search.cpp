#include "towereq/search.hpp"

#include <json.hpp>

#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

namespace towereq {

namespace {

using ordered_json = nlohmann::ordered_json;

struct CellOut {
  std::vector<SolutionRecord> solutions;
  std::vector<UnknownRecord> unknowns;
};

std::string solution_line(const SolutionRecord& r) {
  ordered_json js{{"a", r.a.str()},         {"b", r.b.str()},
                  {"c", r.c.str()},         {"k", r.k},
                  {"m", r.m},               {"n", r.n},
                  {"base", r.base},         {"verdict", "Equal"},
                  {"method", to_string(r.method)}, {"trivial", r.trivial}};
  return js.dump();
}

std::string unknown_line(const UnknownRecord& r) {
  ordered_json js{{"a", r.a.str()},   {"b", r.b.str()}, {"c", r.c.str()},
                  {"k", r.k},         {"m", r.m},       {"n", r.n},
                  {"base", r.base},   {"verdict", "Unknown"},
                  {"detail", r.detail}};
  return js.dump();
}

Method method_from_string(const std::string& s) {
  for (Method m : {Method::structural, Method::exact_field, Method::monomial_normal_form,
                   Method::transcendence_rule, Method::interval_separation}) {
    if (s == to_string(m)) return m;
  }
  fail(errc::corrupt_checkpoint, "unknown method tag '" + s + "'");
}

std::string config_line(const SearchConfig& cfg, size_t grid_size) {
  return "base=" + std::to_string(cfg.base) + " k=" + std::to_string(cfg.k) +
         " m=" + std::to_string(cfg.m) + " n=" + std::to_string(cfg.n) +
         " max_num=" + std::to_string(cfg.max_num) + " max_den=" + std::to_string(cfg.max_den) +
         " grid=" + std::to_string(grid_size) +
         " dedup=" + std::to_string(cfg.dedup_symmetric ? 1 : 0);
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(errc::io, "cannot open " + tmp);
    out << content;
    out.flush();
    if (!out) fail(errc::io, "write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(errc::io, "rename failed for " + path + ": " + ec.message());
}

void commit_files(const SearchConfig& cfg, const std::vector<CellOut>& cells, long frontier,
                  size_t grid_size) {
  if (!cfg.results_path.empty()) {
    std::string content;
    for (long i = 0; i <= frontier; ++i) {
      for (const auto& r : cells[static_cast<size_t>(i)].solutions) {
        content += solution_line(r) + "\n";
      }
    }
    atomic_write(cfg.results_path, content);
  }
  if (!cfg.unknowns_path.empty()) {
    std::string content;
    for (long i = 0; i <= frontier; ++i) {
      for (const auto& r : cells[static_cast<size_t>(i)].unknowns) {
        content += unknown_line(r) + "\n";
      }
    }
    atomic_write(cfg.unknowns_path, content);
  }
  if (!cfg.checkpoint_path.empty()) {
    std::string content = "towereq-checkpoint v1\n" + config_line(cfg, grid_size) + "\nfrontier=" +
                          std::to_string(frontier) + "\n";
    atomic_write(cfg.checkpoint_path, content);
  }
}

long load_checkpoint(const SearchConfig& cfg, size_t grid_size, size_t total) {
  std::ifstream in(cfg.checkpoint_path);
  if (!in) fail(errc::io, "cannot open checkpoint " + cfg.checkpoint_path);
  std::string l1, l2, l3;
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  if (l1 != "towereq-checkpoint v1") fail(errc::corrupt_checkpoint, "bad checkpoint header");
  if (l2 != config_line(cfg, grid_size)) {
    fail(errc::corrupt_checkpoint, "checkpoint configuration mismatch");
  }
  const std::string prefix = "frontier=";
  if (l3.rfind(prefix, 0) != 0) fail(errc::corrupt_checkpoint, "missing frontier line");
  long f = 0;
  try {
    size_t used = 0;
    f = std::stol(l3.substr(prefix.size()), &used);
    if (used != l3.size() - prefix.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    fail(errc::corrupt_checkpoint, "unreadable frontier");
  }
  if (f < 0 || static_cast<size_t>(f) >= total) fail(errc::corrupt_checkpoint, "frontier out of range");
  return f;
}

void load_records(const SearchConfig& cfg, const std::vector<Rational>& grid, long frontier,
                  std::vector<CellOut>& cells) {
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < grid.size(); ++i) index[grid[i].str()] = i;
  const size_t G = grid.size();
  auto cell_of = [&](const ordered_json& js) -> size_t {
    auto ia = index.find(js.at("a").get<std::string>());
    auto ib = index.find(js.at("b").get<std::string>());
    if (ia == index.end() || ib == index.end()) {
      fail(errc::corrupt_checkpoint, "record off the grid");
    }
    if (js.at("k").get<unsigned>() != cfg.k || js.at("m").get<unsigned>() != cfg.m ||
        js.at("n").get<unsigned>() != cfg.n || js.at("base").get<unsigned>() != cfg.base) {
      fail(errc::corrupt_checkpoint, "record from another configuration");
    }
    return ia->second * G + ib->second;
  };
  auto each_line = [&](const std::string& path, auto&& handle) {
    std::ifstream in(path);
    if (!in) fail(errc::corrupt_checkpoint, "missing data file " + path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        handle(ordered_json::parse(line));
      } catch (const Error&) {
        throw;
      } catch (const std::exception& e) {
        fail(errc::corrupt_checkpoint,
             path + ":" + std::to_string(lineno) + ": unreadable record: " + e.what());
      }
    }
  };
  each_line(cfg.results_path, [&](const ordered_json& js) {
    size_t cell = cell_of(js);
    if (cell > static_cast<size_t>(frontier)) return;  // written ahead of the frontier
    cells[cell].solutions.push_back(
        {Rational::parse(js.at("a").get<std::string>()), Rational::parse(js.at("b").get<std::string>()),
         Rational::parse(js.at("c").get<std::string>()), cfg.k, cfg.m, cfg.n, cfg.base,
         method_from_string(js.at("method").get<std::string>()), js.at("trivial").get<bool>()});
  });
  each_line(cfg.unknowns_path, [&](const ordered_json& js) {
    size_t cell = cell_of(js);
    if (cell > static_cast<size_t>(frontier)) return;
    cells[cell].unknowns.push_back(
        {Rational::parse(js.at("a").get<std::string>()), Rational::parse(js.at("b").get<std::string>()),
         Rational::parse(js.at("c").get<std::string>()), cfg.k, cfg.m, cfg.n, cfg.base,
         js.at("detail").get<std::string>()});
  });
}

CellOut compute_cell(const SearchConfig& cfg, const std::vector<Rational>& grid, size_t ia,
                     size_t ib) {
  CellOut out;
  if (cfg.dedup_symmetric && cfg.k == cfg.m && ia > ib) return out;
  const Rational& a = grid[ia];
  const Rational& b = grid[ib];
  auto visit = [&](const Rational& c, bool from_solver) {
    EquationInstance inst{cfg.base, a, b, c, cfg.k, cfg.m, cfg.n};
    Verdict v = verify_instance(inst, cfg.bits, cfg.limits);
    if (v.outcome == Outcome::equal) {
      out.solutions.push_back(
          {a, b, c, cfg.k, cfg.m, cfg.n, cfg.base, v.method, is_trivial_solution(inst)});
    } else if (v.outcome == Outcome::unknown) {
      out.unknowns.push_back({a, b, c, cfg.k, cfg.m, cfg.n, cfg.base, v.detail});
    } else if (from_solver) {
      out.unknowns.push_back(
          {a, b, c, cfg.k, cfg.m, cfg.n, cfg.base, "solver candidate failed re-verification: " + v.detail});
    }
  };
  try {
    for (const auto& c : solve_gamma(cfg.base, a, b, cfg.k, cfg.m, cfg.n)) visit(c, true);
    return out;
  } catch (const Error& e) {
    if (e.code() != errc::unsupported_shape) throw;
    out = CellOut{};
  }
  for (const auto& c : grid) visit(c, false);
  return out;
}

}  // namespace

std::vector<Rational> enumerate_rationals(long max_num, long max_den) {
  if (max_num < 0 || max_den < 1) fail(errc::domain, "bad grid bounds");
  std::vector<Rational> out;
  for (long den = 1; den <= max_den; ++den) {
    if (den == 1) out.push_back(Rational(0));
    for (long num = 1; num <= max_num; ++num) {
      if (std::gcd(num, den) != 1) continue;
      out.push_back(Rational(-num, den));
      out.push_back(Rational(num, den));
    }
  }
  return out;
}

SearchReport run_search(const SearchConfig& cfg) {
  require_prime_base(cfg.base);
  if (cfg.k < 2 || cfg.m < 2 || cfg.n < 2) fail(errc::height, "heights must be at least 2");
  if (!cfg.checkpoint_path.empty() && (cfg.results_path.empty() || cfg.unknowns_path.empty())) {
    fail(errc::domain, "checkpointing requires results and unknowns paths");
  }
  const std::vector<Rational> grid = enumerate_rationals(cfg.max_num, cfg.max_den);
  const size_t G = grid.size();
  const size_t total = G * G;
  std::vector<CellOut> cells(total);
  long frontier = -1;
  bool resumed = false;
  if (!cfg.checkpoint_path.empty() && std::filesystem::exists(cfg.checkpoint_path)) {
    frontier = load_checkpoint(cfg, G, total);
    load_records(cfg, grid, frontier, cells);
    resumed = true;
  }

  std::atomic<size_t> next{static_cast<size_t>(frontier + 1)};
  std::mutex mu;
  std::condition_variable cv;
  std::map<size_t, CellOut> ready;
  const unsigned nworkers = std::max(1u, cfg.workers);
  unsigned finished = 0;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= total) break;
      try {
        CellOut out = compute_cell(cfg, grid, i / G, i % G);
        std::lock_guard lk(mu);
        ready.emplace(i, std::move(out));
        cv.notify_all();
      } catch (...) {
        std::lock_guard lk(mu);
        if (!first_error) first_error = std::current_exception();
        next.store(total);
        cv.notify_all();
        break;
      }
    }
    std::lock_guard lk(mu);
    ++finished;
    cv.notify_all();
  };

  std::vector<std::thread> pool;
  pool.reserve(nworkers);
  for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(worker);

  size_t since_commit = 0;
  {
    std::unique_lock lk(mu);
    while (true) {
      // Wake only when the frontier can move, or there is nothing left to wait
      // for; waking on any ready cell would spin while holding the lock.
      cv.wait(lk, [&] {
        return first_error || finished == nworkers ||
               (!ready.empty() && ready.begin()->first == static_cast<size_t>(frontier) + 1);
      });
      if (first_error) break;
      while (!ready.empty() && ready.begin()->first == static_cast<size_t>(frontier) + 1) {
        cells[static_cast<size_t>(++frontier)] = std::move(ready.begin()->second);
        ready.erase(ready.begin());
        ++since_commit;
        // Commit at fixed consumed-cell counts so the checkpoint cadence is a
        // function of the grid alone, not of scheduling or worker count. The
        // last cell is left to the final commit below.
        bool last = static_cast<size_t>(frontier + 1) == total;
        if (!last && !cfg.checkpoint_path.empty() && since_commit >= cfg.checkpoint_every) {
          lk.unlock();
          try {
            commit_files(cfg, cells, frontier, G);
            if (cfg.on_commit) cfg.on_commit(static_cast<size_t>(frontier));
            since_commit = 0;
          } catch (...) {
            if (!first_error) first_error = std::current_exception();
            next.store(total);
          }
          lk.lock();
          if (first_error) break;
        }
      }
      if (first_error) break;
      if (finished == nworkers && ready.empty()) break;
    }
    cv.wait(lk, [&] { return finished == nworkers; });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  if (!cfg.results_path.empty() || !cfg.unknowns_path.empty() || !cfg.checkpoint_path.empty()) {
    commit_files(cfg, cells, frontier, G);
  }

  SearchReport report;
  report.grid_size = G;
  report.cells = total;
  report.resumed = resumed;
  for (const auto& cell : cells) {
    report.solutions.insert(report.solutions.end(), cell.solutions.begin(), cell.solutions.end());
    report.unknowns.insert(report.unknowns.end(), cell.unknowns.begin(), cell.unknowns.end());
  }
  return report;
}

FamilyScanResult family_scan(unsigned base, unsigned k, unsigned m, unsigned n, long max_num,
                             long max_den, mpfr_prec_t bits) {
  FamilyScanResult out;
  out.grid = enumerate_rationals(max_num, max_den);
  for (const auto& q : out.grid) {
    EquationInstance inst{base, q, q, q + q, k, m, n};
    Verdict v = verify_instance(inst, bits);
    if (v.outcome == Outcome::equal) {
      out.hits.push_back(q);
      out.hit_methods.push_back(v.method);
    } else if (v.outcome == Outcome::unknown) {
      out.unknowns.emplace_back(q, v.detail);
    }
  }
  return out;
}

}  // namespace towereq
