#include "merge_lab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "merge_lab/algorithms.hpp"
#include "merge_lab/exact_game.hpp"
#include "merge_lab/harness.hpp"

namespace fs = std::filesystem;

namespace merge_lab {

fs::path default_cache_dir() {
  if (const char* env = std::getenv("MERGE_LAB_CACHE"); env && *env) return fs::path(env);
  return fs::path(".merge-lab");
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file << text;
  if (!file) throw IoError("write failed for " + path.string());
}

std::string table_name(int m, int n) {
  return "table-" + std::to_string(m) + "x" + std::to_string(n) + ".csv";
}

std::string solve_name(int m, int n) {
  return "solve-" + std::to_string(m) + "x" + std::to_string(n) + ".json";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Cache::Cache(fs::path dir, std::ostream& log) : dir_(std::move(dir)), log_(log) {}

void Cache::store(const fs::path& file, const std::string& text) {
  try {
    fs::create_directories(dir_);
    fs::path tmp = file;
    tmp += ".tmp";
    write_file(tmp, text);
    fs::rename(tmp, file);
  } catch (const std::exception& e) {
    log_ << "warning: could not write cache file " << file.string() << ": " << e.what() << "\n";
  }
}

std::optional<AdversaryTable> Cache::covering_table(int m, int n) {
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) return std::nullopt;
  static const std::regex pattern(R"(table-(\d+)x(\d+)\.csv)");
  struct Candidate {
    long long area;
    int m, n;
    fs::path path;
  };
  std::vector<Candidate> found;
  for (const auto& entry : fs::directory_iterator(dir_, ec)) {
    std::smatch match;
    std::string name = entry.path().filename().string();
    if (!std::regex_match(name, match, pattern)) continue;
    int cm = std::stoi(match[1]);
    int cn = std::stoi(match[2]);
    if (cm >= m && cn >= n) found.push_back({1LL * cm * cn, cm, cn, entry.path()});
  }
  std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.area, a.m, a.n) < std::tie(b.area, b.m, b.n);
  });
  for (const Candidate& c : found) {
    try {
      AdversaryTable t = import_csv(c.path);
      if (t.max_m() == c.m && t.max_n() == c.n) return t;
      log_ << "warning: ignoring " << c.path.string() << ": bounds do not match its name\n";
    } catch (const std::exception& e) {
      log_ << "warning: ignoring " << c.path.string() << ": " << e.what() << "\n";
    }
  }
  return std::nullopt;
}

AdversaryTable Cache::table(int max_m, int max_n, bool* hit) {
  fs::path file = dir_ / table_name(max_m, max_n);
  std::error_code ec;
  if (fs::exists(file, ec)) {
    try {
      AdversaryTable t = import_csv(file);
      if (t.max_m() == max_m && t.max_n() == max_n) {
        if (hit) *hit = true;
        return t;
      }
      log_ << "warning: ignoring " << file.string() << ": bounds do not match its name\n";
    } catch (const std::exception& e) {
      log_ << "warning: ignoring " << file.string() << ": " << e.what() << "\n";
    }
  }
  if (hit) *hit = false;
  auto t0 = std::chrono::steady_clock::now();
  AdversaryTable t = compute_tables(max_m, max_n);
  log_ << "computed table " << max_m << "x" << max_n << " in " << std::fixed
       << std::setprecision(2) << seconds_since(t0) << " s\n";
  store(file, export_csv_string(t));
  return t;
}

namespace {

std::optional<int> parse_solve_file(const std::string& text, int m, int n) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (!j.contains("m") || !j.contains("n") || !j.contains("value") || !j.contains("moves")) {
    return std::nullopt;
  }
  if (!j["m"].is_number_integer() || !j["n"].is_number_integer() ||
      !j["value"].is_number_integer() || !j["moves"].is_array()) {
    return std::nullopt;
  }
  if (j["m"].get<int>() != m || j["n"].get<int>() != n) return std::nullopt;
  int v = j["value"].get<int>();
  if (v < info_bound(m, n) || v > std::max(0, m + n - 1)) return std::nullopt;
  return v;
}

}  // namespace

std::optional<int> Cache::cached_exact(int m, int n) {
  fs::path file = dir_ / solve_name(m, n);
  std::error_code ec;
  if (!fs::exists(file, ec)) return std::nullopt;
  try {
    if (auto v = parse_solve_file(read_file(file), m, n)) return v;
    log_ << "warning: ignoring " << file.string() << ": not a valid strategy dump\n";
  } catch (const std::exception& e) {
    log_ << "warning: ignoring " << file.string() << ": " << e.what() << "\n";
  }
  return std::nullopt;
}

std::optional<int> Cache::exact(int m, int n, std::int64_t budget) {
  if (auto v = cached_exact(m, n)) return v;
  ExactSolver solver(m, n, budget);
  auto t0 = std::chrono::steady_clock::now();
  SolveOutcome r = solver.solve();
  log_ << "solved (" << m << "," << n << ") in " << std::fixed << std::setprecision(2)
       << seconds_since(t0) << " s, " << r.states_expanded << " states\n";
  if (!r.value) return std::nullopt;
  store_exact(m, n, solver.strategy_json());
  return r.value;
}

void Cache::store_exact(int m, int n, const std::string& strategy_json) {
  store(dir_ / solve_name(m, n), strategy_json);
}

ExactValueFn Cache::exact_fn() {
  return [this](int m, int n) -> std::optional<int> {
    if (m < 0 || n < 0 || m + n > 62) return std::nullopt;
    return exact(m, n, kDefaultStateBudget);
  };
}

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

// Best proven upper bound on M(m, n) with its source, m <= n.
std::pair<int, std::string> best_upper(int m, int n) {
  std::pair<int, std::string> best{tape_merge_worst(m, n), "tape merge"};
  auto offer = [&](int v, const std::string& why) {
    if (v < best.first) best = {v, why};
  };
  if (m >= 1) offer(hwang_lin_formula(m, n), "hwang-lin formula");
  const int k = n - 2 * m;
  if (m >= 5 && k >= -1) offer(3 * m + floor_div(k, 2) - 2, "theorem 1.3(a)");
  if (m >= 7 && k == -2) offer(3 * m - 4, "theorem 1.3(b)");
  if (m >= 10 && k == 0) offer(3 * m - 3, "theorem 1.3(c)");
  return best;
}

std::string transcript_text(const Transcript& t) {
  std::string s;
  for (const auto& e : t) {
    if (!s.empty()) s += ' ';
    s += "a" + std::to_string(e.query.i) + (e.outcome == Outcome::Less ? "<" : ">") + "b" +
         std::to_string(e.query.j);
  }
  return s;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << v;
  return ss.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Merge-complexity laboratory: adversary tables, exact values, algorithm measurement"};
  app.name(args.empty() ? "merge-lab" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (default: machine parallelism)")
      ->check(CLI::NonNegativeNumber);

  const std::vector<std::string> tokens = {"dot", "bs", "fs"};

  auto* tables = app.add_subcommand("tables", "Build or load an adversary table");
  int t_m = 0, t_n = 0;
  std::string t_out;
  bool t_naive = false;
  tables->add_option("--max-m", t_m, "Largest m")->required()->check(CLI::PositiveNumber);
  tables->add_option("--max-n", t_n, "Largest n")->required()->check(CLI::PositiveNumber);
  tables->add_option("--out", t_out, "Write the table as CSV");
  tables->add_flag("--naive", t_naive, "Use the unaccelerated reference recursion");

  auto* value = app.add_subcommand("value", "Query a restricted-adversary value");
  std::string v_left = "dot", v_right = "dot";
  int v_m = 0, v_n = 0;
  value->add_option("--left", v_left, "Left constraint")->check(CLI::IsMember(tokens));
  value->add_option("--right", v_right, "Right constraint")->check(CLI::IsMember(tokens));
  value->add_option("-m", v_m, "Size of A")->required()->check(CLI::NonNegativeNumber);
  value->add_option("-n", v_n, "Size of B")->required()->check(CLI::NonNegativeNumber);

  auto* exact = app.add_subcommand("exact", "Solve M(m,n) exactly");
  int e_m = 0, e_n = 0;
  std::int64_t e_budget = kDefaultStateBudget;
  std::string e_dump;
  exact->add_option("-m", e_m, "Size of A")->required()->check(CLI::NonNegativeNumber);
  exact->add_option("-n", e_n, "Size of B")->required()->check(CLI::NonNegativeNumber);
  exact->add_option("--budget", e_budget, "State budget")->check(CLI::PositiveNumber);
  exact->add_option("--dump", e_dump, "Write the strategy JSON");

  auto* meas = app.add_subcommand("measure", "Exact worst case of a merge algorithm");
  std::string a_name;
  int a_m = 0, a_n = 0;
  meas->add_option("--alg", a_name, "Algorithm")->required()->check(CLI::IsMember(algorithm_names()));
  meas->add_option("-m", a_m, "Size of A")->required()->check(CLI::NonNegativeNumber);
  meas->add_option("-n", a_n, "Size of B")->required()->check(CLI::NonNegativeNumber);

  auto* bounds = app.add_subcommand("bounds", "Lower and upper bounds on M(m,n)");
  int b_m = 0, b_n = 0;
  bounds->add_option("-m", b_m, "Size of A")->required()->check(CLI::NonNegativeNumber);
  bounds->add_option("-n", b_n, "Size of B")->required()->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  std::string s_suite = "all";
  int s_size = 40;
  std::string s_report;
  verify->add_option("--suite", s_suite, "Suite id or 'all'");
  verify->add_option("--max-size", s_size, "Table-scale limit on m")->check(CLI::PositiveNumber);
  verify->add_option("--report", s_report, "Write the JSON report");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("merge-lab");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }
  if (threads > 0) omp_set_num_threads(threads);

  Cache cache(default_cache_dir(), err);
  try {
    if (*tables) {
      AdversaryTable t;
      if (t_naive) {
        t = compute_tables_naive(t_m, t_n);
      } else {
        bool hit = false;
        t = cache.table(t_m, t_n, &hit);
        if (hit) err << "cache hit: " << (cache.dir() / table_name(t_m, t_n)).string() << "\n";
      }
      std::string csv = export_csv_string(t);
      if (!t_out.empty()) write_file(t_out, csv);
      out << "table " << t_m << "x" << t_n << " digest " << hex64(fnv1a64(csv)) << "\n";
      return kExitOk;
    }

    if (*value) {
      ProblemKey key{v_m, v_n, *constraint_from_token(v_left), *constraint_from_token(v_right)};
      if (!is_consistent(key)) {
        out << "invalid\n";
        return kExitOk;
      }
      auto t = cache.covering_table(v_m, v_n);
      if (!t) {
        err << "error: no cached table covers (" << v_m << "," << v_n << "); run `merge-lab tables "
            << "--max-m " << std::max(v_m, 1) << " --max-n " << std::max(v_n, 1) << "` first\n";
        return kExitCoverage;
      }
      out << t->value(key) << "\n";
      return kExitOk;
    }

    if (*exact) {
      if (e_m + e_n > 62) {
        err << "error: the exact solver supports m + n <= 62\n";
        return kExitCoverage;
      }
      std::optional<int> v = cache.cached_exact(e_m, e_n);
      std::string dump;
      if (v) {
        err << "cache hit: " << (cache.dir() / solve_name(e_m, e_n)).string() << "\n";
        if (!e_dump.empty()) dump = read_file(cache.dir() / solve_name(e_m, e_n));
      } else {
        ExactSolver solver(e_m, e_n, e_budget);
        auto t0 = std::chrono::steady_clock::now();
        SolveOutcome r = solver.solve();
        err << "solved (" << e_m << "," << e_n << ") in " << std::fixed << std::setprecision(2)
            << seconds_since(t0) << " s, " << r.states_expanded << " states\n";
        if (!r.value) {
          out << "UNKNOWN(budget)\n";
          return kExitCoverage;
        }
        v = r.value;
        dump = solver.strategy_json();
        cache.store_exact(e_m, e_n, dump);
      }
      if (!e_dump.empty()) write_file(e_dump, dump);
      out << *v << "\n";
      return kExitOk;
    }

    if (*meas) {
      if (a_name == "binary-insertion" && a_m != 1) {
        err << "error: binary-insertion needs -m 1\n";
        return kExitUsage;
      }
      MergeAlgorithm alg = algorithm_by_name(a_name);
      auto t0 = std::chrono::steady_clock::now();
      MeasureResult r = measure(alg, a_m, a_n);
      err << "measured in " << std::fixed << std::setprecision(2) << seconds_since(t0) << " s\n";
      out << "algorithm: " << alg.name() << "\n";
      out << "m: " << a_m << "\nn: " << a_n << "\n";
      out << "worst_case: " << r.worst_case << "\n";
      out << "leaves: " << r.leaves << "\n";
      out << "correct: " << (r.correct ? "true" : "false") << "\n";
      out << "worst_transcript: " << transcript_text(r.worst_transcript) << "\n";
      if (!r.correct) out << "failure: " << r.failure << "\n";
      return r.correct ? kExitOk : kExitVerifyFailed;
    }

    if (*bounds) {
      const int m = std::min(b_m, b_n);
      const int n = std::max(b_m, b_n);
      out << "info_bound: " << info_bound(m, n) << "\n";
      if (auto t = cache.covering_table(m, n)) {
        out << "adversary_lower: " << t->value({m, n}) << "\n";
      } else {
        out << "adversary_lower: not cached\n";
      }
      auto [up, why] = best_upper(m, n);
      out << "upper: " << up << " (" << why << ")\n";
      std::optional<int> ex = cache.cached_exact(b_m, b_n);
      if (!ex) ex = cache.cached_exact(b_n, b_m);
      if (ex) {
        out << "exact: " << *ex << "\n";
      } else if (auto f = trusted_fact(m, n)) {
        out << "exact: " << f->relation << " " << f->value << " (trusted: " << f->source << ")\n";
      } else {
        out << "exact: not cached\n";
      }
      return kExitOk;
    }

    if (*verify) {
      const auto& ids = suite_ids();
      if (s_suite != "all" && std::find(ids.begin(), ids.end(), s_suite) == ids.end()) {
        err << "error: unknown suite '" << s_suite << "'\n";
        return kExitUsage;
      }
      auto [tm, tn] = verify_table_bounds(s_size);
      AdversaryTable table = cache.table(tm, tn);
      VerifyContext ctx;
      ctx.table = &table;
      ctx.exact = cache.exact_fn();
      ctx.max_size = s_size;
      std::vector<SuiteReport> reports = run_suites(s_suite, ctx);
      if (!s_report.empty()) write_file(s_report, report_json(reports));
      for (const SuiteReport& r : reports) {
        out << r.id << " " << to_string(r.status) << " checked=" << r.checked;
        if (r.violations > 0) out << " violations=" << r.violations;
        if (!r.trusted.empty()) out << " trusted=" << r.trusted.size();
        out << "\n";
      }
      return any_failed(reports) ? kExitVerifyFailed : kExitOk;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const InsufficientTableError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCoverage;
  } catch (const MeasureBudgetError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCoverage;
  } catch (const NotSolvedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCoverage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace merge_lab
