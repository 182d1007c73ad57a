#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "merge_lab/adversary.hpp"
#include "merge_lab/verify.hpp"

namespace merge_lab {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitCoverage = 3,
  kExitIo = 4,
};

// $MERGE_LAB_CACHE, else ./.merge-lab.
std::filesystem::path default_cache_dir();

// On-disk cache of adversary tables and exact solves. Files that fail
// validation are reported on `log` and ignored.
class Cache {
 public:
  Cache(std::filesystem::path dir, std::ostream& log);

  const std::filesystem::path& dir() const { return dir_; }

  // Smallest valid cached table covering (m, n), by area.
  std::optional<AdversaryTable> covering_table(int m, int n);

  // Loads table-<m>x<n>.csv or computes and stores it.
  AdversaryTable table(int max_m, int max_n, bool* hit = nullptr);

  // Value from solve-<m>x<n>.json, if present and valid.
  std::optional<int> cached_exact(int m, int n);

  // Cached value, or solves and stores the strategy dump on success.
  std::optional<int> exact(int m, int n, std::int64_t budget);

  // Writes solve-<m>x<n>.json.
  void store_exact(int m, int n, const std::string& strategy_json);

  ExactValueFn exact_fn();

 private:
  void store(const std::filesystem::path& file, const std::string& text);

  std::filesystem::path dir_;
  std::ostream& log_;
};

// Entry point of the merge-lab tool. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace merge_lab
