#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "merge_lab/adversary.hpp"

namespace merge_lab {

// Finding: a report-only suite observed a violation. It never fails a run.
enum class SuiteStatus { Pass, Fail, Skipped, Finding };

std::string to_string(SuiteStatus s);

struct SuiteReport {
  std::string id;
  SuiteStatus status = SuiteStatus::Skipped;
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  // At most 10, smallest first. Tuples start with (m, n).
  std::vector<std::vector<int>> counterexamples;
  // Listed exceptions that do violate the raw inequality.
  std::vector<std::vector<int>> exceptions_observed;
  std::vector<std::string> trusted;
  std::string note;
};

class InsufficientTableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingBaseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Table bounds the table-scale suites read for a given --max-size:
// max_size x floor(38 max_size / 25).
std::pair<int, int> verify_table_bounds(int max_size);

// Exact M(m, n) on demand, or nullopt when unavailable.
using ExactValueFn = std::function<std::optional<int>(int m, int n)>;

// Plain solver wrapper with the default budget.
ExactValueFn direct_exact_values();

struct AuditLimits {
  int max_m = 60;
  int max_k = 30;
};

// Base case of an upper-bound induction.
struct BaseFact {
  int value = 0;
  bool trusted = false;
  std::string source;
};
using BaseTable = std::map<std::pair<int, int>, BaseFact>;

// Pairs with C(m+n, m) at most this are solved exactly for audit bases; larger
// ones fall back to the Hwang-Lin formula.
inline constexpr std::uint64_t kBaseSolveLimit = 70000;

// Rows m = 3 (Theorem 6.1) and m = 5 (Theorem 6.2) computed; (7,12) and
// (10,20) taken from the trusted registry.
BaseTable default_bases(const AuditLimits& limits, const ExactValueFn& exact);

// Checks that the bound functions of Theorems 6.1-6.4 close under the
// four-branch recurrence with the continuation bounds their proofs use.
// Returns reports thm-6.1 .. thm-6.4. Pure integer arithmetic.
std::vector<SuiteReport> audit_upper_recurrences(const AuditLimits& limits,
                                                 const BaseTable& bases);

// Bracket on alpha(m) = max{n >= m : M(m,n) = m+n-1}.
struct AlphaBracket {
  int lo = 0;
  int hi = 0;
};
AlphaBracket alpha_bracket(int m, const AdversaryTable& table, const ExactValueFn& exact);

struct VerifyContext {
  const AdversaryTable* table = nullptr;
  ExactValueFn exact;
  int max_size = 40;
  // Exact values are requested for m, n <= solver_max.
  int solver_max = 8;
  AuditLimits audit;
};

// Suite ids in report order.
const std::vector<std::string>& suite_ids();

// Throws std::invalid_argument for unknown ids and InsufficientTableError when
// the table does not cover the suite's universe.
std::vector<SuiteReport> run_suite(const std::string& id, const VerifyContext& ctx);

// "all" or a single id.
std::vector<SuiteReport> run_suites(const std::string& selection, const VerifyContext& ctx);

// {version: 1, suites: [...]}, pretty-printed, newline terminated.
std::string report_json(const std::vector<SuiteReport>& reports);

bool any_failed(const std::vector<SuiteReport>& reports);

}  // namespace merge_lab
