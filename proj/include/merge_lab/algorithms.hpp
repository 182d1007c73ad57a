#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "merge_lab/exact_game.hpp"

namespace merge_lab {

// Indices always refer to the original lists.
struct Query {
  int i = 0;  // 1..m
  int j = 0;  // 1..n
  friend auto operator<=>(const Query&, const Query&) = default;
};

struct TranscriptEntry {
  Query query;
  Outcome outcome = Outcome::Less;
  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};
using Transcript = std::vector<TranscriptEntry>;

// Merged order as tags: a_i -> i, b_j -> -j.
using MergedOrder = std::vector<int>;

struct Compare {
  Query query;
};
struct Done {
  MergedOrder order;
};
using Step = std::variant<Compare, Done>;

// Answers comparisons for a running algorithm.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual Outcome compare(int i, int j) = 0;
};

class AlgorithmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A deterministic merge algorithm. `run` drives it against an oracle; `next`
// is the equivalent pure decision procedure obtained by replaying a transcript.
class MergeAlgorithm {
 public:
  using Runner = std::function<MergedOrder(int m, int n, Oracle& oracle)>;

  MergeAlgorithm(std::string name, Runner runner);

  const std::string& name() const { return name_; }
  MergedOrder run(int m, int n, Oracle& oracle) const { return runner_(m, n, oracle); }

  // Throws AlgorithmError if the transcript is not one this algorithm produces.
  Step next(int m, int n, const Transcript& transcript) const;

 private:
  std::string name_;
  Runner runner_;
};

// Tokens: tape, binary-insertion, hwang-lin, modified, optimal.
MergeAlgorithm tape_merge();
MergeAlgorithm binary_insertion();
MergeAlgorithm hwang_lin();

// Chooses continuations for the modified dispatcher from proven worst-case
// bounds. Sizes are normalized so that m <= n.
class Selector {
 public:
  enum class Choice { Optimal, Modified, HwangLin, Tape };

  // Pairs with C(m+n, m) at most this are solved exactly and played optimally.
  static constexpr std::uint64_t kSolverLimit = 60000;

  // Copies share one cache; all members are safe to call concurrently.
  Selector();

  Choice choose(int m, int n) const;
  // Proven bound of the candidate choose() picks.
  int bound(int m, int n) const;

  // Proven bound of the dispatcher under Theorems 6.1-6.4, if one applies.
  static std::optional<int> modified_bound(int m, int n);

  // Solver value (solving on demand); nullopt when (m, n) is too large.
  std::optional<int> solver_value(int m, int n) const;

  // Optimal strategy for (m, n): knowledge state (L, H) -> move over every
  // state the strategy can reach. Solves on demand regardless of kSolverLimit;
  // throws NotSolvedError if the state budget runs out.
  using StrategyMap = std::map<std::pair<std::vector<int>, std::vector<int>>, Move>;
  std::shared_ptr<const StrategyMap> strategy(int m, int n) const;

 private:
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

std::string to_string(Selector::Choice c);

// Modified Binary Merge: the four-branch gambit on a_1, a_2, b_1, b_2 followed
// by the selector's choice on what remains.
MergeAlgorithm modified_binary_merge(Selector selector = Selector());

// Plays the exact solver's optimal moves. Solves (m, n) on first use.
MergeAlgorithm optimal_player(Selector selector = Selector());

// Looks up an algorithm by CLI token; throws std::invalid_argument.
MergeAlgorithm algorithm_by_name(const std::string& name);
const std::vector<std::string>& algorithm_names();

}  // namespace merge_lab
