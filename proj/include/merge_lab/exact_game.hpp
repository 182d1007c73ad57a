#pragma once

#include <cstdint>
#include <utility>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "merge_lab/core.hpp"

namespace merge_lab {

// Everything a comparison transcript can say about two sorted chains.
// L[i] is the largest j with b_j < a_{i+1} known (0 if none), H[i] the smallest
// j with a_{i+1} < b_j known (n + 1 if none). Indices into L and H are 0-based;
// comparison indices i, j are 1-based.
struct KnowledgeState {
  int m = 0;
  int n = 0;
  std::vector<int> L;
  std::vector<int> H;

  friend bool operator==(const KnowledgeState&, const KnowledgeState&) = default;
};

enum class Outcome : std::uint8_t { Less, Greater };

class InconsistentOutcomeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

KnowledgeState initial_state(int m, int n);

bool is_valid(const KnowledgeState& s);
bool is_terminal(const KnowledgeState& s);

// The outcome of a_i : b_j already implied by `s`, if any.
std::optional<Outcome> forced_outcome(const KnowledgeState& s, int i, int j);

// Transitive closure of one comparison between the chains.
KnowledgeState apply_outcome(const KnowledgeState& s, int i, int j, Outcome outcome);

// Number of interleavings consistent with `s`.
ExactInt completions(const KnowledgeState& s);

// Mirror image: a_i <-> a_{m+1-i}, b_j <-> b_{n+1-j}, order reversed.
KnowledgeState reverse(const KnowledgeState& s);

// Lexicographic minimum of `s` and its reversal.
KnowledgeState canonicalize(const KnowledgeState& s);

// For a terminal state: the merged order as tags, A elements 1..m and
// B elements as -1..-n (a_i -> i, b_j -> -j).
std::vector<int> merged_order(const KnowledgeState& s);

struct Move {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const Move&, const Move&) = default;
};

class NotSolvedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr std::int64_t kDefaultStateBudget = 50'000'000;

struct SolveOutcome {
  std::optional<int> value;  // empty when the budget ran out
  std::int64_t states_expanded = 0;
  bool budget_hit = false;
};

// Exact minimax solver for the unrestricted merge game. States are split into
// independent components, normalized, and memoized in reversal-canonical form.
// The search is a sequence of null-window tests "can the algorithm finish within
// d comparisons", bounded below by the information bound and above by
// independent binary insertion of every a_i.
class ExactSolver {
 public:
  ExactSolver(int m, int n, std::int64_t state_budget = kDefaultStateBudget);
  ~ExactSolver();
  ExactSolver(ExactSolver&&) noexcept;
  ExactSolver& operator=(ExactSolver&&) noexcept;

  int m() const;
  int n() const;

  SolveOutcome solve();
  bool solved() const;

  // Game value of any reachable state; requires a completed solve() and may
  // extend the memo for states off the principal lines.
  int value(const KnowledgeState& s);

  // A comparison achieving the value of `s`; among optimal meaningful moves the
  // lexicographically smallest (i, j).
  Move optimal_move(const KnowledgeState& s);

  // Every non-terminal state reachable when the minimizing player follows
  // optimal_move, in depth-first order (less branch first), with its move.
  std::vector<std::pair<KnowledgeState, Move>> strategy_closure();

  // {m, n, value, moves: [{L, H, move}]} over strategy_closure().
  std::string strategy_json();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Convenience wrapper.
SolveOutcome solve(int m, int n, std::int64_t state_budget = kDefaultStateBudget);

// Values taken from the literature rather than recomputed. Every use is
// reported as trusted.
struct TrustedFact {
  std::string name;       // e.g. "M(7,12)"
  std::string relation;   // "=" or "<="
  int value = 0;
  std::string source;
};
const std::vector<TrustedFact>& trusted_facts();
std::optional<TrustedFact> trusted_fact(int m, int n);

}  // namespace merge_lab
