#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "merge_lab/core.hpp"

namespace merge_lab {

// Restricted-adversary game values for all nine (left, right) constraint pairs.
//
// A comparison a_i : b_j is answered by a split of both lists into a lower and
// an upper part, possibly sharing one element, that separates a_i from b_j. The
// game continues independently on the two parts, each carrying whatever
// boundary constraint the split implies. A constraint only restricts the
// adversary's answers: the relation it names still has to be established by a
// comparison, so a part is finished only when one of its lists is empty. For
// the same reason a shared element may not be one of the two compared
// elements, since the pair would then sit inside a single part.

struct SplitStrategy {
  enum class Kind : std::uint8_t { Simple = 0, SharedA = 1, SharedB = 2 };

  Kind kind = Kind::Simple;
  // Simple: cut after a_x and b_y (0 <= x <= m, 0 <= y <= n).
  // SharedA: a_x belongs to both parts, lower B part is b_1..b_y.
  // SharedB: b_y belongs to both parts, lower A part is a_1..a_x.
  int x = 0;
  int y = 0;

  friend bool operator==(const SplitStrategy&, const SplitStrategy&) = default;
};

std::string to_string(const SplitStrategy& s);

// True when the restricted game at `key` is over (one list is empty).
inline bool game_over(const ProblemKey& key) { return key.m == 0 || key.n == 0; }

// The two subproblems a reply induces for the key it answers.
std::pair<ProblemKey, ProblemKey> split_subproblems(const ProblemKey& key,
                                                    const SplitStrategy& s);

class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A key that is well formed but contradictory.
class InvalidStateError : public TableError {
 public:
  using TableError::TableError;
};

class OutOfBoundsError : public TableError {
 public:
  using TableError::TableError;
};

// Raised when a consistent non-terminal key has a comparison with no legal
// adversary reply. Not expected to happen; surfaced instead of skipped.
class NoValidReplyError : public TableError {
 public:
  using TableError::TableError;
};

class AdversaryTable {
 public:
  static constexpr std::uint16_t kInvalid = 0xFFFF;

  AdversaryTable() = default;
  AdversaryTable(int max_m, int max_n);

  int max_m() const { return max_m_; }
  int max_n() const { return max_n_; }
  bool covers(int m, int n) const {
    return m >= 0 && n >= 0 && m <= max_m_ && n <= max_n_;
  }

  // Stored value or kInvalid; throws OutOfBoundsError.
  std::uint16_t raw(const ProblemKey& key) const;
  void set_raw(const ProblemKey& key, std::uint16_t value);

  // Throws InvalidStateError for inconsistent keys, OutOfBoundsError otherwise.
  int value(const ProblemKey& key) const;

  friend bool operator==(const AdversaryTable&, const AdversaryTable&) = default;

 private:
  std::size_t index(const ProblemKey& key) const;

  int max_m_ = 0;
  int max_n_ = 0;
  std::vector<std::uint16_t> values_;
};

struct ComputeOptions {
  // 0 keeps the OpenMP default.
  int threads = 0;
};

// Accelerated table construction: per key, the inner maximum over each reply
// family comes from 2-D running maxima, so a key costs O(m n). Keys of equal
// total size m + n are evaluated in parallel.
AdversaryTable compute_tables(int max_m, int max_n, const ComputeOptions& options = {});

// Serial reference: enumerates every reply of every comparison and decides
// legality element by element, with consistency decided by brute-force
// enumeration of interleavings. Intended for small bounds only.
AdversaryTable compute_tables_naive(int max_m, int max_n);

// m + n - 1 - .M.(m, n)
int deficiency(const AdversaryTable& table, int m, int n);

struct Comparison {
  int i = 0;  // 1-based index into A
  int j = 0;  // 1-based index into B
  friend auto operator<=>(const Comparison&, const Comparison&) = default;
};

// Every first comparison achieving the game value, lexicographically sorted.
std::vector<Comparison> best_first_comparisons(const AdversaryTable& table,
                                               const ProblemKey& key);

struct AdversaryReply {
  SplitStrategy strategy;
  int value = 0;  // 1 + V(sub1) + V(sub2)
};

// Best legal reply to a_i : b_j. Ties prefer Simple, then SharedA, then
// SharedB, then the lexicographically smallest (x, y).
AdversaryReply adversary_reply(const AdversaryTable& table, const ProblemKey& key, int i,
                               int j);

// Value of comparison a_i : b_j against the best reply.
int comparison_value(const AdversaryTable& table, const ProblemKey& key, int i, int j);

// Enumerates the legal replies to a_i : b_j in tie-break order. Legality is
// decided from element membership; consistency of the subproblems is decided
// by `consistent`.
template <typename Consistent, typename Visit>
void for_each_legal_reply(const ProblemKey& key, int i, int j, Consistent&& consistent,
                          Visit&& visit);

// CSV persistence, format version 1.
class TableFormatError : public TableError {
 public:
  using TableError::TableError;
};

void export_csv(const AdversaryTable& table, const std::filesystem::path& path);
std::string export_csv_string(const AdversaryTable& table);
AdversaryTable import_csv(const std::filesystem::path& path);
AdversaryTable import_csv_string(const std::string& text);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace merge_lab

#include "merge_lab/detail/replies.hpp"
