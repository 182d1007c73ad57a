#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "merge_lab/algorithms.hpp"

namespace merge_lab {

class MeasureBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kMeasureLeafBudget = 100'000'000;

struct MeasureResult {
  int worst_case = 0;
  ExactInt leaves = 0;
  Transcript worst_transcript;  // first worst leaf in less-first order
  bool correct = true;
  std::string failure;  // first failing path, empty when correct
};

// Exhaustive exploration of the algorithm's decision tree. Comparisons whose
// outcome is already implied are answered and still charged; every other
// comparison branches on both outcomes. Parallel over subtrees with a
// deterministic reduction; the result does not depend on the thread count.
MeasureResult measure(const MergeAlgorithm& alg, int m, int n);

// Single-threaded reference implementation of measure().
MeasureResult measure_serial(const MergeAlgorithm& alg, int m, int n);

// An interleaving as tags (a_i -> i, b_j -> -j), smallest first.
using Interleaving = std::vector<int>;

struct ReplayResult {
  int comparisons = 0;
  bool ok = false;
};

// Runs the algorithm against a fixed ground truth.
ReplayResult replay(const MergeAlgorithm& alg, int m, int n, const Interleaving& truth);

struct FuzzReport {
  int trials = 0;
  int max_comparisons = 0;
  int failures = 0;
  std::vector<Interleaving> failing;  // at most 10, in trial order
};

// Replays `trials` uniformly random interleavings drawn with mt19937_64(seed).
FuzzReport fuzz(const MergeAlgorithm& alg, int m, int n, int trials, std::uint64_t seed);

// Uniform random interleaving; deterministic for a given generator state.
Interleaving random_interleaving(int m, int n, std::uint64_t seed);

// All C(m+n, m) interleavings in lexicographic order of the A/B pattern
// (A before B).
std::vector<Interleaving> all_interleavings(int m, int n);

}  // namespace merge_lab
