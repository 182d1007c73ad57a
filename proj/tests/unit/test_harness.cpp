#include <doctest.h>

#include <omp.h>

#include "merge_lab/harness.hpp"
#include "oracles.hpp"

using namespace merge_lab;

namespace {

// Tape merge that asks its first comparison twice.
MergeAlgorithm stuttering_tape() {
  return MergeAlgorithm("stutter", [](int m, int n, Oracle& o) {
    if (m > 0 && n > 0) o.compare(1, 1);
    return tape_merge().run(m, n, o);
  });
}

// Guesses without looking.
MergeAlgorithm guesser() {
  return MergeAlgorithm("guess", [](int m, int n, Oracle&) {
    MergedOrder out;
    for (int i = 1; i <= m; ++i) out.push_back(i);
    for (int j = 1; j <= n; ++j) out.push_back(-j);
    return out;
  });
}

MergeAlgorithm spinner() {
  return MergeAlgorithm("spin", [](int, int, Oracle& o) -> MergedOrder {
    for (;;) o.compare(1, 1);
  });
}

struct Threads {
  explicit Threads(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("measure examples") {
    CHECK(measure(tape_merge(), 4, 4).worst_case == 7);
    CHECK(measure(hwang_lin(), 3, 12).worst_case == 11);
    CHECK(measure(hwang_lin(), 5, 9).worst_case == 13);
    MeasureResult one = measure(tape_merge(), 1, 1);
    CHECK(one.worst_case == 1);
    CHECK(one.leaves == 2);
    CHECK(one.correct);
    CHECK(measure(binary_insertion(), 1, 7).worst_case == 3);
    CHECK(measure(binary_insertion(), 1, 10).worst_case == 4);
    CHECK(measure(binary_insertion(), 1, 1).worst_case == 1);
    CHECK(measure(optimal_player(), 4, 4).worst_case == 7);
    MeasureResult empty = measure(tape_merge(), 0, 5);
    CHECK(empty.worst_case == 0);
    CHECK(empty.leaves == 1);
  }

  TEST_CASE("leaves of a correct algorithm count the interleavings") {
    for (int m = 1; m <= 5; ++m) {
      for (int n = 1; n <= 6; ++n) {
        MeasureResult r = measure(hwang_lin(), m, n);
        CHECK(r.correct);
        CHECK(r.leaves == oracle::pascal(m + n, m));
      }
    }
  }

  TEST_CASE("worst transcript has the worst length") {
    MeasureResult r = measure(tape_merge(), 3, 3);
    CHECK(static_cast<int>(r.worst_transcript.size()) == r.worst_case);
    CHECK(r.worst_transcript.front().query == Query{1, 1});
  }

  TEST_CASE("tape merge is m + n - 1 up to 10") {
    for (int m = 1; m <= 10; ++m) {
      for (int n = 1; n <= 10; ++n) CHECK(measure(tape_merge(), m, n).worst_case == m + n - 1);
    }
  }

  TEST_CASE("parallel and serial measurement agree") {
    Threads guard(4);
    Selector sel;
    for (const auto& alg : {tape_merge(), hwang_lin(), modified_binary_merge(sel)}) {
      for (auto [m, n] : {std::pair{4, 7}, std::pair{6, 9}, std::pair{5, 12}}) {
        MeasureResult p = measure(alg, m, n);
        MeasureResult s = measure_serial(alg, m, n);
        CHECK(p.worst_case == s.worst_case);
        CHECK(p.leaves == s.leaves);
        CHECK(p.worst_transcript == s.worst_transcript);
        CHECK(p.correct == s.correct);
      }
    }
    MeasureResult bad = measure(guesser(), 4, 6);
    CHECK(bad.failure == measure_serial(guesser(), 4, 6).failure);
  }

  TEST_CASE("repeated comparisons are charged") {
    MeasureResult r = measure(stuttering_tape(), 3, 4);
    CHECK(r.correct);
    CHECK(r.worst_case == 7);
  }

  TEST_CASE("wrong and non-terminating algorithms are reported") {
    MeasureResult g = measure(guesser(), 2, 2);
    CHECK_FALSE(g.correct);
    CHECK(g.failure.find("finished before the order was determined") != std::string::npos);
    MeasureResult s = measure(spinner(), 2, 2);
    CHECK_FALSE(s.correct);
    CHECK(s.failure.find("no result") != std::string::npos);
  }

  TEST_CASE("preconditions propagate and the budget is enforced") {
    CHECK_THROWS_AS(measure(binary_insertion(), 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(measure(tape_merge(), 20, 20), MeasureBudgetError);
  }

  TEST_CASE("replay") {
    ReplayResult r = replay(tape_merge(), 3, 4, {1, 2, 3, -1, -2, -3, -4});
    CHECK(r.comparisons == 3);
    CHECK(r.ok);
    for (const auto& t : all_interleavings(1, 7)) {
      ReplayResult b = replay(binary_insertion(), 1, 7, t);
      CHECK(b.ok);
      CHECK(b.comparisons <= 3);
    }
    CHECK_FALSE(replay(guesser(), 1, 1, {-1, 1}).ok);
    CHECK_THROWS_AS(replay(tape_merge(), 2, 1, {2, 1, -1}), std::invalid_argument);
  }

  TEST_CASE("optimal play on every (7,12) interleaving") {
    MergeAlgorithm opt = optimal_player();
    auto all = all_interleavings(7, 12);
    CHECK(all.size() == 50388);
    int worst = 0;
    int failures = 0;
    for (const auto& t : all) {
      ReplayResult r = replay(opt, 7, 12, t);
      worst = std::max(worst, r.comparisons);
      failures += !r.ok;
    }
    CHECK(failures == 0);
    CHECK(worst == 17);
  }

  TEST_CASE("all_interleavings enumerates in pattern order") {
    auto all = all_interleavings(2, 2);
    REQUIRE(all.size() == 6);
    CHECK(all.front() == Interleaving{1, 2, -1, -2});
    CHECK(all.back() == Interleaving{-1, -2, 1, 2});
  }

  TEST_CASE("fuzz") {
    FuzzReport t = fuzz(tape_merge(), 10, 10, 1000, 42);
    CHECK(t.max_comparisons <= 19);
    CHECK(t.failures == 0);
    FuzzReport again = fuzz(tape_merge(), 10, 10, 1000, 42);
    CHECK(again.max_comparisons == t.max_comparisons);
    CHECK(random_interleaving(10, 10, 9) == random_interleaving(10, 10, 9));

    FuzzReport mod = fuzz(modified_binary_merge(), 8, 15, 1000, 42);
    CHECK(mod.max_comparisons <= 21);
    CHECK(mod.failures == 0);

    FuzzReport hl = fuzz(hwang_lin(), 10, 20, 1000, 42);
    CHECK(hl.max_comparisons <= 29);
    CHECK(hl.failures == 0);

    FuzzReport zero = fuzz(tape_merge(), 0, 6, 50, 1);
    CHECK(zero.max_comparisons == 0);
    CHECK(zero.failures == 0);

    FuzzReport bad = fuzz(guesser(), 3, 3, 100, 3);
    CHECK(bad.failures > 0);
    CHECK(bad.failing.size() == static_cast<std::size_t>(std::min(bad.failures, 10)));
  }
}
