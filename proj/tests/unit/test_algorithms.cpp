#include <doctest.h>

#include <random>

#include "merge_lab/algorithms.hpp"
#include "oracles.hpp"

using namespace merge_lab;

namespace {

// Answers from a fixed interleaving and records every query.
class TruthOracle : public Oracle {
 public:
  TruthOracle(int m, int n, const std::vector<bool>& pattern)
      : r_(oracle::ranks(pattern, m, n)) {}

  Outcome compare(int i, int j) override {
    log.push_back({i, j});
    return r_.a[i] < r_.b[j] ? Outcome::Less : Outcome::Greater;
  }

  std::vector<Query> log;

 private:
  oracle::Ranks r_;
};

std::vector<int> tags_of(const std::vector<bool>& pattern) {
  std::vector<int> out;
  int a = 0;
  int b = 0;
  for (bool x : pattern) out.push_back(x ? ++a : -(++b));
  return out;
}

MergeAlgorithm algorithm_for(Selector::Choice c, const Selector& sel) {
  switch (c) {
    case Selector::Choice::Optimal:
      return optimal_player(sel);
    case Selector::Choice::Modified:
      return modified_binary_merge(sel);
    case Selector::Choice::HwangLin:
      return hwang_lin();
    case Selector::Choice::Tape:
      return tape_merge();
  }
  return tape_merge();
}

}  // namespace

TEST_SUITE("algorithms") {
  TEST_CASE("every algorithm merges every interleaving with m + n <= 14") {
    Selector sel;
    std::vector<MergeAlgorithm> algs = {tape_merge(), hwang_lin(), modified_binary_merge(sel),
                                        optimal_player(sel)};
    for (int m = 0; m <= 14; ++m) {
      for (int n = 0; m + n <= 14; ++n) {
        auto pats = oracle::patterns(m, n);
        for (const auto& alg : algs) {
          int failures = 0;
          for (const auto& p : pats) {
            TruthOracle o(m, n, p);
            failures += alg.run(m, n, o) != tags_of(p);
          }
          CAPTURE(alg.name());
          CAPTURE(m);
          CAPTURE(n);
          CHECK(failures == 0);
        }
      }
    }
    MergeAlgorithm bi = binary_insertion();
    for (int n = 0; n <= 13; ++n) {
      for (const auto& p : oracle::patterns(1, n)) {
        TruthOracle o(1, n, p);
        CHECK(bi.run(1, n, o) == tags_of(p));
        CHECK(static_cast<int>(o.log.size()) <= oracle::ceil_lg(n + 1));
      }
    }
  }

  TEST_CASE("tape merge on A entirely below B stops after m comparisons") {
    std::vector<bool> p = {true, true, true, false, false, false, false};
    TruthOracle o(3, 4, p);
    tape_merge().run(3, 4, o);
    CHECK(o.log.size() == 3);
    TruthOracle one(1, 1, {false, true});
    tape_merge().run(1, 1, one);
    CHECK(one.log.size() == 1);
  }

  TEST_CASE("binary insertion needs m = 1") {
    std::vector<bool> p = {true, true, false};
    TruthOracle o(2, 1, p);
    CHECK_THROWS_AS(binary_insertion().run(2, 1, o), std::invalid_argument);
  }

  TEST_CASE("next is a pure function of the transcript") {
    MergeAlgorithm tape = tape_merge();
    Step s0 = tape.next(2, 2, {});
    REQUIRE(std::holds_alternative<Compare>(s0));
    CHECK(std::get<Compare>(s0).query == Query{1, 1});
    CHECK(std::get<Compare>(tape.next(2, 2, {})).query == Query{1, 1});

    Transcript t = {{{1, 1}, Outcome::Less}};
    CHECK(std::get<Compare>(tape.next(2, 2, t)).query == Query{2, 1});
    t.push_back({{2, 1}, Outcome::Greater});
    CHECK(std::get<Compare>(tape.next(2, 2, t)).query == Query{2, 2});
    t.push_back({{2, 2}, Outcome::Less});
    Step done = tape.next(2, 2, t);
    REQUIRE(std::holds_alternative<Done>(done));
    CHECK(std::get<Done>(done).order == MergedOrder{1, -1, 2, -2});

    Transcript wrong = {{{2, 2}, Outcome::Less}};
    CHECK_THROWS_AS(tape.next(2, 2, wrong), AlgorithmError);
    Transcript extra = t;
    extra.push_back({{1, 2}, Outcome::Less});
    CHECK_THROWS_AS(tape.next(2, 2, extra), AlgorithmError);
  }

  TEST_CASE("next replays the run for every algorithm") {
    Selector sel;
    std::mt19937_64 rng(5);
    for (const auto& alg : {tape_merge(), hwang_lin(), modified_binary_merge(sel),
                            optimal_player(sel)}) {
      for (int t = 0; t < 30; ++t) {
        int m = 1 + static_cast<int>(rng() % 5);
        int n = 1 + static_cast<int>(rng() % 8);
        auto pats = oracle::patterns(m, n);
        const auto& p = pats[rng() % pats.size()];
        TruthOracle o(m, n, p);
        MergedOrder order = alg.run(m, n, o);
        auto r = oracle::ranks(p, m, n);
        Transcript tr;
        for (const Query& q : o.log) {
          Step s = alg.next(m, n, tr);
          REQUIRE(std::holds_alternative<Compare>(s));
          CHECK(std::get<Compare>(s).query == q);
          tr.push_back({q, r.a[q.i] < r.b[q.j] ? Outcome::Less : Outcome::Greater});
        }
        Step last = alg.next(m, n, tr);
        REQUIRE(std::holds_alternative<Done>(last));
        CHECK(std::get<Done>(last).order == order);
      }
    }
  }

  TEST_CASE("names") {
    CHECK(algorithm_names() ==
          std::vector<std::string>{"tape", "binary-insertion", "hwang-lin", "modified", "optimal"});
    for (const auto& name : algorithm_names()) CHECK(algorithm_by_name(name).name() == name);
    CHECK_THROWS_AS(algorithm_by_name("quick"), std::invalid_argument);
  }

  TEST_CASE("selector choices") {
    Selector sel;
    CHECK(sel.choose(5, 9) == Selector::Choice::Optimal);
    CHECK(sel.bound(5, 9) == 12);
    CHECK(sel.choose(9, 5) == Selector::Choice::Optimal);
    CHECK(sel.choose(25, 38) == Selector::Choice::Tape);
    CHECK(sel.bound(25, 38) == 62);
    CHECK(sel.choose(3, 12) == Selector::Choice::Optimal);
    CHECK(sel.bound(3, 12) == 10);
    // Outside the solver limit the formula bounds decide.
    CHECK(sel.choose(3, 60) == Selector::Choice::HwangLin);
    CHECK(sel.choose(12, 24) == Selector::Choice::Modified);
    CHECK(sel.bound(12, 24) == 33);
    CHECK(sel.choose(0, 4) == Selector::Choice::Tape);
    CHECK(sel.bound(0, 4) == 0);
    CHECK_FALSE(sel.solver_value(25, 38));
    CHECK(sel.solver_value(4, 4) == 7);
    CHECK(to_string(Selector::Choice::HwangLin) == "hwang-lin");
  }

  TEST_CASE("modified bounds") {
    using S = Selector;
    CHECK(S::modified_bound(8, 15) == 21);   // 6.2, k = 0
    CHECK(S::modified_bound(8, 14) == 20);   // 6.3
    CHECK(S::modified_bound(8, 16) == 22);   // 6.1, k = 0
    CHECK(S::modified_bound(11, 22) == 30);  // 6.4 beats 6.1
    CHECK(S::modified_bound(10, 24) == 30);  // 6.1, k = 2
    CHECK(S::modified_bound(6, 13) == 16);   // 6.2, k = 1
    CHECK_FALSE(S::modified_bound(8, 13));
    CHECK_FALSE(S::modified_bound(3, 6));
    CHECK(S::modified_bound(15, 8) == S::modified_bound(8, 15));
  }

  TEST_CASE("gambit branches cost 1, 3, 4, 3 before delegating") {
    Selector sel;
    MergeAlgorithm mod = modified_binary_merge(sel);
    const int m = 6;
    const int n = 11;
    std::mt19937_64 rng(17);
    auto pats = oracle::patterns(m, n);
    int seen[4] = {0, 0, 0, 0};
    for (int t = 0; t < 400; ++t) {
      const auto& p = pats[rng() % pats.size()];
      auto r = oracle::ranks(p, m, n);
      TruthOracle o(m, n, p);
      REQUIRE(mod.run(m, n, o) == tags_of(p));
      REQUIRE_FALSE(o.log.empty());
      CHECK(o.log[0] == Query{1, 2});

      int branch;
      int cost;
      int da;
      int db;
      if (r.a[1] > r.b[2]) {
        branch = 0, cost = 1, da = 0, db = 2;
      } else if (r.a[2] > r.b[2]) {
        branch = 1, cost = 3, da = 1, db = 2;
      } else if (r.a[2] > r.b[1]) {
        branch = 2, cost = 4, da = 2, db = 1;
      } else {
        branch = 3, cost = 3, da = 2, db = 0;
      }
      ++seen[branch];

      // The rest of the run is the selector's pick on the remaining lists.
      std::vector<bool> rest;
      int a = 0;
      int b = 0;
      for (bool x : p) {
        if (x ? (++a > da) : (++b > db)) rest.push_back(x);
      }
      int pm = m - da;
      int pn = n - db;
      TruthOracle sub(pm, pn, rest);
      algorithm_for(sel.choose(pm, pn), sel).run(pm, pn, sub);
      CAPTURE(branch);
      CHECK(static_cast<int>(o.log.size()) == cost + static_cast<int>(sub.log.size()));
    }
    for (int c : seen) CHECK(c > 0);
  }
}
