#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "merge_lab/adversary.hpp"
#include "oracles.hpp"

using namespace merge_lab;

namespace {

constexpr Constraint kDot = Constraint::None;
constexpr Constraint kBs = Constraint::ALessB;
constexpr Constraint kFs = Constraint::AGreaterB;
constexpr Constraint kAll[] = {kDot, kBs, kFs};

const AdversaryTable& table40() {
  static const AdversaryTable t = compute_tables(40, 40);
  return t;
}

const AdversaryTable& table_big() {
  static const AdversaryTable t = compute_tables(28, 39);
  return t;
}

}  // namespace

TEST_SUITE("adversary") {
  TEST_CASE("accelerated and naive recursions agree for m + n <= 9") {
    AdversaryTable fast = compute_tables(8, 8);
    AdversaryTable slow = compute_tables_naive(8, 8);
    for (Constraint l : kAll) {
      for (Constraint r : kAll) {
        for (int m = 0; m <= 8; ++m) {
          for (int n = 0; m + n <= 9 && n <= 8; ++n) {
            ProblemKey k{m, n, l, r};
            CAPTURE(to_string(k));
            CHECK(fast.raw(k) == slow.raw(k));
          }
        }
      }
    }
  }

  TEST_CASE("thread count does not change the table") {
    CHECK(compute_tables(12, 15, {1}) == compute_tables(12, 15, {4}));
  }

  TEST_CASE("value fixtures from the 4.1 proof lines") {
    const AdversaryTable& t = table_big();
    CHECK(t.value({25, 38, kDot, kDot}) == 62);
    CHECK(t.value({25, 39, kFs, kDot}) == 63);
    CHECK(t.value({26, 38, kBs, kDot}) == 63);
    CHECK(t.value({26, 38, kBs, kFs}) == 62);
    CHECK(t.value({28, 39, kBs, kFs}) == 66);
  }

  TEST_CASE("small values") {
    const AdversaryTable& t = table40();
    CHECK(t.value({1, 1, kDot, kDot}) == 1);
    CHECK(t.value({2, 2, kDot, kDot}) == 3);
    CHECK(deficiency(t, 25, 38) == 0);
    CHECK(deficiency(t, 1, 1) == 0);
    CHECK(deficiency(t, 5, 9) >= 1);
    // Constraints restrict the adversary but do not settle relations: the
    // pair a_1, b_1 under "/" still costs one comparison.
    CHECK(t.value({1, 1, kFs, kDot}) == 1);
    CHECK(t.value({1, 1, kBs, kBs}) == 1);
    CHECK(t.value({2, 1, kBs, kFs}) == 2);
    CHECK(t.value({1, 2, kFs, kBs}) == 2);
  }

  TEST_CASE(".M.(1,n) equals binary insertion") {
    const AdversaryTable& t = table40();
    for (int n = 1; n <= 40; ++n) CHECK(t.value({1, n, kDot, kDot}) == oracle::ceil_lg(n + 1));
  }

  TEST_CASE("stored values are invalid exactly on inconsistent keys and bounded by m+n-1") {
    const AdversaryTable& t = table40();
    for (Constraint l : kAll) {
      for (Constraint r : kAll) {
        for (int m = 0; m <= 40; ++m) {
          for (int n = 0; n <= 40; ++n) {
            ProblemKey k{m, n, l, r};
            if (!is_consistent(k)) {
              CHECK(t.raw(k) == AdversaryTable::kInvalid);
              continue;
            }
            int v = t.value(k);
            CHECK(v >= 0);
            CHECK(v <= std::max(0, m + n - 1));
            CHECK((v == 0) == game_over(k));
          }
        }
      }
    }
  }

  TEST_CASE("symmetry identities") {
    const AdversaryTable& t = table40();
    for (int m = 1; m <= 40; ++m) {
      for (int n = 1; n <= 40; ++n) {
        int a = t.value({m, n, kFs, kDot});
        CHECK(a == t.value({m, n, kDot, kBs}));
        CHECK(a == t.value({n, m, kBs, kDot}));
        CHECK(a == t.value({n, m, kDot, kFs}));
        CHECK(t.value({m, n, kFs, kFs}) == t.value({m, n, kBs, kBs}));
        if (is_consistent({m, n, kFs, kBs})) {
          CHECK(t.value({m, n, kFs, kBs}) == t.value({n, m, kBs, kFs}));
        }
      }
    }
  }

  TEST_CASE("lookup errors") {
    const AdversaryTable& t = table40();
    CHECK_THROWS_AS(t.value({1, 3, kBs, kFs}), InvalidStateError);
    CHECK_THROWS_AS(t.value({41, 3, kDot, kDot}), OutOfBoundsError);
  }

  TEST_CASE("best_first_comparisons") {
    const AdversaryTable& t = table40();
    CHECK(best_first_comparisons(t, {1, 1, kDot, kDot}) == std::vector<Comparison>{{1, 1}});
    auto c13 = best_first_comparisons(t, {1, 3, kDot, kDot});
    CHECK(std::find(c13.begin(), c13.end(), Comparison{1, 2}) != c13.end());
    auto c22 = best_first_comparisons(t, {2, 2, kDot, kDot});
    REQUIRE_FALSE(c22.empty());
    CHECK(std::is_sorted(c22.begin(), c22.end()));
    for (auto c : c22) CHECK(comparison_value(t, {2, 2, kDot, kDot}, c.i, c.j) == 3);
    CHECK_THROWS_AS(best_first_comparisons(t, {0, 3, kDot, kDot}), InvalidStateError);
  }

  TEST_CASE("adversary_reply") {
    const AdversaryTable& t = table40();
    AdversaryReply r = adversary_reply(t, {1, 1, kFs, kDot}, 1, 1);
    CHECK(r.strategy == SplitStrategy{SplitStrategy::Kind::Simple, 0, 1});
    CHECK(r.value == 1);
    CHECK(adversary_reply(t, {2, 2, kDot, kDot}, 1, 2).value >= 3);
    // The reply's value is the sum over the subproblems it names.
    for (int m = 1; m <= 6; ++m) {
      for (int n = 1; n <= 6; ++n) {
        ProblemKey k{m, n, kDot, kDot};
        for (int i = 1; i <= m; ++i) {
          for (int j = 1; j <= n; ++j) {
            AdversaryReply rep = adversary_reply(t, k, i, j);
            auto [lo, hi] = split_subproblems(k, rep.strategy);
            CHECK(rep.value == 1 + t.value(lo) + t.value(hi));
            CHECK(rep.value >= t.value(k));
          }
        }
      }
    }
  }

  TEST_CASE("CSV round trip and validation") {
    AdversaryTable t = compute_tables(10, 10);
    std::string csv = export_csv_string(t);
    CHECK(import_csv_string(csv) == t);
    CHECK(csv.rfind("merge-lab-table,v1,max_m=10,max_n=10\n", 0) == 0);

    std::string v2 = csv;
    v2.replace(v2.find(",v1,"), 4, ",v2,");
    CHECK_THROWS_AS(import_csv_string(v2), TableFormatError);

    std::string tampered = csv;
    auto pos = tampered.find("dot,dot,2,2,3");
    REQUIRE(pos != std::string::npos);
    tampered[pos + 12] = '4';
    CHECK_THROWS_AS(import_csv_string(tampered), TableFormatError);

    auto dir = std::filesystem::temp_directory_path() / "merge-lab-csv-test";
    std::filesystem::create_directories(dir);
    export_csv(t, dir / "t.csv");
    CHECK(import_csv(dir / "t.csv") == t);
    CHECK_THROWS_AS(import_csv(dir / "missing.csv"), IoError);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("an export large enough holds the 25x38 row") {
    std::string csv = export_csv_string(table_big());
    CHECK(csv.find("\ndot,dot,25,38,62\n") != std::string::npos);
  }

  TEST_CASE("checksum is FNV-1a 64") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  }
}
