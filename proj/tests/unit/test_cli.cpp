#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "merge_lab/cli.hpp"

using namespace merge_lab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "merge-lab");
  std::ostringstream out;
  std::ostringstream err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Points MERGE_LAB_CACHE at a fresh directory for the lifetime of the object.
struct TempCache {
  TempCache() {
    static int counter = 0;
    dir = fs::temp_directory_path() /
          ("merge-lab-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(dir);
    fs::create_directories(dir);
    ::setenv("MERGE_LAB_CACHE", dir.c_str(), 1);
  }
  ~TempCache() {
    ::unsetenv("MERGE_LAB_CACHE");
    fs::remove_all(dir);
  }
  fs::path dir;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("cache directory follows the environment") {
    TempCache c;
    CHECK(default_cache_dir() == c.dir);
  }

  TEST_CASE("tables then value") {
    TempCache c;
    Run t = run({"tables", "--max-m", "26", "--max-n", "38"});
    CHECK(t.code == kExitOk);
    CHECK(t.out.rfind("table 26x38 digest ", 0) == 0);
    CHECK(fs::exists(c.dir / "table-26x38.csv"));

    CHECK(run({"value", "--left", "dot", "--right", "dot", "-m", "25", "-n", "38"}).out == "62\n");
    CHECK(run({"value", "--left", "dot", "--right", "dot", "-m", "1", "-n", "1"}).out == "1\n");
    CHECK(run({"value", "--left", "bs", "--right", "fs", "-m", "1", "-n", "3"}).out ==
          "invalid\n");
    // The restricted adversary still charges the a_2 : b_1 comparison here.
    CHECK(run({"value", "--left", "bs", "--right", "fs", "-m", "2", "-n", "1"}).out == "2\n");

    Run miss = run({"value", "-m", "30", "-n", "3"});
    CHECK(miss.code == kExitCoverage);
    CHECK(miss.err.find("merge-lab tables") != std::string::npos);
  }

  TEST_CASE("rebuilding is a cache hit with identical output") {
    TempCache c;
    Run first = run({"tables", "--max-m", "6", "--max-n", "6"});
    Run second = run({"tables", "--max-m", "6", "--max-n", "6"});
    CHECK(second.code == kExitOk);
    CHECK(second.err.find("cache hit") != std::string::npos);
    CHECK(first.out == second.out);
    Run naive = run({"tables", "--max-m", "6", "--max-n", "6", "--naive"});
    CHECK(naive.out == first.out);
  }

  TEST_CASE("corrupt cache files are ignored") {
    TempCache c;
    Run good = run({"tables", "--max-m", "5", "--max-n", "5"});
    fs::path file = c.dir / "table-5x5.csv";
    std::string text = slurp(file);
    text[text.find("dot,dot,2,2,3") + 12] = '9';
    std::ofstream(file, std::ios::binary | std::ios::trunc) << text;
    Run again = run({"tables", "--max-m", "5", "--max-n", "5"});
    CHECK(again.code == kExitOk);
    CHECK(again.err.find("warning: ignoring") != std::string::npos);
    CHECK(again.out == good.out);
    CHECK(run({"value", "-m", "2", "-n", "2"}).out == "3\n");
  }

  TEST_CASE("exact") {
    TempCache c;
    CHECK(run({"exact", "-m", "1", "-n", "15"}).out == "4\n");
    CHECK(run({"exact", "-m", "5", "-n", "5"}).out == "9\n");
    fs::path dump = c.dir / "dump.json";
    Run d = run({"exact", "-m", "3", "-n", "4", "--dump", dump.string()});
    CHECK(d.out == "6\n");
    auto doc = nlohmann::json::parse(slurp(dump));
    CHECK(doc["value"] == 6);
    CHECK(fs::exists(c.dir / "solve-3x4.json"));
    Run cached = run({"exact", "-m", "3", "-n", "4"});
    CHECK(cached.out == "6\n");
    CHECK(cached.err.find("cache hit") != std::string::npos);

    Run cut = run({"exact", "-m", "6", "-n", "11", "--budget", "10"});
    CHECK(cut.code == kExitCoverage);
    CHECK(cut.out == "UNKNOWN(budget)\n");
    CHECK(run({"exact", "-m", "40", "-n", "40"}).code == kExitCoverage);
  }

  TEST_CASE("exact 7x12") {
    TempCache c;
    Run r = run({"exact", "-m", "7", "-n", "12"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "17\n");
  }

  TEST_CASE("measure") {
    TempCache c;
    Run r = run({"measure", "--alg", "tape", "-m", "6", "-n", "6"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("worst_case: 11\n") != std::string::npos);
    CHECK(r.out.find("leaves: 924\n") != std::string::npos);
    CHECK(r.out.find("correct: true\n") != std::string::npos);
    CHECK(run({"measure", "--alg", "tape", "-m", "6", "-n", "6"}).out == r.out);
    CHECK(run({"measure", "--alg", "binary-insertion", "-m", "2", "-n", "3"}).code == kExitUsage);
    CHECK(run({"measure", "--alg", "tape", "-m", "20", "-n", "20"}).code == kExitCoverage);
    CHECK(run({"measure", "--alg", "bogus", "-m", "2", "-n", "3"}).code == kExitUsage);
  }

  TEST_CASE("bounds") {
    TempCache c;
    Run r = run({"bounds", "-m", "10", "-n", "20"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("info_bound: ") != std::string::npos);
    CHECK(r.out.find("adversary_lower: not cached\n") != std::string::npos);
    CHECK(r.out.find("upper: 27 (theorem 1.3(c))\n") != std::string::npos);
    CHECK(r.out.find("exact: <= 27") != std::string::npos);
    Run small = run({"bounds", "-m", "3", "-n", "3"});
    CHECK(small.out.find("upper: 5 (tape merge)\n") != std::string::npos);
  }

  TEST_CASE("verify") {
    TempCache c;
    fs::path report = c.dir / "report.json";
    Run r = run({"verify", "--suite", "thm-1.1", "--max-size", "12", "--report", report.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("thm-1.1 pass checked=", 0) == 0);
    auto doc = nlohmann::json::parse(slurp(report));
    CHECK(doc["suites"][0]["id"] == "thm-1.1");
    CHECK(run({"verify", "--suite", "nope"}).code == kExitUsage);
  }

  TEST_CASE("usage errors") {
    TempCache c;
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"value", "--left", "up", "-m", "1", "-n", "1"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
  }

  TEST_CASE("unwritable report is an I/O error") {
    TempCache c;
    Run r = run({"verify", "--suite", "sym", "--max-size", "4", "--report",
                 (c.dir / "missing" / "dir" / "r.json").string()});
    CHECK(r.code == kExitIo);
  }
}
