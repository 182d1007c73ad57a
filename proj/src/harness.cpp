#include "merge_lab/harness.hpp"

#include <algorithm>
#include <exception>
#include <random>

#include <omp.h>

namespace merge_lab {

namespace {

struct DepthExceeded {};

// Answers comparisons along one root-to-leaf path. Unforced outcomes come
// from `path` (0 = less); past its end the oracle answers less and extends it.
class PathOracle : public Oracle {
 public:
  PathOracle(int m, int n, std::vector<std::uint8_t>& path)
      : m_(m), n_(n), L_(m + 2, 0), H_(m + 2, n + 1), path_(path), guard_(m * n + m + n + 1) {}

  Outcome compare(int i, int j) override {
    if (i < 1 || i > m_ || j < 1 || j > n_) {
      throw AlgorithmError("comparison a" + std::to_string(i) + ":b" + std::to_string(j) +
                           " out of range");
    }
    if (static_cast<int>(transcript_.size()) >= guard_) throw DepthExceeded{};
    Outcome out;
    if (j <= L_[i]) {
      out = Outcome::Greater;
    } else if (j >= H_[i]) {
      out = Outcome::Less;
    } else {
      if (used_ == path_.size()) path_.push_back(0);
      out = path_[used_++] ? Outcome::Greater : Outcome::Less;
      if (out == Outcome::Less) {
        for (int k = i; k >= 1 && H_[k] > j; --k) H_[k] = j;
      } else {
        for (int k = i; k <= m_ && L_[k] < j; ++k) L_[k] = j;
      }
    }
    transcript_.push_back({{i, j}, out});
    return out;
  }

  bool terminal() const {
    for (int i = 1; i <= m_; ++i) {
      if (H_[i] != L_[i] + 1) return false;
    }
    return true;
  }

  MergedOrder order() const {
    MergedOrder out;
    int b = 1;
    for (int i = 1; i <= m_; ++i) {
      for (; b <= L_[i]; ++b) out.push_back(-b);
      out.push_back(i);
    }
    for (; b <= n_; ++b) out.push_back(-b);
    return out;
  }

  std::size_t used() const { return used_; }
  const Transcript& transcript() const { return transcript_; }

 private:
  int m_;
  int n_;
  std::vector<int> L_;
  std::vector<int> H_;
  std::vector<std::uint8_t>& path_;
  std::size_t used_ = 0;
  int guard_;
  Transcript transcript_;
};

std::string describe(const Transcript& t) {
  std::string s;
  for (const auto& e : t) {
    if (!s.empty()) s += ' ';
    s += 'a' + std::to_string(e.query.i) + (e.outcome == Outcome::Less ? '<' : '>') + 'b' +
         std::to_string(e.query.j);
  }
  return s.empty() ? "(empty)" : s;
}

struct Partial {
  int worst = -1;
  std::uint64_t leaves = 0;
  Transcript worst_transcript;
  bool correct = true;
  std::string failure;
  std::exception_ptr error;
};

void fail(Partial& p, const Transcript& t, const std::string& why) {
  if (p.correct) p.failure = describe(t) + ": " + why;
  p.correct = false;
}

// Visits every leaf whose unforced outcomes start with `prefix`. A leaf that
// ends before the prefix is consumed belongs to the prefix that is all zero
// past its end, so each leaf is counted exactly once across prefixes.
Partial explore(const MergeAlgorithm& alg, int m, int n, std::vector<std::uint8_t> prefix) {
  const std::size_t fixed = prefix.size();
  std::vector<std::uint8_t> path = std::move(prefix);
  Partial p;
  for (;;) {
    PathOracle oracle(m, n, path);
    MergedOrder order;
    std::string why;
    try {
      order = alg.run(m, n, oracle);
    } catch (const DepthExceeded&) {
      why = "no result after " + std::to_string(oracle.transcript().size()) + " comparisons";
    } catch (const AlgorithmError& e) {
      why = e.what();
    }
    const std::size_t used = oracle.used();
    if (used < fixed) {
      bool owner = std::all_of(path.begin() + static_cast<std::ptrdiff_t>(used),
                               path.begin() + static_cast<std::ptrdiff_t>(fixed),
                               [](std::uint8_t b) { return b == 0; });
      if (!owner) return p;
    }
    ++p.leaves;
    const Transcript& t = oracle.transcript();
    if (!why.empty()) {
      fail(p, t, why);
    } else if (!oracle.terminal()) {
      fail(p, t, "finished before the order was determined");
    } else if (order != oracle.order()) {
      fail(p, t, "wrong merged order");
    }
    if (static_cast<int>(t.size()) > p.worst) {
      p.worst = static_cast<int>(t.size());
      p.worst_transcript = t;
    }
    if (used < fixed) return p;
    path.resize(used);
    while (path.size() > fixed && path.back() == 1) path.pop_back();
    if (path.size() == fixed) return p;
    path.back() = 1;
  }
}

void merge_into(MeasureResult& r, Partial& p) {
  r.leaves += p.leaves;
  if (p.worst > r.worst_case) {
    r.worst_case = p.worst;
    r.worst_transcript = std::move(p.worst_transcript);
  }
  if (!p.correct && r.correct) {
    r.correct = false;
    r.failure = std::move(p.failure);
  }
}

void check_budget(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("negative list size");
  if (binomial(m + n, m) > kMeasureLeafBudget) {
    throw MeasureBudgetError("C(" + std::to_string(m + n) + "," + std::to_string(m) +
                             ") exceeds the leaf budget");
  }
}

}  // namespace

MeasureResult measure_serial(const MergeAlgorithm& alg, int m, int n) {
  check_budget(m, n);
  MeasureResult r;
  Partial p = explore(alg, m, n, {});
  merge_into(r, p);
  return r;
}

MeasureResult measure(const MergeAlgorithm& alg, int m, int n) {
  check_budget(m, n);
  const int threads = omp_get_max_threads();
  if (threads <= 1 || m + n < 8) return measure_serial(alg, m, n);

  // Runs the leftmost path first so precondition errors surface here.
  {
    std::vector<std::uint8_t> path;
    PathOracle probe(m, n, path);
    try {
      alg.run(m, n, probe);
    } catch (const DepthExceeded&) {
    } catch (const AlgorithmError&) {
    }
  }

  const int bits = 8;
  const int tasks = 1 << bits;
  std::vector<Partial> parts(tasks);
#pragma omp parallel for schedule(dynamic, 1)
  for (int t = 0; t < tasks; ++t) {
    std::vector<std::uint8_t> prefix(bits);
    for (int b = 0; b < bits; ++b) prefix[b] = (t >> (bits - 1 - b)) & 1;
    try {
      parts[t] = explore(alg, m, n, std::move(prefix));
    } catch (...) {
      parts[t].error = std::current_exception();
    }
  }
  MeasureResult r;
  for (auto& p : parts) {
    if (p.error) std::rethrow_exception(p.error);
    merge_into(r, p);
  }
  return r;
}

namespace {

class TruthOracle : public Oracle {
 public:
  TruthOracle(int m, int n, const Interleaving& truth) : m_(m), n_(n), pa_(m + 1), pb_(n + 1) {
    for (int k = 0; k < static_cast<int>(truth.size()); ++k) {
      if (truth[k] > 0) {
        pa_[truth[k]] = k;
      } else {
        pb_[-truth[k]] = k;
      }
    }
  }

  Outcome compare(int i, int j) override {
    if (i < 1 || i > m_ || j < 1 || j > n_) {
      throw AlgorithmError("comparison out of range");
    }
    if (++count_ > m_ * n_ + m_ + n_ + 1) throw DepthExceeded{};
    return pa_[i] < pb_[j] ? Outcome::Less : Outcome::Greater;
  }

  int count() const { return count_; }

 private:
  int m_;
  int n_;
  std::vector<int> pa_;
  std::vector<int> pb_;
  int count_ = 0;
};

bool is_interleaving(int m, int n, const Interleaving& t) {
  if (static_cast<int>(t.size()) != m + n) return false;
  int a = 0;
  int b = 0;
  for (int tag : t) {
    if (tag == a + 1) {
      ++a;
    } else if (tag == -(b + 1)) {
      ++b;
    } else {
      return false;
    }
  }
  return a == m && b == n;
}

Interleaving draw(int m, int n, std::mt19937_64& rng) {
  Interleaving out;
  out.reserve(m + n);
  int a = 0;
  int b = 0;
  while (a < m || b < n) {
    std::uint64_t remaining = static_cast<std::uint64_t>(m - a + n - b);
    if (rng() % remaining < static_cast<std::uint64_t>(m - a)) {
      out.push_back(++a);
    } else {
      out.push_back(-(++b));
    }
  }
  return out;
}

}  // namespace

ReplayResult replay(const MergeAlgorithm& alg, int m, int n, const Interleaving& truth) {
  if (!is_interleaving(m, n, truth)) throw std::invalid_argument("not an interleaving");
  TruthOracle oracle(m, n, truth);
  ReplayResult r;
  try {
    r.ok = alg.run(m, n, oracle) == truth;
  } catch (const DepthExceeded&) {
    r.ok = false;
  } catch (const AlgorithmError&) {
    r.ok = false;
  }
  r.comparisons = oracle.count();
  return r;
}

Interleaving random_interleaving(int m, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return draw(m, n, rng);
}

FuzzReport fuzz(const MergeAlgorithm& alg, int m, int n, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  FuzzReport rep;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Interleaving truth = draw(m, n, rng);
    ReplayResult r = replay(alg, m, n, truth);
    rep.max_comparisons = std::max(rep.max_comparisons, r.comparisons);
    if (!r.ok) {
      ++rep.failures;
      if (rep.failing.size() < 10) rep.failing.push_back(std::move(truth));
    }
  }
  return rep;
}

std::vector<Interleaving> all_interleavings(int m, int n) {
  std::vector<Interleaving> out;
  Interleaving cur;
  auto rec = [&](auto& self, int a, int b) -> void {
    if (a == m && b == n) {
      out.push_back(cur);
      return;
    }
    if (a < m) {
      cur.push_back(a + 1);
      self(self, a + 1, b);
      cur.pop_back();
    }
    if (b < n) {
      cur.push_back(-(b + 1));
      self(self, a, b + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace merge_lab
