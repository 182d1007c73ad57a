#include "merge_lab/algorithms.hpp"

#include <algorithm>
#include <mutex>

namespace merge_lab {

// ---------------------------------------------------------------------------
// Transcript replay

namespace {

struct NeedQuery {
  Query query;
};

class ReplayOracle : public Oracle {
 public:
  ReplayOracle(int m, int n, const Transcript& t) : m_(m), n_(n), t_(t) {}

  Outcome compare(int i, int j) override {
    if (i < 1 || i > m_ || j < 1 || j > n_) {
      throw AlgorithmError("comparison a" + std::to_string(i) + ":b" + std::to_string(j) +
                           " out of range");
    }
    if (pos_ == t_.size()) throw NeedQuery{{i, j}};
    const TranscriptEntry& e = t_[pos_++];
    if (e.query.i != i || e.query.j != j) {
      throw AlgorithmError("transcript diverges from the algorithm at step " +
                           std::to_string(pos_));
    }
    return e.outcome;
  }

  bool exhausted() const { return pos_ == t_.size(); }

 private:
  int m_;
  int n_;
  const Transcript& t_;
  std::size_t pos_ = 0;
};

}  // namespace

MergeAlgorithm::MergeAlgorithm(std::string name, Runner runner)
    : name_(std::move(name)), runner_(std::move(runner)) {}

Step MergeAlgorithm::next(int m, int n, const Transcript& transcript) const {
  ReplayOracle oracle(m, n, transcript);
  try {
    MergedOrder order = runner_(m, n, oracle);
    if (!oracle.exhausted()) throw AlgorithmError("transcript is longer than the algorithm's run");
    return Done{std::move(order)};
  } catch (const NeedQuery& q) {
    return Compare{q.query};
  }
}

// ---------------------------------------------------------------------------
// Role-neutral views. X and Y are the two lists, either (A, B) or (B, A);
// ranges are half-open over original 1-based indices.

namespace {

struct Lists {
  Oracle* oracle;
  bool swapped;  // X = B, Y = A

  bool less(int x, int y) const {
    if (!swapped) return oracle->compare(x, y) == Outcome::Less;
    return oracle->compare(y, x) == Outcome::Greater;
  }
  int tag_x(int x) const { return swapped ? -x : x; }
  int tag_y(int y) const { return swapped ? y : -y; }
  Lists flipped() const { return {oracle, !swapped}; }
};

struct Range {
  int x0, x1, y0, y1;
  int p() const { return x1 - x0; }
  int q() const { return y1 - y0; }
  Range flipped() const { return {y0, y1, x0, x1}; }
};

void append_rest(const Lists& v, const Range& r, MergedOrder& out) {
  for (int x = r.x0; x < r.x1; ++x) out.push_back(v.tag_x(x));
  for (int y = r.y0; y < r.y1; ++y) out.push_back(v.tag_y(y));
}

void run_tape(const Lists& v, Range r, MergedOrder& out) {
  while (r.x0 < r.x1 && r.y0 < r.y1) {
    if (v.less(r.x0, r.y0)) {
      out.push_back(v.tag_x(r.x0++));
    } else {
      out.push_back(v.tag_y(r.y0++));
    }
  }
  append_rest(v, r, out);
}

// Binary search for x among y0..y1-1; returns the number of y's below x.
int insert_position(const Lists& v, int x, int y0, int y1) {
  int lo = y0;
  int hi = y1;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (v.less(x, mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo - y0;
}

// Hwang-Lin binary merge, working down from the largest elements.
void run_hwang_lin(Lists v, Range r, MergedOrder& out) {
  std::vector<int> top;  // merged suffix, largest first
  while (r.p() > 0 && r.q() > 0) {
    if (r.p() > r.q()) {
      v = v.flipped();
      r = r.flipped();
    }
    int t = floor_log2_ratio(r.p(), r.q());
    int block = 1 << t;
    int x = r.x1 - 1;
    int probe = r.y1 - block;
    if (v.less(x, probe)) {
      for (int y = r.y1 - 1; y >= probe; --y) top.push_back(v.tag_y(y));
      r.y1 = probe;
    } else {
      int below = insert_position(v, x, probe + 1, r.y1);
      int split = probe + 1 + below;
      for (int y = r.y1 - 1; y >= split; --y) top.push_back(v.tag_y(y));
      top.push_back(v.tag_x(x));
      r.y1 = split;
      r.x1 -= 1;
    }
  }
  append_rest(v, r, out);
  out.insert(out.end(), top.rbegin(), top.rend());
}

void run_strategy(const Lists& v, const Range& r, const Selector::StrategyMap& strategy,
                  MergedOrder& out) {
  KnowledgeState s = initial_state(r.p(), r.q());
  while (!is_terminal(s)) {
    auto it = strategy.find({s.L, s.H});
    if (it == strategy.end()) throw AlgorithmError("state outside the optimal strategy");
    Move mv = it->second;
    bool less = v.less(r.x0 + mv.i - 1, r.y0 + mv.j - 1);
    s = apply_outcome(s, mv.i, mv.j, less ? Outcome::Less : Outcome::Greater);
  }
  for (int tag : merged_order(s)) {
    out.push_back(tag > 0 ? v.tag_x(r.x0 + tag - 1) : v.tag_y(r.y0 - tag - 1));
  }
}

// Puts the shorter list in the X role.
void normalize(Lists& v, Range& r) {
  if (r.p() > r.q()) {
    v = v.flipped();
    r = r.flipped();
  }
}

void run_choice(const Selector& sel, Selector::Choice choice, Lists v, Range r,
                MergedOrder& out);

void continue_with_selector(const Selector& sel, Lists v, Range r, MergedOrder& out) {
  normalize(v, r);
  run_choice(sel, sel.choose(r.p(), r.q()), v, r, out);
}

// The gambit on x1, x2, y1, y2 (branch costs 1, 3, 4, 3), then the selector.
void run_modified(const Selector& sel, Lists v, Range r, MergedOrder& out) {
  normalize(v, r);
  if (r.p() < 2 || r.q() < 2) {
    continue_with_selector(sel, v, r, out);
    return;
  }
  const int x1 = r.x0, x2 = r.x0 + 1, y1 = r.y0, y2 = r.y0 + 1;
  auto place_x1_y1 = [&] {
    if (v.less(x1, y1)) {
      out.push_back(v.tag_x(x1));
      out.push_back(v.tag_y(y1));
    } else {
      out.push_back(v.tag_y(y1));
      out.push_back(v.tag_x(x1));
    }
  };
  if (!v.less(x1, y2)) {  // x1 > y2
    out.push_back(v.tag_y(y1));
    out.push_back(v.tag_y(y2));
    continue_with_selector(sel, v, {r.x0, r.x1, r.y0 + 2, r.y1}, out);
  } else if (!v.less(x2, y2)) {  // x1 < y2 < x2
    place_x1_y1();
    out.push_back(v.tag_y(y2));
    continue_with_selector(sel, v, {r.x0 + 1, r.x1, r.y0 + 2, r.y1}, out);
  } else if (!v.less(x2, y1)) {  // y1 < x2 < y2
    place_x1_y1();
    out.push_back(v.tag_x(x2));
    continue_with_selector(sel, v, {r.x0 + 2, r.x1, r.y0 + 1, r.y1}, out);
  } else {  // x1 < x2 < y1
    out.push_back(v.tag_x(x1));
    out.push_back(v.tag_x(x2));
    continue_with_selector(sel, v, {r.x0 + 2, r.x1, r.y0, r.y1}, out);
  }
}

void run_choice(const Selector& sel, Selector::Choice choice, Lists v, Range r,
                MergedOrder& out) {
  if (r.p() == 0 || r.q() == 0) {
    append_rest(v, r, out);
    return;
  }
  switch (choice) {
    case Selector::Choice::Optimal:
      run_strategy(v, r, *sel.strategy(r.p(), r.q()), out);
      return;
    case Selector::Choice::Modified:
      run_modified(sel, v, r, out);
      return;
    case Selector::Choice::HwangLin:
      run_hwang_lin(v, r, out);
      return;
    case Selector::Choice::Tape:
      run_tape(v, r, out);
      return;
  }
}

Range whole(int m, int n) { return {1, m + 1, 1, n + 1}; }

}  // namespace

MergeAlgorithm tape_merge() {
  return MergeAlgorithm("tape", [](int m, int n, Oracle& o) {
    MergedOrder out;
    run_tape({&o, false}, whole(m, n), out);
    return out;
  });
}

MergeAlgorithm binary_insertion() {
  return MergeAlgorithm("binary-insertion", [](int m, int n, Oracle& o) {
    if (m != 1) throw std::invalid_argument("binary insertion needs m = 1");
    Lists v{&o, false};
    int below = insert_position(v, 1, 1, n + 1);
    MergedOrder out;
    for (int y = 1; y <= below; ++y) out.push_back(-y);
    out.push_back(1);
    for (int y = below + 1; y <= n; ++y) out.push_back(-y);
    return out;
  });
}

MergeAlgorithm hwang_lin() {
  return MergeAlgorithm("hwang-lin", [](int m, int n, Oracle& o) {
    MergedOrder out;
    run_hwang_lin({&o, false}, whole(m, n), out);
    return out;
  });
}

MergeAlgorithm modified_binary_merge(Selector selector) {
  return MergeAlgorithm("modified", [selector](int m, int n, Oracle& o) {
    MergedOrder out;
    run_modified(selector, {&o, false}, whole(m, n), out);
    return out;
  });
}

MergeAlgorithm optimal_player(Selector selector) {
  return MergeAlgorithm("optimal", [selector](int m, int n, Oracle& o) {
    Lists v{&o, false};
    Range r = whole(m, n);
    normalize(v, r);
    MergedOrder out;
    run_choice(selector, Selector::Choice::Optimal, v, r, out);
    return out;
  });
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"tape", "binary-insertion", "hwang-lin",
                                                 "modified", "optimal"};
  return names;
}

MergeAlgorithm algorithm_by_name(const std::string& name) {
  if (name == "tape") return tape_merge();
  if (name == "binary-insertion") return binary_insertion();
  if (name == "hwang-lin") return hwang_lin();
  if (name == "modified") return modified_binary_merge();
  if (name == "optimal") return optimal_player();
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

// ---------------------------------------------------------------------------
// Selector

struct Selector::Cache {
  std::mutex mutex;
  std::map<std::pair<int, int>, int> values;
  std::map<std::pair<int, int>, std::shared_ptr<const StrategyMap>> strategies;
  std::map<std::pair<int, int>, Choice> choices;
};

Selector::Selector() : cache_(std::make_shared<Cache>()) {}

std::string to_string(Selector::Choice c) {
  switch (c) {
    case Selector::Choice::Optimal:
      return "optimal";
    case Selector::Choice::Modified:
      return "modified";
    case Selector::Choice::HwangLin:
      return "hwang-lin";
    case Selector::Choice::Tape:
      return "tape";
  }
  return "?";
}

std::optional<int> Selector::modified_bound(int m, int n) {
  if (m > n) std::swap(m, n);
  if (m < 2 || n < 2 * m - 2) return std::nullopt;
  int d = n - 2 * m;
  std::optional<int> best;
  auto offer = [&](int b) { best = best ? std::min(*best, b) : b; };
  if (d >= 0 && d % 2 == 0 && m >= 4) offer(3 * m + d / 2 - 2);        // Theorem 6.1
  if (d >= -1 && (d + 2) % 2 == 1 && m >= 6) offer(3 * m + (d + 1) / 2 - 3);  // Theorem 6.2
  if (d == -2 && m >= 8) offer(3 * m - 4);                              // Theorem 6.3
  if (d == 0 && m >= 11) offer(3 * m - 3);                              // Theorem 6.4
  return best;
}

namespace {

bool within_solver_limit(int m, int n) {
  if (m + n > 62) return false;
  return binomial(m + n, std::min(m, n)) <= Selector::kSolverLimit;
}

}  // namespace

std::shared_ptr<const Selector::StrategyMap> Selector::strategy(int m, int n) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto key = std::make_pair(m, n);
  if (auto it = cache_->strategies.find(key); it != cache_->strategies.end()) return it->second;
  ExactSolver solver(m, n);
  SolveOutcome outcome = solver.solve();
  if (!outcome.value) {
    throw NotSolvedError("state budget exhausted solving (" + std::to_string(m) + "," +
                         std::to_string(n) + ")");
  }
  auto map = std::make_shared<StrategyMap>();
  for (auto& [state, move] : solver.strategy_closure()) {
    map->emplace(std::make_pair(std::move(state.L), std::move(state.H)), move);
  }
  cache_->values[key] = *outcome.value;
  cache_->strategies[key] = map;
  return map;
}

std::optional<int> Selector::solver_value(int m, int n) const {
  if (m > n) std::swap(m, n);
  if (!within_solver_limit(m, n)) return std::nullopt;
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (auto it = cache_->values.find({m, n}); it != cache_->values.end()) return it->second;
  }
  strategy(m, n);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->values.at({m, n});
}

Selector::Choice Selector::choose(int m, int n) const {
  if (m > n) std::swap(m, n);
  if (m == 0) return Choice::Tape;
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (auto it = cache_->choices.find({m, n}); it != cache_->choices.end()) return it->second;
  }
  Choice choice = Choice::Tape;
  int best = tape_merge_worst(m, n);
  auto offer = [&](Choice c, int b) {
    // Ties go to the earlier choice in enum order.
    if (b < best || (b == best && c < choice)) {
      best = b;
      choice = c;
    }
  };
  if (auto v = solver_value(m, n)) offer(Choice::Optimal, *v);
  if (auto b = modified_bound(m, n)) offer(Choice::Modified, *b);
  // Below n = 2m binary merge degenerates into tape merge.
  if (n >= 2 * m) offer(Choice::HwangLin, hwang_lin_formula(m, n));
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->choices[{m, n}] = choice;
  return choice;
}

int Selector::bound(int m, int n) const {
  if (m > n) std::swap(m, n);
  if (m == 0) return 0;
  switch (choose(m, n)) {
    case Choice::Optimal:
      return *solver_value(m, n);
    case Choice::Modified:
      return *modified_bound(m, n);
    case Choice::HwangLin:
      return hwang_lin_formula(m, n);
    case Choice::Tape:
      return tape_merge_worst(m, n);
  }
  return tape_merge_worst(m, n);
}

}  // namespace merge_lab
