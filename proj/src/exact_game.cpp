#include "merge_lab/exact_game.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

#include <json.hpp>

namespace merge_lab {

KnowledgeState initial_state(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("negative list size");
  return KnowledgeState{m, n, std::vector<int>(m, 0), std::vector<int>(m, n + 1)};
}

bool is_valid(const KnowledgeState& s) {
  if (s.m < 0 || s.n < 0) return false;
  if (static_cast<int>(s.L.size()) != s.m || static_cast<int>(s.H.size()) != s.m) return false;
  for (int k = 0; k < s.m; ++k) {
    if (s.L[k] < 0 || s.L[k] >= s.H[k] || s.H[k] > s.n + 1) return false;
    if (k > 0 && (s.L[k] < s.L[k - 1] || s.H[k] < s.H[k - 1])) return false;
  }
  return true;
}

bool is_terminal(const KnowledgeState& s) {
  for (int k = 0; k < s.m; ++k) {
    if (s.H[k] != s.L[k] + 1) return false;
  }
  return true;
}

std::optional<Outcome> forced_outcome(const KnowledgeState& s, int i, int j) {
  if (i < 1 || i > s.m || j < 1 || j > s.n) throw std::invalid_argument("comparison out of range");
  if (j <= s.L[i - 1]) return Outcome::Greater;
  if (j >= s.H[i - 1]) return Outcome::Less;
  return std::nullopt;
}

KnowledgeState apply_outcome(const KnowledgeState& s, int i, int j, Outcome outcome) {
  if (i < 1 || i > s.m || j < 1 || j > s.n) throw std::invalid_argument("comparison out of range");
  KnowledgeState out = s;
  if (outcome == Outcome::Less) {
    if (j <= s.L[i - 1]) {
      throw InconsistentOutcomeError("a" + std::to_string(i) + " > b" + std::to_string(j) +
                                     " is already known");
    }
    for (int k = 0; k < i; ++k) out.H[k] = std::min(out.H[k], j);
  } else {
    if (j >= s.H[i - 1]) {
      throw InconsistentOutcomeError("a" + std::to_string(i) + " < b" + std::to_string(j) +
                                     " is already known");
    }
    for (int k = i - 1; k < s.m; ++k) out.L[k] = std::max(out.L[k], j);
  }
  return out;
}

namespace {

// Counts nondecreasing g with lo[k] <= g[k] < hi[k]; g[k] is the number of
// b's below a_{k+1}.
template <typename Int>
Int count_gaps(int m, int n, const int* lo, const int* hi) {
  std::vector<Int> ways(n + 1, Int(0));
  std::vector<Int> next(n + 1);
  ways[0] = Int(1);  // virtual g_0 = 0
  for (int k = 0; k < m; ++k) {
    Int running(0);
    int g = 0;
    for (; g <= n; ++g) {
      running += ways[g];
      next[g] = (g >= lo[k] && g < hi[k]) ? running : Int(0);
    }
    ways.swap(next);
  }
  Int total(0);
  for (int g = 0; g <= n; ++g) total += ways[g];
  return total;
}

}  // namespace

ExactInt completions(const KnowledgeState& s) {
  if (!is_valid(s)) throw std::invalid_argument("invalid knowledge state");
  return count_gaps<ExactInt>(s.m, s.n, s.L.data(), s.H.data());
}

KnowledgeState reverse(const KnowledgeState& s) {
  KnowledgeState r{s.m, s.n, std::vector<int>(s.m), std::vector<int>(s.m)};
  for (int k = 0; k < s.m; ++k) {
    r.L[k] = s.n + 1 - s.H[s.m - 1 - k];
    r.H[k] = s.n + 1 - s.L[s.m - 1 - k];
  }
  return r;
}

KnowledgeState canonicalize(const KnowledgeState& s) {
  KnowledgeState r = reverse(s);
  if (std::tie(r.L, r.H) < std::tie(s.L, s.H)) return r;
  return s;
}

std::vector<int> merged_order(const KnowledgeState& s) {
  if (!is_terminal(s)) throw std::invalid_argument("merged order needs a terminal state");
  std::vector<int> order;
  order.reserve(s.m + s.n);
  int b = 0;
  for (int k = 0; k < s.m; ++k) {
    while (b < s.L[k]) order.push_back(-(++b));
    order.push_back(k + 1);
  }
  while (b < s.n) order.push_back(-(++b));
  return order;
}

// ---------------------------------------------------------------------------
// Solver

namespace {

constexpr int kMaxSize = 62;  // m + n bound for the 64-bit path encoding

struct BudgetExceeded {};

// One independent piece of a knowledge state, relabelled so that its b range
// starts at 0: a-elements first..first+m-1 of the parent and b-elements
// offset+1..offset+n.
struct Component {
  int first = 0;
  int offset = 0;
  int m = 0;
  int n = 0;
  std::array<int, kMaxSize> L{};
  std::array<int, kMaxSize> H{};
};

struct Key {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  friend bool operator==(const Key&, const Key&) = default;
  friend bool operator<(const Key& a, const Key& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
  }
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = k.lo * 0x9e3779b97f4a7c15ULL;
    h ^= k.hi + 0x632be59bd9b4e019ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

// Monotone sequence v[0..m) with values in [0, n] as a lattice path with a
// leading sentinel bit: ones for elements, zeros for unit steps.
std::uint64_t encode_path(int m, int n, const int* v, int shift) {
  std::uint64_t bits = 1;
  int level = 0;
  for (int k = 0; k < m; ++k) {
    int target = v[k] - shift;
    while (level < target) {
      bits <<= 1;
      ++level;
    }
    bits = (bits << 1) | 1;
  }
  while (level < n) {
    bits <<= 1;
    ++level;
  }
  return bits;
}

Key encode(const Component& c) {
  return Key{encode_path(c.m, c.n, c.L.data(), 0), encode_path(c.m, c.n, c.H.data(), 1)};
}

Component reversed(const Component& c) {
  Component r;
  r.m = c.m;
  r.n = c.n;
  for (int k = 0; k < c.m; ++k) {
    r.L[k] = c.n + 1 - c.H[c.m - 1 - k];
    r.H[k] = c.n + 1 - c.L[c.m - 1 - k];
  }
  return r;
}

Key canonical_key(const Component& c) {
  Key a = encode(c);
  Key b = encode(reversed(c));
  return b < a ? b : a;
}

// Splits (m, n, L, H) into nontrivial independent components. a_k and a_{k+1}
// are independent when every gap a_k can take is at most every gap a_{k+1} can
// take; a settled a_k is independent of both neighbours and is dropped.
void decompose(int m, const int* L, const int* H, std::vector<Component>& out) {
  out.clear();
  int start = 0;
  for (int k = 0; k < m; ++k) {
    bool cut = (k + 1 == m) || H[k] <= L[k + 1] + 1;
    if (!cut) continue;
    bool settled = (k == start) && H[k] == L[k] + 1;
    if (!settled) {
      Component c;
      c.first = start;
      c.offset = L[start];
      c.m = k - start + 1;
      c.n = H[k] - 1 - L[start];
      for (int t = 0; t < c.m; ++t) {
        c.L[t] = L[start + t] - c.offset;
        c.H[t] = H[start + t] - c.offset;
      }
      out.push_back(c);
    }
    start = k + 1;
  }
}

std::uint64_t count_u64(const Component& c) {
  return count_gaps<std::uint64_t>(c.m, c.n, c.L.data(), c.H.data());
}

int insertion_bound(const Component& c) {
  int total = 0;
  for (int k = 0; k < c.m; ++k) total += ceil_log2(static_cast<std::uint64_t>(c.H[k] - c.L[k]));
  return std::min(total, c.m + c.n - 1);
}

struct Entry {
  std::uint8_t lb = 0;
  std::uint8_t ub = 0;
};

}  // namespace

struct ExactSolver::Impl {
  int m;
  int n;
  std::int64_t budget;
  std::int64_t inserted = 0;
  std::unordered_map<Key, Entry, KeyHash> memo;
  std::optional<int> root_value;
  bool budget_hit = false;

  Entry& entry(const Component& c) {
    Key key = canonical_key(c);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    if (inserted >= budget) throw BudgetExceeded{};
    ++inserted;
    Entry e;
    e.lb = static_cast<std::uint8_t>(ceil_log2(count_u64(c)));
    e.ub = static_cast<std::uint8_t>(insertion_bound(c));
    return memo.emplace(key, e).first->second;
  }

  // Can the algorithm finish component `c` within d comparisons?
  bool within(const Component& c, int d) {
    {
      Entry& e = entry(c);
      if (d >= e.ub) return true;
      if (d < e.lb) return false;
    }

    struct Candidate {
      std::uint64_t worst;
      int i;
      int j;
    };
    std::vector<Candidate> moves;
    const std::uint64_t cap = d - 1 >= 63 ? ~0ULL : (1ULL << (d - 1));
    Component child = c;
    for (int i = 1; i <= c.m; ++i) {
      for (int j = c.L[i - 1] + 1; j < c.H[i - 1]; ++j) {
        child = c;
        for (int k = 0; k < i; ++k) child.H[k] = std::min(child.H[k], j);
        std::uint64_t less = count_u64(child);
        if (less > cap) continue;
        child = c;
        for (int k = i - 1; k < c.m; ++k) child.L[k] = std::max(child.L[k], j);
        std::uint64_t greater = count_u64(child);
        if (greater > cap) continue;
        moves.push_back({std::max(less, greater), i, j});
      }
    }
    std::stable_sort(moves.begin(), moves.end(),
                     [](const Candidate& a, const Candidate& b) { return a.worst < b.worst; });

    std::vector<Component> parts;
    for (const Candidate& mv : moves) {
      child = c;
      for (int k = 0; k < mv.i; ++k) child.H[k] = std::min(child.H[k], mv.j);
      if (!total_within(child, d - 1, parts)) continue;
      child = c;
      for (int k = mv.i - 1; k < c.m; ++k) child.L[k] = std::max(child.L[k], mv.j);
      if (!total_within(child, d - 1, parts)) continue;
      Entry& e = entry(c);
      e.ub = static_cast<std::uint8_t>(std::min<int>(e.ub, d));
      return true;
    }
    Entry& e = entry(c);
    e.lb = static_cast<std::uint8_t>(std::max<int>(e.lb, d + 1));
    return false;
  }

  // Exact value of a component, or nullopt if it exceeds `cap`.
  std::optional<int> exact(const Component& c, int cap) {
    int d = entry(c).lb;
    for (; d <= cap; ++d) {
      if (within(c, d)) return d;
      d = std::max<int>(d, entry(c).lb - 1);
    }
    return std::nullopt;
  }

  // Can a (possibly decomposable) state be finished within d comparisons?
  bool total_within(const Component& whole, int d, std::vector<Component>& scratch) {
    decompose(whole.m, whole.L.data(), whole.H.data(), scratch);
    std::vector<Component> parts = scratch;
    if (parts.empty()) return d >= 0;
    if (parts.size() == 1) return within(parts[0], d);
    std::vector<int> lbs(parts.size());
    int sum_lb = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      lbs[k] = entry(parts[k]).lb;
      sum_lb += lbs[k];
    }
    if (sum_lb > d) return false;
    int rem = d;
    int rest_lb = sum_lb;
    for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
      rest_lb -= lbs[k];
      auto v = exact(parts[k], rem - rest_lb);
      if (!v) return false;
      rem -= *v;
    }
    return within(parts.back(), rem);
  }

  int value_of(const KnowledgeState& s) {
    std::vector<Component> parts;
    decompose(s.m, s.L.data(), s.H.data(), parts);
    int total = 0;
    for (const Component& c : parts) total += *exact(c, c.m + c.n);
    return total;
  }
};

ExactSolver::ExactSolver(int m, int n, std::int64_t state_budget)
    : impl_(std::make_unique<Impl>()) {
  if (m < 0 || n < 0) throw std::invalid_argument("negative list size");
  if (m + n > kMaxSize) throw std::invalid_argument("solver supports m + n <= 62");
  impl_->m = m;
  impl_->n = n;
  impl_->budget = state_budget;
}

ExactSolver::~ExactSolver() = default;
ExactSolver::ExactSolver(ExactSolver&&) noexcept = default;
ExactSolver& ExactSolver::operator=(ExactSolver&&) noexcept = default;

int ExactSolver::m() const { return impl_->m; }
int ExactSolver::n() const { return impl_->n; }
bool ExactSolver::solved() const { return impl_->root_value.has_value(); }

SolveOutcome ExactSolver::solve() {
  SolveOutcome out;
  if (!impl_->root_value && !impl_->budget_hit) {
    try {
      impl_->root_value = impl_->value_of(initial_state(impl_->m, impl_->n));
    } catch (const BudgetExceeded&) {
      impl_->budget_hit = true;
    }
  }
  out.value = impl_->root_value;
  out.budget_hit = impl_->budget_hit;
  out.states_expanded = impl_->inserted;
  return out;
}

int ExactSolver::value(const KnowledgeState& s) {
  if (!solved()) throw NotSolvedError("solve() has not completed");
  if (s.m != impl_->m || s.n != impl_->n || !is_valid(s)) {
    throw std::invalid_argument("state does not belong to this game");
  }
  try {
    return impl_->value_of(s);
  } catch (const BudgetExceeded&) {
    throw NotSolvedError("state budget exhausted while evaluating a state");
  }
}

Move ExactSolver::optimal_move(const KnowledgeState& s) {
  int target = value(s);
  if (is_terminal(s)) throw std::invalid_argument("terminal state has no move");
  for (int i = 1; i <= s.m; ++i) {
    for (int j = s.L[i - 1] + 1; j < s.H[i - 1]; ++j) {
      int less = value(apply_outcome(s, i, j, Outcome::Less));
      if (less + 1 > target) continue;
      int greater = value(apply_outcome(s, i, j, Outcome::Greater));
      if (greater + 1 > target) continue;
      return Move{i, j};
    }
  }
  throw std::logic_error("no move achieves the state value");
}

std::vector<std::pair<KnowledgeState, Move>> ExactSolver::strategy_closure() {
  if (!solve().value) throw NotSolvedError("solve() has not completed");
  std::vector<std::pair<KnowledgeState, Move>> out;
  std::vector<KnowledgeState> stack{initial_state(impl_->m, impl_->n)};
  std::unordered_map<Key, bool, KeyHash> seen;
  while (!stack.empty()) {
    KnowledgeState s = std::move(stack.back());
    stack.pop_back();
    if (is_terminal(s)) continue;
    Key key{encode_path(s.m, s.n, s.L.data(), 0), encode_path(s.m, s.n, s.H.data(), 1)};
    if (!seen.emplace(key, true).second) continue;
    Move mv = optimal_move(s);
    stack.push_back(apply_outcome(s, mv.i, mv.j, Outcome::Greater));
    stack.push_back(apply_outcome(s, mv.i, mv.j, Outcome::Less));
    out.emplace_back(std::move(s), mv);
  }
  return out;
}

std::string ExactSolver::strategy_json() {
  auto closure = strategy_closure();
  nlohmann::ordered_json moves = nlohmann::ordered_json::array();
  for (const auto& [s, mv] : closure) {
    nlohmann::ordered_json item;
    item["L"] = s.L;
    item["H"] = s.H;
    item["move"] = {mv.i, mv.j};
    moves.push_back(std::move(item));
  }
  nlohmann::ordered_json doc;
  doc["m"] = impl_->m;
  doc["n"] = impl_->n;
  doc["value"] = *impl_->root_value;
  doc["moves"] = std::move(moves);
  return doc.dump();
}

SolveOutcome solve(int m, int n, std::int64_t state_budget) {
  ExactSolver solver(m, n, state_budget);
  return solver.solve();
}

const std::vector<TrustedFact>& trusted_facts() {
  static const std::vector<TrustedFact> facts = {
      {"M(7,12)", "=", 17, "Smith and Lang, game-solver computation"},
      {"M(10,20)", "<=", 27, "Smith and Lang, base case of M(m,2m) <= 3m-3"},
  };
  return facts;
}

std::optional<TrustedFact> trusted_fact(int m, int n) {
  std::string name = "M(" + std::to_string(m) + "," + std::to_string(n) + ")";
  for (const TrustedFact& f : trusted_facts()) {
    if (f.name == name) return f;
  }
  return std::nullopt;
}

}  // namespace merge_lab
