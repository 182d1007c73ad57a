#include "merge_lab/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "merge_lab/algorithms.hpp"
#include "merge_lab/exact_game.hpp"
#include "merge_lab/harness.hpp"

namespace merge_lab {

std::string to_string(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::Pass:
      return "pass";
    case SuiteStatus::Fail:
      return "fail";
    case SuiteStatus::Skipped:
      return "skipped";
    case SuiteStatus::Finding:
      return "finding";
  }
  return "?";
}

std::pair<int, int> verify_table_bounds(int max_size) {
  return {max_size, 38 * max_size / 25};
}

ExactValueFn direct_exact_values() {
  return [](int m, int n) -> std::optional<int> {
    if (m + n > 62) return std::nullopt;
    return solve(m, n).value;
  };
}

namespace {

constexpr Constraint kDot = Constraint::None;
constexpr Constraint kBs = Constraint::ALessB;
constexpr Constraint kFs = Constraint::AGreaterB;
constexpr Constraint kAll[] = {kDot, kBs, kFs};

// Collects one claim's instances.
class Tally {
 public:
  explicit Tally(std::string id, std::set<std::vector<int>> exceptions = {})
      : exceptions_(std::move(exceptions)) {
    r_.id = std::move(id);
  }

  // Records one instance; `ok` is the raw inequality.
  void check(bool ok, std::vector<int> tuple) {
    ++r_.checked;
    if (ok) return;
    if (exceptions_.count(tuple)) {
      r_.exceptions_observed.push_back(std::move(tuple));
      return;
    }
    ++r_.violations;
    if (r_.counterexamples.size() < 10) r_.counterexamples.push_back(std::move(tuple));
  }

  void trust(std::string fact) {
    if (std::find(r_.trusted.begin(), r_.trusted.end(), fact) == r_.trusted.end()) {
      r_.trusted.push_back(std::move(fact));
    }
  }
  void note(std::string text) { r_.note = std::move(text); }

  SuiteReport finish(bool report_only = false) {
    std::sort(r_.counterexamples.begin(), r_.counterexamples.end());
    std::sort(r_.exceptions_observed.begin(), r_.exceptions_observed.end());
    if (r_.checked == 0) {
      r_.status = SuiteStatus::Skipped;
    } else if (r_.violations > 0) {
      r_.status = report_only ? SuiteStatus::Finding : SuiteStatus::Fail;
    } else {
      r_.status = SuiteStatus::Pass;
    }
    return std::move(r_);
  }

 private:
  SuiteReport r_;
  std::set<std::vector<int>> exceptions_;
};

void require(const AdversaryTable& t, int m, int n, const std::string& id) {
  if (!t.covers(m, n)) {
    throw InsufficientTableError("suite " + id + " needs the table to cover (" +
                                 std::to_string(m) + "," + std::to_string(n) + "); it covers (" +
                                 std::to_string(t.max_m()) + "," + std::to_string(t.max_n()) +
                                 ")");
  }
}

struct View {
  const AdversaryTable& t;
  int v(int m, int n, Constraint l, Constraint r) const { return t.value({m, n, l, r}); }
  bool ok(int m, int n, Constraint l, Constraint r) const {
    return is_consistent({m, n, l, r});
  }
};

int code(Constraint c) { return static_cast<int>(c); }

SuiteReport suite_sym(const View& t) {
  Tally s("sym");
  s.note("/M.(m,n) = .M\\(m,n) = \\M.(n,m) = .M/(n,m); /M/ = \\M\\; /M\\(m,n) = \\M/(n,m)");
  const int hi = std::min(t.t.max_m(), t.t.max_n());
  for (int m = 1; m <= hi; ++m) {
    for (int n = 1; n <= hi; ++n) {
      int a = t.v(m, n, kFs, kDot);
      s.check(a == t.v(m, n, kDot, kBs) && a == t.v(n, m, kBs, kDot) && a == t.v(n, m, kDot, kFs),
              {m, n, 0});
      s.check(t.v(m, n, kFs, kFs) == t.v(m, n, kBs, kBs), {m, n, 1});
      if (t.ok(m, n, kFs, kBs)) s.check(t.v(m, n, kFs, kBs) == t.v(n, m, kBs, kFs), {m, n, 2});
    }
  }
  return s.finish();
}

SuiteReport suite_table_bounds(const View& t) {
  Tally s("table-bounds");
  s.note("0 <= value <= m+n-1 on consistent keys; .M.(1,n) = ceil(lg(n+1))");
  for (Constraint l : kAll) {
    for (Constraint r : kAll) {
      for (int m = 0; m <= t.t.max_m(); ++m) {
        for (int n = 0; n <= t.t.max_n(); ++n) {
          if (!t.ok(m, n, l, r)) continue;
          int v = t.v(m, n, l, r);
          int top = (m == 0 || n == 0) ? 0 : m + n - 1;
          s.check(v >= 0 && v <= top, {m, n, code(l), code(r)});
        }
      }
    }
  }
  for (int n = 1; n <= t.t.max_n(); ++n) {
    s.check(t.v(1, n, kDot, kDot) == ceil_log2(static_cast<std::uint64_t>(n) + 1), {1, n});
  }
  return s.finish();
}

SuiteReport suite_lemma_31a(const View& t) {
  Tally s("lemma-3.1-a");
  s.note(".Mr(m,n) >= lMr(m,n)");
  for (Constraint l : kAll) {
    for (Constraint r : kAll) {
      for (int m = 1; m <= t.t.max_m(); ++m) {
        for (int n = 1; n <= t.t.max_n(); ++n) {
          if (!t.ok(m, n, l, r) || !t.ok(m, n, kDot, r)) continue;
          s.check(t.v(m, n, kDot, r) >= t.v(m, n, l, r), {m, n, code(l), code(r)});
        }
      }
    }
  }
  return s.finish();
}

SuiteReport suite_lemma_31b(const View& t) {
  Tally s("lemma-3.1-b");
  s.note("/Mr(m,n) <= .Mr(m,n-1) + 1");
  for (Constraint r : kAll) {
    for (int m = 1; m <= t.t.max_m(); ++m) {
      for (int n = 2; n <= t.t.max_n(); ++n) {
        if (!t.ok(m, n, kFs, r) || !t.ok(m, n - 1, kDot, r)) continue;
        s.check(t.v(m, n, kFs, r) <= t.v(m, n - 1, kDot, r) + 1, {m, n, code(r)});
      }
    }
  }
  return s.finish();
}

SuiteReport suite_lemma_32(const View& t) {
  Tally s("lemma-3.2");
  s.note(".M.(m+1,n) >= .M.(m,n)+1 >= .M.(m,n+1) for m <= n");
  for (int m = 0; m + 1 <= t.t.max_m(); ++m) {
    for (int n = std::max(m, 1); n + 1 <= t.t.max_n(); ++n) {
      int base = t.v(m, n, kDot, kDot) + 1;
      s.check(t.v(m + 1, n, kDot, kDot) >= base && base >= t.v(m, n + 1, kDot, kDot), {m, n});
    }
  }
  return s.finish();
}

SuiteReport suite_lemma_33(const View& t) {
  Tally s("lemma-3.3");
  s.note(".M.(m+1,n+1) >= .M.(m,n)+2 for m+n >= 1");
  for (int m = 0; m + 1 <= t.t.max_m(); ++m) {
    for (int n = 0; n + 1 <= t.t.max_n(); ++n) {
      if (m + n < 1) continue;
      s.check(t.v(m + 1, n + 1, kDot, kDot) >= t.v(m, n, kDot, kDot) + 2, {m, n});
    }
  }
  return s.finish();
}

SuiteReport suite_lemma_34(const View& t, char part) {
  std::set<std::vector<int>> exceptions;
  if (part == 'c') exceptions = {{1, 1}, {2, 2}, {3, 3}};
  Tally s(std::string("lemma-3.4-") + part, exceptions);
  for (int m = 1; m + 1 <= t.t.max_m(); ++m) {
    for (int n = 1; n + 1 <= t.t.max_n(); ++n) {
      int here = t.v(m, n, kFs, kDot);
      if (part == 'a') {
        s.check(t.v(m + 1, n + 1, kFs, kDot) >= here + 2, {m, n});
      } else if (m <= n && part == 'b') {
        s.check(t.v(m, n + 1, kFs, kDot) <= here + 1, {m, n});
      } else if (m <= n && part == 'c') {
        s.check(t.v(m + 1, n, kFs, kDot) >= here + 1, {m, n});
      }
    }
  }
  if (part == 'a') s.note("/M.(m+1,n+1) >= /M.(m,n)+2");
  if (part == 'b') s.note("/M.(m,n+1) <= /M.(m,n)+1 for m <= n");
  if (part == 'c') s.note("/M.(m+1,n) >= /M.(m,n)+1 for m <= n, except (1,1), (2,2), (3,3)");
  return s.finish();
}

SuiteReport suite_thm41(const View& t, char part) {
  struct Part {
    Constraint l, r;
    std::set<std::vector<int>> exceptions;
    const char* note;
  };
  static const std::map<char, Part> parts = {
      {'a', {kDot, kDot, {}, ".M.(m+25,n+38) >= .M.(m,n)+63"}},
      {'b', {kFs, kDot, {}, "/M.(m+25,n+38) >= /M.(m,n)+63"}},
      {'c', {kBs, kDot, {}, "\\M.(m+25,n+38) >= \\M.(m,n)+63"}},
      {'d', {kFs, kBs, {}, "/M\\(m+25,n+38) >= /M\\(m,n)+63"}},
      {'e', {kBs, kBs, {{1, 1}}, "\\M\\(m+25,n+38) >= \\M\\(m,n)+63, except (1,1)"}},
      {'f', {kBs, kFs, {{2, 1}}, "\\M/(m+25,n+38) >= \\M/(m,n)+63, except (2,1)"}},
  };
  const Part& p = parts.at(part);
  Tally s(std::string("thm-4.1-") + part, p.exceptions);
  s.note(p.note);
  const int lo = part == 'a' ? 0 : 1;
  for (int m = lo; m + 25 <= t.t.max_m(); ++m) {
    for (int n = lo; n + 38 <= t.t.max_n(); ++n) {
      if (m + n < 1 || !t.ok(m, n, p.l, p.r)) continue;
      s.check(t.v(m + 25, n + 38, p.l, p.r) >= t.v(m, n, p.l, p.r) + 63, {m, n});
    }
  }
  return s.finish();
}

SuiteReport suite_thm11(const View& t, int max_size) {
  Tally s("thm-1.1");
  s.note(".M.(m,n) = m+n-1 for m <= n <= 38m/25, so M(m,n) = m+n-1");
  for (int m = 1; m <= max_size; ++m) {
    int top = 38 * m / 25;
    require(t.t, m, top, "thm-1.1");
    for (int n = m; n <= top; ++n) s.check(t.v(m, n, kDot, kDot) == m + n - 1, {m, n});
  }
  return s.finish();
}

SuiteReport suite_thm12(const View& t, int max_size) {
  Tally s("thm-1.2");
  s.note("deficiency(m, 9 ceil(m/5)) >= 1, checked where the table reaches");
  for (int m = 1; m <= max_size; ++m) {
    int n = 9 * ((m + 4) / 5);
    if (!t.t.covers(m, n)) continue;
    s.check(deficiency(t.t, m, n) >= 1, {m, n});
  }
  return s.finish();
}

SuiteReport suite_thm51(const View& t) {
  Tally s("thm-5.1");
  s.note(".M.(5k, 9k+12t) <= 14k+11t-2 for k+t >= 1, within the table");
  for (int k = 0; 5 * k <= t.t.max_m(); ++k) {
    for (int tt = 0; 9 * k + 12 * tt <= t.t.max_n(); ++tt) {
      if (k + tt < 1) continue;
      int m = 5 * k;
      int n = 9 * k + 12 * tt;
      s.check(t.v(m, n, kDot, kDot) <= 14 * k + 11 * tt - 2, {m, n, k, tt});
    }
  }
  return s.finish();
}

std::optional<int> exact_at(const VerifyContext& ctx, int m, int n) {
  if (m > ctx.solver_max || n > ctx.solver_max || !ctx.exact) return std::nullopt;
  return ctx.exact(m, n);
}

SuiteReport suite_exact_sandwich(const VerifyContext& ctx) {
  Tally s("exact-sandwich");
  s.note("I <= M <= I+m, M >= .M., M(m,m) = 2m-1, M(1,n) = ceil(lg(n+1)), "
         "M = m+n-1 for m <= n <= floor(3m/2)+1");
  for (int m = 1; m <= ctx.solver_max; ++m) {
    for (int n = 1; n <= ctx.solver_max; ++n) {
      auto M = exact_at(ctx, m, n);
      if (!M) continue;
      int I = info_bound(m, n);
      s.check(I <= *M && *M <= I + std::min(m, n), {m, n, 0});
      if (ctx.table->covers(m, n)) s.check(*M >= ctx.table->value({m, n}), {m, n, 1});
      if (m == n) s.check(*M == 2 * m - 1, {m, n, 2});
      if (m == 1) s.check(*M == ceil_log2(static_cast<std::uint64_t>(n) + 1), {m, n, 3});
      if (m <= n && n <= 3 * m / 2 + 1) s.check(*M == m + n - 1, {m, n, 4});
    }
  }
  return s.finish();
}

SuiteReport suite_alpha(const VerifyContext& ctx) {
  Tally s("alpha-bracket");
  s.note("lo <= alpha(m) <= hi; hi from binary merge, 2m-1 for m >= 3, 2m-3 for m >= 7");
  ExactValueFn limited = [&ctx](int m, int n) { return exact_at(ctx, m, n); };
  for (int m = 1; m <= ctx.table->max_m() && m <= ctx.table->max_n(); ++m) {
    AlphaBracket b = alpha_bracket(m, *ctx.table, limited);
    s.check(b.lo <= b.hi, {m, b.lo, b.hi});
  }
  return s.finish();
}

SuiteReport suite_conj(const VerifyContext& ctx, int which) {
  Tally s(which == 1 ? "conj-7.1" : "conj-7.2");
  s.note(which == 1 ? "report only: M(m+1,n+1) >= 2+M(m,n)"
                    : "report only: M(m+1,n) >= 1+M(m,n) >= M(m,n+1) for m <= n");
  for (int m = 0; m + 1 <= ctx.solver_max; ++m) {
    for (int n = 0; n + 1 <= ctx.solver_max; ++n) {
      if (m + n < 1) continue;
      auto here = exact_at(ctx, m, n);
      if (!here) continue;
      if (which == 1) {
        if (auto up = exact_at(ctx, m + 1, n + 1)) s.check(*up >= 2 + *here, {m, n});
      } else if (m <= n) {
        auto a = exact_at(ctx, m + 1, n);
        auto b = exact_at(ctx, m, n + 1);
        if (a && b) s.check(*a >= 1 + *here && 1 + *here >= *b, {m, n});
      }
    }
  }
  return s.finish(true);
}

SuiteReport suite_thm13_measure() {
  Tally s("thm-1.3-measure");
  s.note("measured worst case of the modified dispatcher against Theorems 6.1-6.3");
  struct Spot {
    int m, n, bound;
  };
  const Spot spots[] = {{6, 12, 16}, {7, 13, 18}, {8, 14, 20}, {8, 15, 21}};
  Selector sel;
  MergeAlgorithm alg = modified_binary_merge(sel);
  for (const Spot& p : spots) {
    MeasureResult r = measure(alg, p.m, p.n);
    s.check(r.correct && r.worst_case <= p.bound, {p.m, p.n, r.worst_case, p.bound});
  }
  return s.finish();
}

// Bound functions of Theorems 6.1-6.4 keyed by (m, k).
int b61(int m, int k) { return 3 * m + k - 2; }  // M(m, 2m+2k)
int b62(int m, int k) { return 3 * m + k - 3; }  // M(m, 2m+2k-1)
int b63(int m) { return 3 * m - 4; }             // M(m, 2m-2)
int b64(int m) { return 3 * m - 3; }             // M(m, 2m)

std::string base_label(int m, int n, const BaseFact& f) {
  std::string s = "M(" + std::to_string(m) + "," + std::to_string(n) + ")";
  return s + (f.trusted ? "<=" : "=") + std::to_string(f.value) + " (" + f.source + ")";
}

}  // namespace

BaseTable default_bases(const AuditLimits& limits, const ExactValueFn& exact) {
  BaseTable bases;
  auto computed = [&](int m, int n) {
    if (m + n <= 62 && binomial(m + n, m) <= kBaseSolveLimit) {
      if (auto v = exact(m, n)) {
        bases[{m, n}] = {*v, false, "exact solver"};
        return;
      }
    }
    bases[{m, n}] = {hwang_lin_formula(m, n), false, "Hwang-Lin formula"};
  };
  // Theorem 6.1 is read one step further in k by Theorems 6.2 and 6.4.
  for (int k = -1; k <= limits.max_k + 2; ++k) computed(3, 6 + 2 * k);
  for (int k = -1; k <= limits.max_k + 1; ++k) computed(5, 9 + 2 * k);
  for (const TrustedFact& f : trusted_facts()) {
    int m = 0;
    int n = 0;
    std::sscanf(f.name.c_str(), "M(%d,%d)", &m, &n);
    bases[{m, n}] = {f.value, true, f.source};
  }
  return bases;
}

std::vector<SuiteReport> audit_upper_recurrences(const AuditLimits& limits,
                                                 const BaseTable& bases) {
  const int K = limits.max_k;
  Tally t61("thm-6.1"), t62("thm-6.2"), t63("thm-6.3"), t64("thm-6.4");
  t61.note("M(m,2m+2k) <= 3m+k-2 for m >= 3, k >= -1; base row m = 3");
  t62.note("M(m,2m+2k-1) <= 3m+k-3 for m >= 5, k >= -1; base row m = 5");
  t63.note("M(m,2m-2) <= 3m-4 for m >= 7; base m = 7");
  t64.note("M(m,2m) <= 3m-3 for m >= 10; base m = 10");

  auto base = [&](Tally& t, int m, int n) {
    auto it = bases.find({m, n});
    if (it == bases.end()) {
      throw MissingBaseError("no base value for M(" + std::to_string(m) + "," +
                             std::to_string(n) + ")");
    }
    if (it->second.trusted) t.trust(base_label(m, n, it->second));
    return it->second.value;
  };
  auto tape = [](int m, int n) { return m + n - 1; };
  auto hl = [](int m, int n) { return hwang_lin_formula(std::min(m, n), std::max(m, n)); };
  auto max4 = [](int a, int b, int c, int d) { return std::max(std::max(a, b), std::max(c, d)); };

  // Each claim instance must hold from its base, its k = -1 tape case, or the
  // recurrence with the continuation bounds the proof names.
  for (int m = 3; m <= limits.max_m; ++m) {
    for (int k = -1; k <= K + 2; ++k) {
      const int n = 2 * m + 2 * k;
      int lhs;
      if (m == 3) {
        lhs = base(t61, m, n);
      } else if (k == -1) {
        lhs = tape(m, n);
      } else {
        int prev_m = m - 1;
        int cont = prev_m == 3 ? base(t61, 3, 6 + 2 * k) : b61(prev_m, k);
        lhs = max4(b61(m, k - 1) + 1, cont + 3, hl(m - 2, n) + 3, hl(m - 2, n - 1) + 4);
      }
      t61.check(lhs <= b61(m, k), {m, n, k, lhs});
    }
  }
  for (int m = 5; m <= limits.max_m; ++m) {
    for (int k = -1; k <= K + 1; ++k) {
      const int n = 2 * m + 2 * k - 1;
      int lhs;
      if (m == 5) {
        lhs = base(t62, m, n);
      } else if (k == -1) {
        lhs = tape(m, n);
      } else {
        int cont = m - 1 == 5 ? base(t62, 5, 9 + 2 * k) : b62(m - 1, k);
        lhs = max4(b62(m, k - 1) + 1, cont + 3, hl(m - 2, n) + 3, b61(m - 2, k + 1) + 4);
      }
      t62.check(lhs <= b62(m, k), {m, n, k, lhs});
    }
  }
  for (int m = 7; m <= limits.max_m; ++m) {
    const int n = 2 * m - 2;
    int lhs;
    if (m == 7) {
      lhs = base(t63, m, n);
    } else {
      int cont = m - 1 == 7 ? base(t63, 7, 12) : b63(m - 1);
      lhs = max4(tape(m, 2 * m - 4) + 1, cont + 3, b61(m - 2, 1) + 3, b62(m - 2, 1) + 4);
    }
    t63.check(lhs <= b63(m), {m, n, lhs});
  }
  for (int m = 10; m <= limits.max_m; ++m) {
    const int n = 2 * m;
    int lhs;
    if (m == 10) {
      lhs = base(t64, m, n);
    } else {
      int cont = m - 1 == 10 ? base(t64, 10, 20) : b64(m - 1);
      lhs = max4(b63(m) + 1, cont + 3, b61(m - 2, 2) + 3, b62(m - 2, 2) + 4);
    }
    t64.check(lhs <= b64(m), {m, n, lhs});
  }
  return {t61.finish(), t62.finish(), t63.finish(), t64.finish()};
}

AlphaBracket alpha_bracket(int m, const AdversaryTable& table, const ExactValueFn& exact) {
  if (m < 1) throw std::invalid_argument("alpha_bracket needs m >= 1");
  if (!table.covers(m, m)) {
    throw InsufficientTableError("alpha_bracket needs the table to cover (" + std::to_string(m) +
                                 "," + std::to_string(m) + ")");
  }
  AlphaBracket b;
  // Binary merge beats tape merge from some n on, which caps alpha for every m;
  // M(m,2m) <= 3m-2 needs m >= 3.
  b.hi = m;
  while (hwang_lin_formula(m, b.hi + 1) == m + b.hi) ++b.hi;
  if (m >= 3) b.hi = std::min(b.hi, 2 * m - 1);
  if (m >= 7) b.hi = std::min(b.hi, 2 * m - 3);
  b.lo = m;
  for (int n = m; n <= table.max_n(); ++n) {
    std::optional<int> M = exact ? exact(m, n) : std::nullopt;
    bool tape_optimal = M ? *M == m + n - 1 : table.value({m, n}) == m + n - 1;
    if (tape_optimal) b.lo = n;
  }
  return b;
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = {
      "sym",         "table-bounds", "lemma-3.1-a",    "lemma-3.1-b",     "lemma-3.2",
      "lemma-3.3",   "lemma-3.4-a",  "lemma-3.4-b",    "lemma-3.4-c",     "thm-4.1-a",
      "thm-4.1-b",   "thm-4.1-c",    "thm-4.1-d",      "thm-4.1-e",       "thm-4.1-f",
      "thm-1.1",     "thm-1.2",      "thm-5.1",        "exact-sandwich",  "alpha-bracket",
      "thm-6.1",     "thm-6.2",      "thm-6.3",        "thm-6.4",         "thm-1.3-measure",
      "conj-7.1",    "conj-7.2"};
  return ids;
}

namespace {

std::vector<SuiteReport> run_audit(const VerifyContext& ctx) {
  return audit_upper_recurrences(ctx.audit, default_bases(ctx.audit, ctx.exact));
}

SuiteReport run_one(const std::string& id, const VerifyContext& ctx,
                    const std::vector<SuiteReport>* audit) {
  if (!ctx.table) throw std::invalid_argument("verify needs a table");
  View t{*ctx.table};
  if (id == "sym") return suite_sym(t);
  if (id == "table-bounds") return suite_table_bounds(t);
  if (id == "lemma-3.1-a") return suite_lemma_31a(t);
  if (id == "lemma-3.1-b") return suite_lemma_31b(t);
  if (id == "lemma-3.2") return suite_lemma_32(t);
  if (id == "lemma-3.3") return suite_lemma_33(t);
  if (id.rfind("lemma-3.4-", 0) == 0 && id.size() == 11) return suite_lemma_34(t, id.back());
  if (id.rfind("thm-4.1-", 0) == 0 && id.size() == 9 && id.back() >= 'a' && id.back() <= 'f') {
    return suite_thm41(t, id.back());
  }
  if (id == "thm-1.1") return suite_thm11(t, ctx.max_size);
  if (id == "thm-1.2") return suite_thm12(t, ctx.max_size);
  if (id == "thm-5.1") return suite_thm51(t);
  if (id == "exact-sandwich") return suite_exact_sandwich(ctx);
  if (id == "alpha-bracket") return suite_alpha(ctx);
  if (id == "thm-1.3-measure") return suite_thm13_measure();
  if (id == "conj-7.1") return suite_conj(ctx, 1);
  if (id == "conj-7.2") return suite_conj(ctx, 2);
  for (int k = 1; k <= 4; ++k) {
    if (id == "thm-6." + std::to_string(k)) {
      if (audit) return (*audit)[k - 1];
      return run_audit(ctx)[k - 1];
    }
  }
  throw std::invalid_argument("unknown suite '" + id + "'");
}

}  // namespace

std::vector<SuiteReport> run_suite(const std::string& id, const VerifyContext& ctx) {
  return {run_one(id, ctx, nullptr)};
}

std::vector<SuiteReport> run_suites(const std::string& selection, const VerifyContext& ctx) {
  if (selection != "all") return run_suite(selection, ctx);
  std::vector<SuiteReport> audit = run_audit(ctx);
  std::vector<SuiteReport> out;
  for (const std::string& id : suite_ids()) out.push_back(run_one(id, ctx, &audit));
  return out;
}

std::string report_json(const std::vector<SuiteReport>& reports) {
  nlohmann::ordered_json suites = nlohmann::ordered_json::array();
  for (const SuiteReport& r : reports) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["status"] = to_string(r.status);
    j["checked"] = r.checked;
    j["violations"] = r.violations;
    j["counterexamples"] = r.counterexamples;
    j["exceptions_observed"] = r.exceptions_observed;
    j["trusted"] = r.trusted;
    j["note"] = r.note;
    suites.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["suites"] = std::move(suites);
  return doc.dump(2) + "\n";
}

bool any_failed(const std::vector<SuiteReport>& reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const SuiteReport& r) { return r.status == SuiteStatus::Fail; });
}

}  // namespace merge_lab
