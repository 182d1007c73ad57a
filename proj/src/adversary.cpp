#include "merge_lab/adversary.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include <omp.h>

namespace merge_lab {

std::string to_string(const SplitStrategy& s) {
  std::ostringstream out;
  switch (s.kind) {
    case SplitStrategy::Kind::Simple:
      out << "Simple(" << s.x << "," << s.y << ")";
      break;
    case SplitStrategy::Kind::SharedA:
      out << "SharedA(" << s.x << "," << s.y << ")";
      break;
    case SplitStrategy::Kind::SharedB:
      out << "SharedB(" << s.x << "," << s.y << ")";
      break;
  }
  return out.str();
}

std::pair<ProblemKey, ProblemKey> split_subproblems(const ProblemKey& key,
                                                    const SplitStrategy& s) {
  const int m = key.m;
  const int n = key.n;
  switch (s.kind) {
    case SplitStrategy::Kind::Simple: {
      ProblemKey lower{s.x, s.y, Constraint::None, Constraint::None};
      ProblemKey upper{m - s.x, n - s.y, Constraint::None, Constraint::None};
      if (s.x >= 1 && s.y >= 1) lower.left = key.left;
      if (m - s.x >= 1 && n - s.y >= 1) upper.right = key.right;
      return {lower, upper};
    }
    case SplitStrategy::Kind::SharedA:
      return {ProblemKey{s.x, s.y, key.left, Constraint::AGreaterB},
              ProblemKey{m - s.x + 1, n - s.y, Constraint::ALessB, key.right}};
    case SplitStrategy::Kind::SharedB:
      return {ProblemKey{s.x, s.y, key.left, Constraint::ALessB},
              ProblemKey{m - s.x, n - s.y + 1, Constraint::AGreaterB, key.right}};
  }
  return {};
}

AdversaryTable::AdversaryTable(int max_m, int max_n) : max_m_(max_m), max_n_(max_n) {
  if (max_m < 0 || max_n < 0) throw std::invalid_argument("negative table bounds");
  values_.assign(static_cast<std::size_t>(kConstraintCount * kConstraintCount) *
                     (max_m + 1) * (max_n + 1),
                 kInvalid);
}

std::size_t AdversaryTable::index(const ProblemKey& key) const {
  if (!covers(key.m, key.n)) {
    throw OutOfBoundsError("key " + to_string(key) + " outside table bounds " +
                           std::to_string(max_m_) + "x" + std::to_string(max_n_));
  }
  std::size_t pair = static_cast<std::size_t>(key.left) * kConstraintCount +
                     static_cast<std::size_t>(key.right);
  return (pair * (max_m_ + 1) + key.m) * (max_n_ + 1) + key.n;
}

std::uint16_t AdversaryTable::raw(const ProblemKey& key) const { return values_[index(key)]; }

void AdversaryTable::set_raw(const ProblemKey& key, std::uint16_t value) {
  values_[index(key)] = value;
}

int AdversaryTable::value(const ProblemKey& key) const {
  std::uint16_t v = raw(key);
  if (v == kInvalid) throw InvalidStateError("inconsistent key " + to_string(key));
  return v;
}

int deficiency(const AdversaryTable& table, int m, int n) {
  return tape_merge_worst(m, n) - table.value({m, n, Constraint::None, Constraint::None});
}

namespace {

constexpr int kNone = INT_MIN / 4;

// Dense (rows x cols) grid of ints with out-of-range reads returning kNone.
class Grid {
 public:
  void reset(int rows, int cols) {
    rows_ = rows;
    cols_ = cols;
    data_.assign(static_cast<std::size_t>(rows) * cols, kNone);
  }
  int at(int r, int c) const {
    if (r < 0 || c < 0 || r >= rows_ || c >= cols_) return kNone;
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  int& ref(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> data_;
};

// out(r, c) = max of in(r', c') over r' >= r, c' <= c.
void suffix_prefix_max(const Grid& in, Grid& out) {
  out.reset(in.rows(), in.cols());
  for (int r = in.rows() - 1; r >= 0; --r) {
    for (int c = 0; c < in.cols(); ++c) {
      out.ref(r, c) = std::max({in.at(r, c), out.at(r + 1, c), out.at(r, c - 1)});
    }
  }
}

// out(r, c) = max of in(r', c') over r' <= r, c' >= c.
void prefix_suffix_max(const Grid& in, Grid& out) {
  out.reset(in.rows(), in.cols());
  for (int r = 0; r < in.rows(); ++r) {
    for (int c = in.cols() - 1; c >= 0; --c) {
      out.ref(r, c) = std::max({in.at(r, c), out.at(r - 1, c), out.at(r, c + 1)});
    }
  }
}

struct Scratch {
  Grid simple, simple_less, simple_greater;
  Grid shared_a, shared_a_low, shared_a_high;
  Grid shared_b, shared_b_low, shared_b_high;
};

int lookup(const AdversaryTable& table, const ProblemKey& key) {
  if (!is_consistent(key)) return kNone;
  return table.raw(key);
}

// Best-reply value (without the +1) for every comparison of `key`, written to
// best(i - 1, j - 1). Reads only keys of smaller total size.
void reply_maxima(const AdversaryTable& table, const ProblemKey& key, Scratch& s, Grid& best) {
  const int m = key.m;
  const int n = key.n;
  const Constraint lam = key.left;
  const Constraint rho = key.right;

  // Simple cut (p, q): A1 = a_1..a_p, B1 = b_1..b_q.
  s.simple.reset(m + 1, n + 1);
  for (int p = 0; p <= m; ++p) {
    for (int q = 0; q <= n; ++q) {
      if (lam == Constraint::ALessB && p == 0 && q >= 1) continue;
      if (lam == Constraint::AGreaterB && q == 0 && p >= 1) continue;
      if (rho == Constraint::ALessB && q == n && p < m) continue;
      if (rho == Constraint::AGreaterB && p == m && q < n) continue;
      ProblemKey lower{p, q, (p >= 1 && q >= 1) ? lam : Constraint::None, Constraint::None};
      ProblemKey upper{m - p, n - q, Constraint::None,
                       (m - p >= 1 && n - q >= 1) ? rho : Constraint::None};
      int v1 = lookup(table, lower);
      int v2 = lookup(table, upper);
      if (v1 == kNone || v2 == kNone) continue;
      s.simple.ref(p, q) = v1 + v2;
    }
  }
  suffix_prefix_max(s.simple, s.simple_less);     // p >= i, q <= j - 1: a_i < b_j
  prefix_suffix_max(s.simple, s.simple_greater);  // p <= i - 1, q >= j: a_i > b_j

  // Shared a_k, lower B part b_1..b_q; row index k - 1, column q - 1.
  s.shared_a.reset(m, std::max(n - 1, 0));
  for (int k = 1; k <= m; ++k) {
    for (int q = 1; q <= n - 1; ++q) {
      int v1 = lookup(table, {k, q, lam, Constraint::AGreaterB});
      int v2 = lookup(table, {m - k + 1, n - q, Constraint::ALessB, rho});
      if (v1 == kNone || v2 == kNone) continue;
      s.shared_a.ref(k - 1, q - 1) = v1 + v2;
    }
  }
  suffix_prefix_max(s.shared_a, s.shared_a_high);  // k >= i + 1, q <= j - 1
  prefix_suffix_max(s.shared_a, s.shared_a_low);   // k <= i - 1, q >= j

  // Shared b_l, lower A part a_1..a_p; row index p - 1, column l - 1.
  s.shared_b.reset(std::max(m - 1, 0), n);
  for (int p = 1; p <= m - 1; ++p) {
    for (int l = 1; l <= n; ++l) {
      int v1 = lookup(table, {p, l, lam, Constraint::ALessB});
      int v2 = lookup(table, {m - p, n - l + 1, Constraint::AGreaterB, rho});
      if (v1 == kNone || v2 == kNone) continue;
      s.shared_b.ref(p - 1, l - 1) = v1 + v2;
    }
  }
  suffix_prefix_max(s.shared_b, s.shared_b_high);  // p >= i, l <= j - 1
  prefix_suffix_max(s.shared_b, s.shared_b_low);   // p <= i - 1, l >= j + 1

  best.reset(m, n);
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      int v = std::max({
          s.simple_less.at(i, j - 1),
          s.simple_greater.at(i - 1, j),
          s.shared_a_high.at(i, j - 2),
          s.shared_a_low.at(i - 2, j - 1),
          s.shared_b_high.at(i - 1, j - 2),
          s.shared_b_low.at(i - 2, j),
      });
      best.ref(i - 1, j - 1) = v;
    }
  }
}

int key_value(const AdversaryTable& table, const ProblemKey& key, Scratch& scratch,
              Grid& best) {
  if (game_over(key)) return 0;
  reply_maxima(table, key, scratch, best);
  int result = INT_MAX;
  for (int i = 1; i <= key.m; ++i) {
    for (int j = 1; j <= key.n; ++j) {
      int v = best.at(i - 1, j - 1);
      if (v == kNone) {
        throw NoValidReplyError("no legal adversary reply for comparison a" +
                                std::to_string(i) + ":b" + std::to_string(j) + " at " +
                                to_string(key));
      }
      result = std::min(result, v + 1);
    }
  }
  return result;
}

std::vector<ProblemKey> layer_keys(int max_m, int max_n, int total) {
  std::vector<ProblemKey> keys;
  for (int m = std::max(0, total - max_n); m <= std::min(max_m, total); ++m) {
    int n = total - m;
    for (int l = 0; l < kConstraintCount; ++l) {
      for (int r = 0; r < kConstraintCount; ++r) {
        ProblemKey key{m, n, static_cast<Constraint>(l), static_cast<Constraint>(r)};
        if (is_consistent(key)) keys.push_back(key);
      }
    }
  }
  return keys;
}

}  // namespace

AdversaryTable compute_tables(int max_m, int max_n, const ComputeOptions& options) {
  if (max_m < 1 || max_n < 1) throw std::invalid_argument("table bounds must be >= 1");
  AdversaryTable table(max_m, max_n);
  if (options.threads > 0) omp_set_num_threads(options.threads);

  for (int total = 0; total <= max_m + max_n; ++total) {
    const std::vector<ProblemKey> keys = layer_keys(max_m, max_n, total);
    std::vector<int> values(keys.size());
    std::string failure;

#pragma omp parallel
    {
      Scratch scratch;
      Grid best;
#pragma omp for schedule(dynamic)
      for (std::size_t k = 0; k < keys.size(); ++k) {
        try {
          values[k] = key_value(table, keys[k], scratch, best);
        } catch (const std::exception& e) {
#pragma omp critical
          if (failure.empty()) failure = e.what();
        }
      }
    }
    if (!failure.empty()) throw NoValidReplyError(failure);
    for (std::size_t k = 0; k < keys.size(); ++k) {
      table.set_raw(keys[k], static_cast<std::uint16_t>(values[k]));
    }
  }
  return table;
}

int comparison_value(const AdversaryTable& table, const ProblemKey& key, int i, int j) {
  return adversary_reply(table, key, i, j).value;
}

AdversaryReply adversary_reply(const AdversaryTable& table, const ProblemKey& key, int i,
                               int j) {
  table.raw(key);  // bounds check
  if (!is_consistent(key)) throw InvalidStateError("inconsistent key " + to_string(key));
  if (game_over(key)) throw InvalidStateError("finished key " + to_string(key));
  if (i < 1 || i > key.m || j < 1 || j > key.n) {
    throw std::invalid_argument("comparison index out of range");
  }
  AdversaryReply best;
  bool found = false;
  for_each_legal_reply(
      key, i, j, [](const ProblemKey& k) { return is_consistent(k); },
      [&](const SplitStrategy& s, const ProblemKey& lower, const ProblemKey& upper) {
        int v = 1 + table.value(lower) + table.value(upper);
        if (!found || v > best.value) {
          best = {s, v};
          found = true;
        }
      });
  if (!found) {
    throw NoValidReplyError("no legal adversary reply for comparison a" + std::to_string(i) +
                            ":b" + std::to_string(j) + " at " + to_string(key));
  }
  return best;
}

std::vector<Comparison> best_first_comparisons(const AdversaryTable& table,
                                               const ProblemKey& key) {
  int target = table.value(key);
  if (game_over(key)) throw InvalidStateError("finished key " + to_string(key));
  std::vector<Comparison> out;
  for (int i = 1; i <= key.m; ++i) {
    for (int j = 1; j <= key.n; ++j) {
      if (comparison_value(table, key, i, j) == target) out.push_back({i, j});
    }
  }
  return out;
}

}  // namespace merge_lab
