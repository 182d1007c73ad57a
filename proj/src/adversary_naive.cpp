#include <climits>
#include <map>
#include <tuple>

#include "merge_lab/adversary.hpp"

namespace merge_lab {

namespace {

// Counts interleavings consistent with the key by walking every lattice path.
// Exponential; only used to decide consistency in the reference DP.
class BruteForceExtensions {
 public:
  long long count(const ProblemKey& key) {
    if (!is_well_formed(key)) return 0;
    auto tag = std::make_tuple(key.m, key.n, static_cast<int>(key.left),
                               static_cast<int>(key.right));
    if (auto it = cache_.find(tag); it != cache_.end()) return it->second;
    long long total = 0;
    std::vector<bool> order;  // true = element of A
    walk(key, 0, 0, order, total);
    cache_.emplace(tag, total);
    return total;
  }

 private:
  static bool satisfies(const ProblemKey& key, const std::vector<bool>& order) {
    if (key.m == 0 || key.n == 0) return true;
    // a_1 < b_1 iff the first element is an a; a_m < b_n iff the last is a b.
    if (key.left == Constraint::ALessB && !order.front()) return false;
    if (key.left == Constraint::AGreaterB && order.front()) return false;
    if (key.right == Constraint::ALessB && order.back()) return false;
    if (key.right == Constraint::AGreaterB && !order.back()) return false;
    return true;
  }

  static void walk(const ProblemKey& key, int a, int b, std::vector<bool>& order,
                   long long& total) {
    if (a == key.m && b == key.n) {
      if (satisfies(key, order)) ++total;
      return;
    }
    if (a < key.m) {
      order.push_back(true);
      walk(key, a + 1, b, order, total);
      order.pop_back();
    }
    if (b < key.n) {
      order.push_back(false);
      walk(key, a, b + 1, order, total);
      order.pop_back();
    }
  }

  std::map<std::tuple<int, int, int, int>, long long> cache_;
};

}  // namespace

AdversaryTable compute_tables_naive(int max_m, int max_n) {
  if (max_m < 1 || max_n < 1) throw std::invalid_argument("table bounds must be >= 1");
  AdversaryTable table(max_m, max_n);
  BruteForceExtensions extensions;
  auto consistent = [&](const ProblemKey& k) { return extensions.count(k) >= 1; };

  for (int total = 0; total <= max_m + max_n; ++total) {
    for (int m = 0; m <= max_m; ++m) {
      int n = total - m;
      if (n < 0 || n > max_n) continue;
      for (int l = 0; l < kConstraintCount; ++l) {
        for (int r = 0; r < kConstraintCount; ++r) {
          ProblemKey key{m, n, static_cast<Constraint>(l), static_cast<Constraint>(r)};
          long long count = extensions.count(key);
          if (count == 0) continue;
          if (m == 0 || n == 0) {
            table.set_raw(key, 0);
            continue;
          }
          int value = INT_MAX;
          for (int i = 1; i <= m; ++i) {
            for (int j = 1; j <= n; ++j) {
              int best = -1;
              for_each_legal_reply(key, i, j, consistent,
                                   [&](const SplitStrategy&, const ProblemKey& lower,
                                       const ProblemKey& upper) {
                                     best = std::max(best, 1 + table.value(lower) +
                                                               table.value(upper));
                                   });
              if (best < 0) {
                throw NoValidReplyError("no legal adversary reply for comparison a" +
                                        std::to_string(i) + ":b" + std::to_string(j) +
                                        " at " + to_string(key));
              }
              value = std::min(value, best);
            }
          }
          table.set_raw(key, static_cast<std::uint16_t>(value));
        }
      }
    }
  }
  return table;
}

}  // namespace merge_lab
