#pragma once

// Brute-force references used by the unit tests. Nothing here shares code
// with the library beyond plain data types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

namespace oracle {

// Pascal's triangle in 64-bit arithmetic.
inline std::uint64_t pascal(int a, int b) {
  if (b < 0 || b > a) return 0;
  std::vector<std::vector<std::uint64_t>> row(a + 1, std::vector<std::uint64_t>(a + 1, 0));
  for (int i = 0; i <= a; ++i) {
    row[i][0] = 1;
    for (int j = 1; j <= i; ++j) row[i][j] = row[i - 1][j - 1] + row[i - 1][j];
  }
  return row[a][b];
}

// Smallest c with 2^c >= x, by repeated doubling.
inline int ceil_lg(std::uint64_t x) {
  int c = 0;
  std::uint64_t p = 1;
  while (p < x) {
    p *= 2;
    ++c;
  }
  return c;
}

// All interleavings as A/B patterns (true = element from A), A first.
inline std::vector<std::vector<bool>> patterns(int m, int n) {
  std::vector<std::vector<bool>> out;
  std::vector<bool> cur;
  auto rec = [&](auto& self, int a, int b) -> void {
    if (a == m && b == n) {
      out.push_back(cur);
      return;
    }
    if (a < m) {
      cur.push_back(true);
      self(self, a + 1, b);
      cur.pop_back();
    }
    if (b < n) {
      cur.push_back(false);
      self(self, a, b + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

// rank[i] of a_i and rank of b_j within one pattern (1-based indices).
struct Ranks {
  std::vector<int> a;
  std::vector<int> b;
};
inline Ranks ranks(const std::vector<bool>& p, int m, int n) {
  Ranks r{std::vector<int>(m + 1), std::vector<int>(n + 1)};
  int ia = 0;
  int ib = 0;
  for (int k = 0; k < static_cast<int>(p.size()); ++k) {
    if (p[k]) {
      r.a[++ia] = k;
    } else {
      r.b[++ib] = k;
    }
  }
  return r;
}

// M(m, n) by minimax over sets of still-possible interleavings (bitmask);
// needs C(m+n, m) <= 64.
class SetMinimax {
 public:
  SetMinimax(int m, int n) : m_(m), n_(n) {
    for (const auto& p : patterns(m, n)) r_.push_back(ranks(p, m, n));
  }

  int value() { return value_of(full()); }

  // Value after a list of (i, j, less) answers.
  int value_after(const std::vector<std::tuple<int, int, bool>>& answers) {
    std::uint64_t s = full();
    for (auto [i, j, less] : answers) s = restrict(s, i, j, less);
    return value_of(s);
  }

  std::uint64_t full() const {
    return r_.size() == 64 ? ~0ULL : ((1ULL << r_.size()) - 1);
  }

  std::uint64_t restrict(std::uint64_t s, int i, int j, bool less) const {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < r_.size(); ++k) {
      if (!(s >> k & 1)) continue;
      if ((r_[k].a[i] < r_[k].b[j]) == less) out |= 1ULL << k;
    }
    return out;
  }

  int value_of(std::uint64_t s) {
    if (__builtin_popcountll(s) <= 1) return 0;
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    int best = 1 << 20;
    for (int i = 1; i <= m_; ++i) {
      for (int j = 1; j <= n_; ++j) {
        std::uint64_t lo = restrict(s, i, j, true);
        std::uint64_t hi = s & ~lo;
        if (lo == 0 || hi == 0) continue;
        best = std::min(best, 1 + std::max(value_of(lo), value_of(hi)));
      }
    }
    memo_[s] = best;
    return best;
  }

 private:
  int m_;
  int n_;
  std::vector<Ranks> r_;
  std::map<std::uint64_t, int> memo_;
};

}  // namespace oracle
