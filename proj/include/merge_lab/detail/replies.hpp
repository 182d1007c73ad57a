#pragma once

// Reply enumeration shared by the serial reference DP and witness extraction.

namespace merge_lab {

namespace detail {

enum class Outcome { Less, Greater, Open };

// Relation between two elements lying on opposite sides of a simple cut.
inline Outcome simple_relation(bool a_lower, bool b_lower) {
  if (a_lower && !b_lower) return Outcome::Less;
  if (!a_lower && b_lower) return Outcome::Greater;
  return Outcome::Open;
}

inline bool admits(Constraint c, Outcome o) {
  if (c == Constraint::None) return true;
  if (o == Outcome::Less) return c == Constraint::ALessB;
  if (o == Outcome::Greater) return c == Constraint::AGreaterB;
  return false;
}

}  // namespace detail

template <typename Consistent, typename Visit>
void for_each_legal_reply(const ProblemKey& key, int i, int j, Consistent&& consistent,
                          Visit&& visit) {
  using detail::Outcome;
  const int m = key.m;
  const int n = key.n;

  // Simple cuts: A1 = a_1..a_x, B1 = b_1..b_y.
  for (int x = 0; x <= m; ++x) {
    for (int y = 0; y <= n; ++y) {
      if (detail::simple_relation(i <= x, j <= y) == Outcome::Open) continue;

      ProblemKey lower{x, y, Constraint::None, Constraint::None};
      ProblemKey upper{m - x, n - y, Constraint::None, Constraint::None};

      if (key.left != Constraint::None) {
        bool a1_lower = 1 <= x;
        bool b1_lower = 1 <= y;
        if (a1_lower && b1_lower) {
          lower.left = key.left;
        } else if (!a1_lower && !b1_lower) {
          upper.left = key.left;
        } else if (!detail::admits(key.left, detail::simple_relation(a1_lower, b1_lower))) {
          continue;
        }
      }
      if (key.right != Constraint::None) {
        bool am_lower = m <= x;
        bool bn_lower = n <= y;
        if (!am_lower && !bn_lower) {
          upper.right = key.right;
        } else if (am_lower && bn_lower) {
          lower.right = key.right;
        } else if (!detail::admits(key.right, detail::simple_relation(am_lower, bn_lower))) {
          continue;
        }
      }
      if (!consistent(lower) || !consistent(upper)) continue;
      visit(SplitStrategy{SplitStrategy::Kind::Simple, x, y}, lower, upper);
    }
  }

  // a_x shared: a_1..a_x with b_1..b_y (a_x > b_y), a_x..a_m with b_{y+1}..b_n
  // (a_x < b_{y+1}). A shared a_i would meet b_j inside one part, so x != i.
  for (int x = 1; x <= m; ++x) {
    if (x == i) continue;
    for (int y = 1; y <= n - 1; ++y) {
      if (i < x ? j <= y : j > y) continue;
      ProblemKey lower{x, y, key.left, Constraint::AGreaterB};
      ProblemKey upper{m - x + 1, n - y, Constraint::ALessB, key.right};
      if (!consistent(lower) || !consistent(upper)) continue;
      visit(SplitStrategy{SplitStrategy::Kind::SharedA, x, y}, lower, upper);
    }
  }

  // b_y shared: a_1..a_x with b_1..b_y (a_x < b_y), a_{x+1}..a_m with b_y..b_n
  // (a_{x+1} > b_y). Likewise y != j.
  for (int x = 1; x <= m - 1; ++x) {
    for (int y = 1; y <= n; ++y) {
      if (y == j) continue;
      if (i <= x ? j < y : j > y) continue;
      ProblemKey lower{x, y, key.left, Constraint::ALessB};
      ProblemKey upper{m - x, n - y + 1, Constraint::AGreaterB, key.right};
      if (!consistent(lower) || !consistent(upper)) continue;
      visit(SplitStrategy{SplitStrategy::Kind::SharedB, x, y}, lower, upper);
    }
  }
}

}  // namespace merge_lab
