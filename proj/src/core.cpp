#include "merge_lab/core.hpp"

#include <stdexcept>

namespace merge_lab {

std::string_view to_token(Constraint c) {
  switch (c) {
    case Constraint::None:
      return "dot";
    case Constraint::ALessB:
      return "bs";
    case Constraint::AGreaterB:
      return "fs";
  }
  return "dot";
}

std::optional<Constraint> constraint_from_token(std::string_view token) {
  if (token == "dot") return Constraint::None;
  if (token == "bs") return Constraint::ALessB;
  if (token == "fs") return Constraint::AGreaterB;
  return std::nullopt;
}

std::string to_string(const ProblemKey& key) {
  std::string out;
  out += to_token(key.left);
  out += "M";
  out += to_token(key.right);
  out += "(" + std::to_string(key.m) + "," + std::to_string(key.n) + ")";
  return out;
}

ExactInt binomial(int a, int b) {
  if (a < 0 || b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  ExactInt result = 1;
  for (int i = 1; i <= b; ++i) {
    result *= a - b + i;
    result /= i;
  }
  return result;
}

int ceil_log2(const ExactInt& x) {
  if (x <= 0) throw std::invalid_argument("ceil_log2 of a non-positive value");
  if (x == 1) return 0;
  ExactInt y = x - 1;
  return static_cast<int>(boost::multiprecision::msb(y)) + 1;
}

int ceil_log2(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("ceil_log2 of zero");
  if (x == 1) return 0;
  return 64 - __builtin_clzll(x - 1);
}

int info_bound(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("info_bound: negative size");
  return ceil_log2(binomial(m + n, m));
}

ReducedSize reduced_size(const ProblemKey& key) {
  int m = key.m;
  int n = key.n;
  if (key.left == Constraint::ALessB) --m;
  if (key.left == Constraint::AGreaterB) --n;
  if (key.right == Constraint::AGreaterB) --m;
  if (key.right == Constraint::ALessB) --n;
  return {m, n};
}

bool is_well_formed(const ProblemKey& key) {
  if (key.m < 0 || key.n < 0) return false;
  bool constrained = key.left != Constraint::None || key.right != Constraint::None;
  return !constrained || (key.m >= 1 && key.n >= 1);
}

ExactInt extension_count(const ProblemKey& key) {
  if (!is_well_formed(key)) return 0;
  auto [m, n] = reduced_size(key);
  if (m < 0 || n < 0) return 0;
  return binomial(m + n, m);
}

bool is_consistent(const ProblemKey& key) {
  if (!is_well_formed(key)) return false;
  auto [m, n] = reduced_size(key);
  return m >= 0 && n >= 0;
}

bool is_terminal(const ProblemKey& key) {
  if (!is_consistent(key)) return false;
  auto [m, n] = reduced_size(key);
  return m == 0 || n == 0;
}

int floor_log2_ratio(int m, int n) {
  if (m < 1 || m > n) throw std::invalid_argument("floor_log2_ratio requires 1 <= m <= n");
  int t = 0;
  while ((static_cast<long long>(m) << (t + 1)) <= n) ++t;
  return t;
}

int hwang_lin_formula(int m, int n) {
  if (m < 1 || m > n) throw std::invalid_argument("hwang_lin_formula requires 1 <= m <= n");
  int t = floor_log2_ratio(m, n);
  return m * (1 + t) + (n >> t) - 1;
}

int tape_merge_worst(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("tape_merge_worst: negative size");
  return (m > 0 && n > 0) ? m + n - 1 : 0;
}

}  // namespace merge_lab
