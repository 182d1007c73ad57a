#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace merge_lab {

using ExactInt = boost::multiprecision::cpp_int;

// File-system failures (open, read, write); distinct from format errors.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Boundary constraint of a restricted merge problem.
// Left boundary: ALessB means a_1 < b_1, AGreaterB means a_1 > b_1.
// Right boundary: ALessB means a_m < b_n, AGreaterB means a_m > b_n.
enum class Constraint : std::uint8_t { None = 0, ALessB = 1, AGreaterB = 2 };

inline constexpr int kConstraintCount = 3;

// Serialization tokens: "dot", "bs", "fs".
std::string_view to_token(Constraint c);
std::optional<Constraint> constraint_from_token(std::string_view token);

struct ProblemKey {
  int m = 0;
  int n = 0;
  Constraint left = Constraint::None;
  Constraint right = Constraint::None;

  friend bool operator==(const ProblemKey&, const ProblemKey&) = default;
};

std::string to_string(const ProblemKey& key);

ExactInt binomial(int a, int b);

// ceil(lg C(m+n, m)), computed on exact integers.
int info_bound(int m, int n);

// ceil(lg x) for x >= 1.
int ceil_log2(const ExactInt& x);
int ceil_log2(std::uint64_t x);

// Size of the chains after the boundary steps forced by the constraints are
// stripped off; negative when the constraints contradict each other.
struct ReducedSize {
  int m;
  int n;
};
ReducedSize reduced_size(const ProblemKey& key);

// A key with a boundary constraint needs both lists nonempty.
bool is_well_formed(const ProblemKey& key);

// Number of interleavings of the two chains consistent with the constraints.
// Zero for malformed or contradictory keys.
ExactInt extension_count(const ProblemKey& key);

// Both predicates are O(1); they agree with extension_count >= 1 and == 1.
bool is_consistent(const ProblemKey& key);
bool is_terminal(const ProblemKey& key);

// Largest t with m * 2^t <= n. Requires 1 <= m <= n.
int floor_log2_ratio(int m, int n);

// Worst case of the Hwang-Lin binary merge. Requires 1 <= m <= n.
int hwang_lin_formula(int m, int n);

int tape_merge_worst(int m, int n);

}  // namespace merge_lab
