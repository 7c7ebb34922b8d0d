#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace shieldlab {

// Error taxonomy shared by all modules. Callers that feed bad data get
// InvalidInput/InvalidConfig; synthesis routines that cannot produce a
// result throw Infeasible-flavoured errors instead of degrading silently.
struct InvalidInput : std::runtime_error {
  explicit InvalidInput(const std::string& msg) : std::runtime_error(msg) {}
};
struct InvalidConfig : std::runtime_error {
  explicit InvalidConfig(const std::string& msg) : std::runtime_error(msg) {}
};
struct InvalidPolicy : std::runtime_error {
  explicit InvalidPolicy(const std::string& msg) : std::runtime_error(msg) {}
};
struct InfeasibleState : std::runtime_error {
  explicit InfeasibleState(const std::string& msg) : std::runtime_error(msg) {}
};
struct MissingData : std::runtime_error {
  explicit MissingData(const std::string& msg) : std::runtime_error(msg) {}
};
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Action sets are kept as 64-bit masks. Every model in this library has a
// small action alphabet (at most 25); the cap is checked at construction.
using ActionMask = std::uint64_t;

constexpr int kMaxActions = 64;

inline ActionMask full_mask(int action_count) {
  return action_count >= kMaxActions
             ? ~ActionMask{0}
             : (ActionMask{1} << action_count) - 1;
}

inline bool mask_has(ActionMask m, int action) {
  return (m >> action) & 1u;
}

inline int mask_count(ActionMask m) { return __builtin_popcountll(m); }

inline int mask_lowest(ActionMask m) {
  return m == 0 ? -1 : __builtin_ctzll(m);
}

inline std::vector<int> mask_to_actions(ActionMask m) {
  std::vector<int> out;
  while (m != 0) {
    int a = __builtin_ctzll(m);
    out.push_back(a);
    m &= m - 1;
  }
  return out;
}

// Sentinel for "no bound" distances (e.g. robustness in a game where the
// winning region cannot be exited).
constexpr int kUnbounded = std::numeric_limits<int>::max();

// Rounding to nearest integer with exact halves rounded up.
inline long long round_half_up(double x) {
  return static_cast<long long>(std::floor(x + 0.5));
}

}  // namespace shieldlab
