#pragma once

#include "shieldlab/games/fitness.hpp"

namespace shieldlab::games {

// Pre- and post-shields extracted from a maximally permissive strategy and,
// for the post variant, a determinization consistent with it. Queries with
// an empty allowed set raise InfeasibleState: such configurations are not
// reachable when the shield is in charge from the start.
class GamePreShield {
 public:
  explicit GamePreShield(MaxPermStrategy strategy);

  ActionMask allowed(int agent_state, const Register& reg) const;
  ActionMask allowed_transient(const Register& reg) const;
  const MaxPermStrategy& strategy() const { return strategy_; }

 private:
  MaxPermStrategy strategy_;
};

class GamePostShield {
 public:
  GamePostShield(MaxPermStrategy strategy, Determinization determinization);

  // Passes allowed proposals through, replaces the rest by the
  // determinization's choice.
  int correct(int agent_state, const Register& reg, int proposal) const;
  ActionMask allowed(int agent_state, const Register& reg) const;
  const MaxPermStrategy& strategy() const { return strategy_; }

 private:
  MaxPermStrategy strategy_;
  Determinization det_;
};

struct ExtractedShields {
  GamePreShield pre;
  GamePostShield post;
};

// The determinization must pick inside the strategy's allowed sets.
ExtractedShields extract_shields(const MaxPermStrategy& strategy,
                                 const Determinization& determinization);

}  // namespace shieldlab::games
