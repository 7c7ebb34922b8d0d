#pragma once

#include <iosfwd>
#include <string>

#include "shieldlab/games/solver.hpp"

namespace shieldlab::games {

// Line-oriented game format:
//
//   # comment
//   states <env_count> <agent_count>
//   actions <action_count>
//   init <env_id>
//   E <env_id> -> <agent_id> [label <int>]
//   A <agent_id> <action_id> -> <env_id>
//   unsafe E <env_id> [<env_id> ...]
//   unsafe A <agent_id> [<agent_id> ...]
GameGraph read_game(std::istream& in);
GameGraph read_game_file(const std::string& path);
void write_game(std::ostream& out, const GameGraph& game);
void write_game_file(const std::string& path, const GameGraph& game);

// Strategy export: CSV `state,register,allowed-actions` with the register
// and the action set both dot-separated (oldest register action first).
// Transient entries use state = "eps".
void write_strategy_csv(std::ostream& out, const MaxPermStrategy& strategy);
void write_strategy_csv_file(const std::string& path,
                             const MaxPermStrategy& strategy);

}  // namespace shieldlab::games
