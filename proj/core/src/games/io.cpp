#include "shieldlab/games/io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace shieldlab::games {

namespace {

std::string register_string(std::size_t code, int len, int act) {
  std::string out;
  for (int i = 0; i < len; ++i) {
    if (i > 0) out += '.';
    out += std::to_string(code % act);
    code /= act;
  }
  return out;
}

std::string mask_string(ActionMask m) {
  std::string out;
  for (int a : mask_to_actions(m)) {
    if (!out.empty()) out += '.';
    out += std::to_string(a);
  }
  return out;
}

}  // namespace

GameGraph read_game(std::istream& in) {
  std::optional<GameGraph> game;
  int env_count = -1, agent_count = -1, action_count = -1;
  std::string line;
  int lineno = 0;

  // Declarations may appear in any order before the first edge.
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (tok == "states") {
      if (!(ls >> env_count >> agent_count))
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected `states <env> <agent>`");
      continue;
    }
    if (tok == "actions") {
      if (!(ls >> action_count))
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected `actions <n>`");
      continue;
    }
    if (!game.has_value()) {
      if (env_count < 0 || action_count < 0)
        throw ParseError("line " + std::to_string(lineno) +
                         ": `states` and `actions` must come first");
      game.emplace(env_count, agent_count, action_count);
    }
    std::string arrow;
    if (tok == "init") {
      int e;
      if (!(ls >> e)) throw ParseError("bad init line");
      game->set_initial(e);
    } else if (tok == "E") {
      int e, s, label = -1;
      std::string kw;
      if (!(ls >> e >> arrow >> s) || arrow != "->")
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected `E <env> -> <agent>`");
      if (ls >> kw) {
        if (kw != "label" || !(ls >> label))
          throw ParseError("line " + std::to_string(lineno) +
                           ": expected `label <int>`");
      }
      game->add_env_edge(e, s, label);
    } else if (tok == "A") {
      int s, a, e;
      if (!(ls >> s >> a >> arrow >> e) || arrow != "->")
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected `A <agent> <action> -> <env>`");
      game->add_agent_edge(s, a, e);
    } else if (tok == "unsafe") {
      std::string side;
      if (!(ls >> side) || (side != "E" && side != "A"))
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected `unsafe E|A <ids>`");
      int id;
      while (ls >> id) {
        if (side == "E")
          game->set_env_unsafe(id);
        else
          game->set_agent_unsafe(id);
      }
    } else {
      throw ParseError("line " + std::to_string(lineno) +
                       ": unknown directive `" + tok + "`");
    }
  }
  if (!game.has_value()) throw ParseError("empty game file");
  game->validate();
  return *std::move(game);
}

GameGraph read_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open game file " + path);
  return read_game(in);
}

void write_game(std::ostream& out, const GameGraph& game) {
  out << "states " << game.env_count() << ' ' << game.agent_count() << '\n';
  out << "actions " << game.action_count() << '\n';
  out << "init " << game.initial() << '\n';
  for (int e = 0; e < game.env_count(); ++e) {
    const auto& succ = game.env_successors(e);
    const auto& labels = game.env_labels(e);
    for (std::size_t i = 0; i < succ.size(); ++i)
      out << "E " << e << " -> " << succ[i] << " label " << labels[i] << '\n';
  }
  for (int s = 0; s < game.agent_count(); ++s)
    for (int a = 0; a < game.action_count(); ++a)
      if (game.agent_successor(s, a) != -1)
        out << "A " << s << ' ' << a << " -> " << game.agent_successor(s, a)
            << '\n';
  for (int e = 0; e < game.env_count(); ++e)
    if (!game.env_safe(e)) out << "unsafe E " << e << '\n';
  for (int s = 0; s < game.agent_count(); ++s)
    if (!game.agent_safe(s)) out << "unsafe A " << s << '\n';
}

void write_game_file(const std::string& path, const GameGraph& game) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write game file " + path);
  write_game(out, game);
}

void write_strategy_csv(std::ostream& out, const MaxPermStrategy& strategy) {
  out << "state,register,allowed-actions\n";
  const int act = strategy.action_count;
  const std::size_t regs = strategy.steady.size() / strategy.agent_count;
  for (int s = 0; s < strategy.agent_count; ++s)
    for (std::size_t code = 0; code < regs; ++code)
      out << s << ',' << register_string(code, strategy.memory, act) << ','
          << mask_string(strategy.steady[s * regs + code]) << '\n';
  for (std::size_t len = 0; len < strategy.transient.size(); ++len) {
    const auto& entries = strategy.transient[len];
    for (std::size_t code = 0; code < entries.size(); ++code)
      out << "eps," << register_string(code, static_cast<int>(len), act)
          << ',' << mask_string(entries[code]) << '\n';
  }
}

void write_strategy_csv_file(const std::string& path,
                             const MaxPermStrategy& strategy) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write strategy file " + path);
  write_strategy_csv(out, strategy);
}

}  // namespace shieldlab::games
