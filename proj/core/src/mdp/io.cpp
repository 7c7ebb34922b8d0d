#include "shieldlab/mdp/io.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace shieldlab::mdp {

LabeledMdpFile read_mdp(std::istream& in) {
  std::optional<Mdp> mdp;
  std::map<std::string, std::vector<int>> labels;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (tok == "mdp") {
      int states, actions;
      if (!(ls >> states >> actions))
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected `mdp <states> <actions>`");
      mdp.emplace(states, actions);
    } else if (tok == "t") {
      if (!mdp.has_value())
        throw ParseError("transition before the `mdp` header");
      int s, a, succ;
      double p;
      if (!(ls >> s >> a >> succ >> p))
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected `t <s> <a> <s'> <p>`");
      mdp->add_transition(s, a, succ, p);
    } else if (tok == "label") {
      std::string name;
      if (!(ls >> name))
        throw ParseError("line " + std::to_string(lineno) + ": bad label");
      int s;
      while (ls >> s) labels[name].push_back(s);
    } else {
      throw ParseError("line " + std::to_string(lineno) +
                       ": unknown directive `" + tok + "`");
    }
  }
  if (!mdp.has_value()) throw ParseError("missing `mdp` header");
  mdp->validate();
  return {*std::move(mdp), std::move(labels)};
}

LabeledMdpFile read_mdp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open MDP file " + path);
  return read_mdp(in);
}

void write_mdp(std::ostream& out, const Mdp& mdp,
               const std::map<std::string, std::vector<int>>& labels) {
  out << "mdp " << mdp.state_count() << ' ' << mdp.action_count() << '\n';
  out << std::setprecision(17);
  for (int s = 0; s < mdp.state_count(); ++s)
    for (int a = 0; a < mdp.action_count(); ++a)
      for (const auto& e : mdp.row(s, a))
        out << "t " << s << ' ' << a << ' ' << e.succ << ' ' << e.prob
            << '\n';
  for (const auto& [name, states] : labels) {
    out << "label " << name;
    for (int s : states) out << ' ' << s;
    out << '\n';
  }
}

void write_mdp_file(const std::string& path, const Mdp& mdp,
                    const std::map<std::string, std::vector<int>>& labels) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write MDP file " + path);
  write_mdp(out, mdp, labels);
}

void write_prob_shield_csv(std::ostream& out, const Mdp& mdp,
                           const ProbShieldTable& table) {
  out << "state,action,allowed,fallback\n";
  for (int s = 0; s < mdp.state_count(); ++s) {
    const int fb = table.fallback.choice(s).empty()
                       ? -1
                       : table.fallback.choice(s).front().first;
    for (int a = 0; a < mdp.action_count(); ++a) {
      if (!mdp.enabled(s, a)) continue;
      out << s << ',' << a << ',' << (table.is_allowed(s, a) ? 1 : 0) << ','
          << fb << '\n';
    }
  }
}

void write_prob_shield_csv_file(const std::string& path, const Mdp& mdp,
                                const ProbShieldTable& table) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write shield file " + path);
  write_prob_shield_csv(out, mdp, table);
}

}  // namespace shieldlab::mdp
