#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "shieldlab/mdp/prob_shield.hpp"

namespace shieldlab::mdp {

// Explicit-transition MDP format:
//
//   mdp <state_count> <action_count>
//   t <state> <action> <succ> <prob>
//   label <name> <state> [<state> ...]
struct LabeledMdpFile {
  Mdp mdp{1, 1};
  std::map<std::string, std::vector<int>> labels;
};

LabeledMdpFile read_mdp(std::istream& in);
LabeledMdpFile read_mdp_file(const std::string& path);
void write_mdp(std::ostream& out, const Mdp& mdp,
               const std::map<std::string, std::vector<int>>& labels = {});
void write_mdp_file(const std::string& path, const Mdp& mdp,
                    const std::map<std::string, std::vector<int>>& labels = {});

// Shield export: CSV `state,action,allowed,fallback`.
void write_prob_shield_csv(std::ostream& out, const Mdp& mdp,
                           const ProbShieldTable& table);
void write_prob_shield_csv_file(const std::string& path, const Mdp& mdp,
                                const ProbShieldTable& table);

}  // namespace shieldlab::mdp
