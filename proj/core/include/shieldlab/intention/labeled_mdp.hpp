#pragma once

#include <map>
#include <memory>
#include <string>

#include "shieldlab/mdp/reach.hpp"

namespace shieldlab::intention {

// Boolean formula over atomic propositions: names, & | ! and parentheses.
class Formula {
 public:
  static Formula parse(const std::string& text);
  const std::string& text() const { return text_; }

  // Evaluates to the satisfying state set given per-proposition valuations.
  std::vector<std::uint8_t> evaluate(
      const std::map<std::string, std::vector<std::uint8_t>>& valuations,
      int state_count) const;

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

// MDP with atomic propositions and an optional policy restriction (the
// set Pi as per-state allowed-action masks).
class LabeledMdp {
 public:
  LabeledMdp(mdp::Mdp base, std::map<std::string, std::vector<int>> valuation);

  const mdp::Mdp& base() const { return base_; }
  const std::map<std::string, std::vector<int>>& valuation() const {
    return valuation_;
  }

  void set_restriction(std::vector<ActionMask> masks);
  const std::vector<ActionMask>* restriction() const {
    return restriction_.empty() ? nullptr : &restriction_;
  }

  // States satisfying the formula.
  std::vector<int> states_of(const Formula& formula) const;

 private:
  mdp::Mdp base_;
  std::map<std::string, std::vector<int>> valuation_;
  std::vector<ActionMask> restriction_;
};

}  // namespace shieldlab::intention
