#pragma once

#include <utility>
#include <vector>

#include "shieldlab/common.hpp"

namespace shieldlab::rdm {

// A finite prefix of an observation-action trace. Observations and actions
// index finite alphabets owned by the model that produced the trace.
class ObsActTrace {
 public:
  ObsActTrace(int obs_alphabet, int act_alphabet)
      : obs_alphabet_(obs_alphabet), act_alphabet_(act_alphabet) {
    if (obs_alphabet < 1 || act_alphabet < 1)
      throw InvalidInput("trace alphabets must be nonempty");
  }

  void push(int obs, int act) {
    if (obs < 0 || obs >= obs_alphabet_)
      throw InvalidInput("observation id out of range");
    if (act < 0 || act >= act_alphabet_)
      throw InvalidInput("action id out of range");
    steps_.emplace_back(obs, act);
  }

  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }
  const std::pair<int, int>& operator[](std::size_t i) const {
    return steps_[i];
  }

  int obs_alphabet() const { return obs_alphabet_; }
  int act_alphabet() const { return act_alphabet_; }

  // The prefix of the first `n` steps.
  ObsActTrace prefix(std::size_t n) const {
    ObsActTrace p(obs_alphabet_, act_alphabet_);
    for (std::size_t i = 0; i < n && i < steps_.size(); ++i)
      p.steps_.push_back(steps_[i]);
    return p;
  }

 private:
  int obs_alphabet_;
  int act_alphabet_;
  std::vector<std::pair<int, int>> steps_;
};

}  // namespace shieldlab::rdm
