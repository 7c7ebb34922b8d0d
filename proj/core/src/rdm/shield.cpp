#include "shieldlab/rdm/shield.hpp"

namespace shieldlab::rdm {

ActionMask AgentPolicy::support(const ObsActTrace& history, int obs) const {
  const std::vector<double> w = weights(history, obs);
  if (static_cast<int>(w.size()) != act_alphabet)
    throw InvalidPolicy("agent weight vector has wrong arity");
  ActionMask m = 0;
  for (int a = 0; a < act_alphabet; ++a)
    if (w[a] > 0.0) m |= ActionMask{1} << a;
  if (m == 0) throw InvalidPolicy("agent has empty support");
  return m;
}

std::vector<InterferenceRecord> detect_interference(
    const PreShield& shield, const ObsActTrace& trace,
    const std::vector<int>& proposals) {
  if (proposals.size() != trace.size())
    throw InvalidInput("proposals must have one entry per trace step");
  std::vector<InterferenceRecord> out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const int obs = trace[i].first;
    const ActionMask allowed = shield.allow(trace.prefix(i), obs);
    if (!mask_has(allowed, proposals[i]))
      out.push_back({i, obs, proposals[i]});
  }
  return out;
}

std::vector<InterferenceRecord> detect_interference(
    const PostShield& shield, const ObsActTrace& trace,
    const std::vector<int>& proposals) {
  if (proposals.size() != trace.size())
    throw InvalidInput("proposals must have one entry per trace step");
  std::vector<InterferenceRecord> out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const int obs = trace[i].first;
    if (shield.correct(trace.prefix(i), obs, proposals[i]) != proposals[i])
      out.push_back({i, obs, proposals[i]});
  }
  return out;
}

PreShield transparent_pre_shield(int act_alphabet) {
  if (act_alphabet < 1) throw InvalidInput("alphabet must be nonempty");
  return {act_alphabet, [act_alphabet](const ObsActTrace&, int) {
            return full_mask(act_alphabet);
          }};
}

PostShield transparent_post_shield(int act_alphabet) {
  if (act_alphabet < 1) throw InvalidInput("alphabet must be nonempty");
  return {act_alphabet,
          [](const ObsActTrace&, int, int action) { return action; }};
}

InducedShields induced_shields(
    const AgentPolicy& agent,
    std::optional<std::function<int(const ObsActTrace&, int)>> determinize) {
  PreShield pre{agent.act_alphabet,
                [agent](const ObsActTrace& history, int obs) {
                  return agent.support(history, obs);
                }};
  auto det = determinize.has_value()
                 ? *determinize
                 : [agent](const ObsActTrace& history, int obs) {
                     return mask_lowest(agent.support(history, obs));
                   };
  PostShield post{agent.act_alphabet,
                  [agent, det](const ObsActTrace& history, int obs,
                               int action) {
                    const ActionMask sup = agent.support(history, obs);
                    return mask_has(sup, action) ? action : det(history, obs);
                  }};
  return {std::move(pre), std::move(post)};
}

}  // namespace shieldlab::rdm
