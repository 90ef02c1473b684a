#include "congestion/agents.hpp"

#include <cassert>

namespace congestion {

int select_action(const Agent& agent, double epsilon, Rng& rng) {
  assert(agent.compliant);
  if (epsilon > 0.0 && rng.uniform01() < epsilon) {
    return kActionDeltas[rng.uniform_below(kNumActions)];
  }
  // Greedy over the current row; ties broken uniformly so that the all-equal
  // initial table does not bias agents toward one direction.
  double best = agent.q.get(agent.position, kActionDeltas[0]);
  int candidates[kNumActions] = {kActionDeltas[0], 0, 0};
  int num_candidates = 1;
  for (int i = 1; i < kNumActions; ++i) {
    const double value = agent.q.get(agent.position, kActionDeltas[i]);
    if (value > best) {
      best = value;
      candidates[0] = kActionDeltas[i];
      num_candidates = 1;
    } else if (value == best) {
      candidates[num_candidates++] = kActionDeltas[i];
    }
  }
  return num_candidates == 1 ? candidates[0]
                             : candidates[rng.uniform_below(num_candidates)];
}

void q_update(Agent& agent, int state_before, int action_delta, double reward,
              int state_after, double alpha, double gamma) {
  const double bootstrap = agent.q.max_value(state_after);
  const double current = agent.q.get(state_before, action_delta);
  agent.q.set(state_before, action_delta,
              current + alpha * (reward + gamma * bootstrap - current));
}

std::pair<double, double> decay_schedules(double alpha, double epsilon,
                                          const LearnerConfig& config) {
  return {alpha * config.alpha_decay, epsilon * config.epsilon_decay};
}

}  // namespace congestion
