#pragma once

#include <utility>
#include <vector>

#include "congestion/rng.hpp"

namespace congestion {

// Q-learning hyperparameters. Both schedules decay multiplicatively once per
// timestep, shared across all agents.
struct LearnerConfig {
  double alpha0 = 0.1;           // initial learning rate, (0, 1]
  double gamma = 1.0;            // discount factor, [0, 1]
  double epsilon0 = 0.05;        // initial exploration rate, [0, 1]
  double alpha_decay = 0.9999;   // per-timestep multiplier, (0, 1]
  double epsilon_decay = 0.9999; // per-timestep multiplier, (0, 1]
};

// Actions are moves to the adjacent resource or staying put.
inline constexpr int kActionDeltas[] = {-1, 0, +1};
inline constexpr int kNumActions = 3;

// Tabular action values over (resource, action delta). Every entry starts at
// -1 so that unexplored actions look mildly attractive relative to typical
// early rewards.
class QTable {
 public:
  explicit QTable(int num_resources)
      : values_(static_cast<std::size_t>(num_resources) * kNumActions, -1.0) {}

  double get(int resource, int action_delta) const {
    return values_[index(resource, action_delta)];
  }
  void set(int resource, int action_delta, double value) {
    values_[index(resource, action_delta)] = value;
  }
  double max_value(int resource) const {
    const double* row = &values_[index(resource, -1)];
    double best = row[0];
    if (row[1] > best) best = row[1];
    if (row[2] > best) best = row[2];
    return best;
  }
  int num_resources() const {
    return static_cast<int>(values_.size()) / kNumActions;
  }

  bool operator==(const QTable& other) const = default;

 private:
  static std::size_t index(int resource, int action_delta) {
    return static_cast<std::size_t>(resource) * kNumActions + (action_delta + 1);
  }

  std::vector<double> values_;
};

// One independent learner. The agent's state is simply the resource it
// occupies. Non-compliant agents never act or learn; they stand on their
// initial resource and only contribute to attendance.
struct Agent {
  QTable q;
  int position = 0;
  int initial_position = 0;
  bool compliant = true;
};

// Epsilon-greedy action choice from the agent's current Q row. With
// probability epsilon a uniform random action; otherwise the greedy action,
// ties broken uniformly at random. Only for compliant agents. When epsilon is
// zero no exploration draw is consumed.
int select_action(const Agent& agent, double epsilon, Rng& rng);

// One-step Q-learning backup on the (state_before, action_delta) entry:
//   Q += alpha * (reward + gamma * max_a Q(state_after, a) - Q)
void q_update(Agent& agent, int state_before, int action_delta, double reward,
              int state_after, double alpha, double gamma);

// Next (alpha, epsilon) after one timestep of multiplicative decay.
std::pair<double, double> decay_schedules(double alpha, double epsilon,
                                          const LearnerConfig& config);

}  // namespace congestion
