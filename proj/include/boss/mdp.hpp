#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace boss {

struct ConvergenceError : std::runtime_error {
  double residual;
  int iterations;
  ConvergenceError(const std::string& what, double residual_, int iterations_)
      : std::runtime_error(what), residual(residual_), iterations(iterations_) {}
};

// Finite MDP with transition-indexed rewards: the reward for landing in
// s_next from (s, a) is data, not something learned. Tensors are flat,
// indexed (s * n_actions + a) * n_states + s_next.
struct TabularMDP {
  int n_states = 0;
  int n_actions = 0;
  std::vector<double> transitions;
  std::vector<double> rewards;
  double discount = 0.0;

  TabularMDP() = default;
  TabularMDP(int n_states_, int n_actions_, double discount_)
      : n_states(n_states_),
        n_actions(n_actions_),
        transitions(static_cast<std::size_t>(n_states_) * n_actions_ * n_states_, 0.0),
        rewards(static_cast<std::size_t>(n_states_) * n_actions_ * n_states_, 0.0),
        discount(discount_) {}

  std::size_t idx(int s, int a, int s_next) const {
    return (static_cast<std::size_t>(s) * n_actions + a) * n_states + s_next;
  }
  double t(int s, int a, int s_next) const { return transitions[idx(s, a, s_next)]; }
  double& t(int s, int a, int s_next) { return transitions[idx(s, a, s_next)]; }
  double r(int s, int a, int s_next) const { return rewards[idx(s, a, s_next)]; }
  double& r(int s, int a, int s_next) { return rewards[idx(s, a, s_next)]; }

  double expected_reward(int s, int a) const {
    const std::size_t base = idx(s, a, 0);
    double total = 0.0;
    for (int j = 0; j < n_states; ++j) {
      total += transitions[base + j] * rewards[base + j];
    }
    return total;
  }

  // Throws std::invalid_argument when a transition row does not lie on the
  // probability simplex or the discount does not contract.
  void validate(double row_sum_tol = 1e-9) const;
};

struct ValueFunction {
  std::vector<double> values;
};

struct Policy {
  std::vector<int> actions;
};

inline constexpr double kDefaultPlanTolerance = 1e-6;
inline constexpr int kDefaultMaxIterations = 100000;

// One-step lookahead value of (s, a) under v.
double backup_value(const TabularMDP& mdp, const ValueFunction& v, int s, int a);

// Iterates Bellman backups until the sup-norm change of one sweep is at most
// `tolerance`; the returned values then have Bellman residual within
// `tolerance`. Throws ConvergenceError (carrying the last residual) when
// max_iterations sweeps do not suffice.
ValueFunction value_iteration(const TabularMDP& mdp,
                              double tolerance = kDefaultPlanTolerance,
                              int max_iterations = kDefaultMaxIterations);

// Per-state argmax of the one-step backup; ties go to the lowest action index.
Policy greedy_policy(const TabularMDP& mdp, const ValueFunction& v);

// Fixed point of the policy's own backup operator to `tolerance`.
ValueFunction evaluate_policy(const TabularMDP& mdp, const Policy& policy,
                              double tolerance = kDefaultPlanTolerance,
                              int max_iterations = kDefaultMaxIterations);

}  // namespace boss
