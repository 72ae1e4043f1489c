#include "boss/mdp.hpp"

#include <cmath>

namespace boss {

void TabularMDP::validate(double row_sum_tol) const {
  if (n_states <= 0 || n_actions <= 0) {
    throw std::invalid_argument("TabularMDP: state and action counts must be positive");
  }
  if (!(discount >= 0.0) || !(discount < 1.0)) {
    throw std::invalid_argument("TabularMDP: discount must lie in [0, 1)");
  }
  const std::size_t want = static_cast<std::size_t>(n_states) * n_actions * n_states;
  if (transitions.size() != want || rewards.size() != want) {
    throw std::invalid_argument("TabularMDP: tensor shape mismatch");
  }
  for (int s = 0; s < n_states; ++s) {
    for (int a = 0; a < n_actions; ++a) {
      double row_sum = 0.0;
      for (int j = 0; j < n_states; ++j) {
        const double p = t(s, a, j);
        if (!(p >= 0.0) || !(p <= 1.0)) {
          throw std::invalid_argument("TabularMDP: transition probability outside [0, 1]");
        }
        row_sum += p;
      }
      if (std::abs(row_sum - 1.0) > row_sum_tol) {
        throw std::invalid_argument("TabularMDP: transition row does not sum to 1");
      }
    }
  }
}

double backup_value(const TabularMDP& mdp, const ValueFunction& v, int s, int a) {
  const std::size_t base = mdp.idx(s, a, 0);
  double q = 0.0;
  for (int j = 0; j < mdp.n_states; ++j) {
    q += mdp.transitions[base + j] * (mdp.rewards[base + j] + mdp.discount * v.values[j]);
  }
  return q;
}

ValueFunction value_iteration(const TabularMDP& mdp, double tolerance, int max_iterations) {
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("value_iteration: tolerance must be positive");
  }
  ValueFunction v{std::vector<double>(mdp.n_states, 0.0)};
  ValueFunction next{std::vector<double>(mdp.n_states, 0.0)};
  double residual = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    residual = 0.0;
    for (int s = 0; s < mdp.n_states; ++s) {
      double best = backup_value(mdp, v, s, 0);
      for (int a = 1; a < mdp.n_actions; ++a) {
        best = std::max(best, backup_value(mdp, v, s, a));
      }
      next.values[s] = best;
      residual = std::max(residual, std::abs(best - v.values[s]));
    }
    v.values.swap(next.values);
    if (residual <= tolerance) return v;
  }
  throw ConvergenceError("value_iteration: no fixed point within max_iterations",
                         residual, max_iterations);
}

Policy greedy_policy(const TabularMDP& mdp, const ValueFunction& v) {
  if (static_cast<int>(v.values.size()) != mdp.n_states) {
    throw std::invalid_argument("greedy_policy: value function shape mismatch");
  }
  Policy policy{std::vector<int>(mdp.n_states, 0)};
  for (int s = 0; s < mdp.n_states; ++s) {
    int best_a = 0;
    double best_q = backup_value(mdp, v, s, 0);
    for (int a = 1; a < mdp.n_actions; ++a) {
      const double q = backup_value(mdp, v, s, a);
      if (q > best_q) {
        best_q = q;
        best_a = a;
      }
    }
    policy.actions[s] = best_a;
  }
  return policy;
}

ValueFunction evaluate_policy(const TabularMDP& mdp, const Policy& policy,
                              double tolerance, int max_iterations) {
  if (static_cast<int>(policy.actions.size()) != mdp.n_states) {
    throw std::invalid_argument("evaluate_policy: policy shape mismatch");
  }
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("evaluate_policy: tolerance must be positive");
  }
  ValueFunction v{std::vector<double>(mdp.n_states, 0.0)};
  ValueFunction next{std::vector<double>(mdp.n_states, 0.0)};
  double residual = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    residual = 0.0;
    for (int s = 0; s < mdp.n_states; ++s) {
      const double q = backup_value(mdp, v, s, policy.actions[s]);
      next.values[s] = q;
      residual = std::max(residual, std::abs(q - v.values[s]));
    }
    v.values.swap(next.values);
    if (residual <= tolerance) return v;
  }
  throw ConvergenceError("evaluate_policy: no fixed point within max_iterations",
                         residual, max_iterations);
}

}  // namespace boss
