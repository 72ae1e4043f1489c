#include "boss/env.hpp"

#include <array>

namespace boss {

std::optional<int> OutcomeSpec::decode(int s, int s_next) const {
  std::optional<int> found;
  for (int o = 0; o < n_outcomes; ++o) {
    if (successor(s, o) == s_next) {
      if (found) return std::nullopt;  // ambiguous
      found = o;
    }
  }
  return found;
}

std::vector<double> OutcomeSpec::reward_tensor(int n_actions) const {
  std::vector<double> tensor(
      static_cast<std::size_t>(n_states) * n_actions * n_states, 0.0);
  for (int s = 0; s < n_states; ++s) {
    for (int o = 0; o < n_outcomes; ++o) {
      const int s_next = successor(s, o);
      if (decode(s, s_next) != o) continue;  // skip ambiguous landings
      for (int a = 0; a < n_actions; ++a) {
        tensor[(static_cast<std::size_t>(s) * n_actions + a) * n_states + s_next] =
            reward(s, o);
      }
    }
  }
  return tensor;
}

namespace {

constexpr int kChainStates = 5;
constexpr int kChainActions = 2;
constexpr int kChainOutcomes = 2;

OutcomeSpec chain_outcomes() {
  OutcomeSpec spec;
  spec.n_states = kChainStates;
  spec.n_outcomes = kChainOutcomes;
  spec.successors.resize(kChainStates * kChainOutcomes);
  spec.rewards.resize(kChainStates * kChainOutcomes);
  for (int s = 0; s < kChainStates; ++s) {
    spec.successors[s * 2 + kAdvance] = std::min(s + 1, kChainStates - 1);
    spec.successors[s * 2 + kReset] = 0;
    spec.rewards[s * 2 + kAdvance] = (s == kChainStates - 1) ? 10.0 : 0.0;
    spec.rewards[s * 2 + kReset] = 2.0;
  }
  spec.intended = {kAdvance, kReset};  // action 0 aims to advance, action 1 to reset
  return spec;
}

// Builds the ground-truth MDP from the outcome structure and per-(s, a)
// outcome probabilities so the two representations agree exactly.
EnvInstance assemble(std::string name, double discount,
                     std::vector<double> outcome_probs,
                     std::vector<int> true_clusters) {
  EnvInstance env;
  env.name = std::move(name);
  env.outcomes = chain_outcomes();
  env.outcome_probs = std::move(outcome_probs);
  env.true_clusters = std::move(true_clusters);
  env.mdp = TabularMDP(kChainStates, kChainActions, discount);
  env.mdp.rewards = env.outcomes.reward_tensor(kChainActions);
  for (int s = 0; s < kChainStates; ++s) {
    for (int a = 0; a < kChainActions; ++a) {
      for (int o = 0; o < kChainOutcomes; ++o) {
        env.mdp.t(s, a, env.outcomes.successor(s, o)) += env.outcome_prob(s, a, o);
      }
    }
  }
  return env;
}

}  // namespace

EnvInstance make_chain(double discount) {
  if (!(discount >= 0.0) || !(discount < 1.0)) {
    throw std::invalid_argument("make_chain: discount must lie in [0, 1)");
  }
  std::vector<double> probs(kChainStates * kChainActions * kChainOutcomes);
  for (int s = 0; s < kChainStates; ++s) {
    double* row0 = &probs[(s * kChainActions + 0) * kChainOutcomes];
    double* row1 = &probs[(s * kChainActions + 1) * kChainOutcomes];
    row0[kAdvance] = 0.8;
    row0[kReset] = 0.2;
    row1[kAdvance] = 0.2;
    row1[kReset] = 0.8;
  }
  return assemble("chain", discount, std::move(probs), std::vector<int>(kChainStates, 0));
}

EnvInstance make_chain2(double discount) {
  if (!(discount >= 0.0) || !(discount < 1.0)) {
    throw std::invalid_argument("make_chain2: discount must lie in [0, 1)");
  }
  std::vector<double> probs(kChainStates * kChainActions * kChainOutcomes);
  std::vector<int> clusters(kChainStates);
  for (int s = 0; s < kChainStates; ++s) {
    const bool reversed = (s % 2 == 1);  // states 1 and 3 form the second group
    clusters[s] = reversed ? 1 : 0;
    double* row0 = &probs[(s * kChainActions + 0) * kChainOutcomes];
    double* row1 = &probs[(s * kChainActions + 1) * kChainOutcomes];
    row0[kAdvance] = reversed ? 0.3 : 0.8;
    row0[kReset] = reversed ? 0.7 : 0.2;
    row1[kAdvance] = reversed ? 0.7 : 0.2;
    row1[kReset] = reversed ? 0.3 : 0.8;
  }
  return assemble("chain2", discount, std::move(probs), std::move(clusters));
}

StepResult env_step(const EnvInstance& env, int state, int action, Rng& rng) {
  const int n_out = env.outcomes.n_outcomes;
  const double* row =
      &env.outcome_probs[(static_cast<std::size_t>(state) * env.mdp.n_actions + action) * n_out];
  const int outcome = rng.categorical(std::span<const double>(row, n_out));
  return StepResult{env.outcomes.reward(state, outcome),
                    env.outcomes.successor(state, outcome), outcome};
}

}  // namespace boss
