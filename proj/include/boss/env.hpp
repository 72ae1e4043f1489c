#pragma once

#include <optional>
#include <string>
#include <vector>

#include "boss/mdp.hpp"
#include "boss/rng.hpp"

namespace boss {

// Chain-family outcome structure: every state exposes the same small set of
// abstract outcomes (advance / reset), and each (state, outcome) pair names a
// successor and the reward paid when that outcome is realized. Actions differ
// only in how likely they are to realize each outcome. This is the structure
// the tied, semi-tied and cluster priors share.
struct OutcomeSpec {
  int n_states = 0;
  int n_outcomes = 0;
  std::vector<int> successors;   // s * n_outcomes + o
  std::vector<double> rewards;   // s * n_outcomes + o
  std::vector<int> intended;     // per action: the outcome it aims for

  int successor(int s, int o) const { return successors[s * n_outcomes + o]; }
  double reward(int s, int o) const { return rewards[s * n_outcomes + o]; }

  // Recovers the outcome from an observed (s, s_next). Empty when no outcome
  // or more than one outcome reaches s_next from s.
  std::optional<int> decode(int s, int s_next) const;

  // Full (s, a, s_next) reward tensor: the decoded outcome's reward where
  // (s, s_next) decodes, zero on transitions no outcome can produce.
  std::vector<double> reward_tensor(int n_actions) const;
};

enum ChainOutcome : int { kAdvance = 0, kReset = 1 };

struct EnvInstance {
  std::string name;
  TabularMDP mdp;                     // ground truth
  OutcomeSpec outcomes;
  std::vector<double> outcome_probs;  // (s * n_actions + a) * n_outcomes + o
  std::vector<int> true_clusters;     // diagnostic ground truth, per state

  double outcome_prob(int s, int a, int o) const {
    return outcome_probs[(static_cast<std::size_t>(s) * mdp.n_actions + a) *
                             outcomes.n_outcomes + o];
  }
};

struct StepResult {
  double reward;
  int next_state;
  int outcome;
};

// 5-state chain: action 0 advances with probability 0.8 and resets with 0.2,
// action 1 the reverse. Advancing from the last state stays put and pays 10;
// resetting always pays 2; every other outcome pays 0.
EnvInstance make_chain(double discount);

// Chain variant with two behavioral groups: states 0, 2, 4 keep the chain's
// 0.8/0.2 split while states 1 and 3 use 0.3/0.7 for action 0 (0.7/0.3 for
// action 1). Rewards are unchanged.
EnvInstance make_chain2(double discount);

// Simulates one transition of the true MDP, fully determined by the stream.
StepResult env_step(const EnvInstance& env, int state, int action, Rng& rng);

}  // namespace boss
