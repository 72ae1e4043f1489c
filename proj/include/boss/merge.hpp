#pragma once

#include <vector>

#include "boss/mdp.hpp"

namespace boss {

// MDP over the shared state space whose action set stacks every input
// model's actions: merged action k plays base action (k % A) under model
// (k / A)'s dynamics, rows copied bit-exact. Its optimum dominates each
// input model's optimum.
struct MergedMDP {
  TabularMDP mdp;  // n_actions = n_models * base_actions
  int n_models = 0;
  int base_actions = 0;

  int model_of(int merged_action) const { return merged_action / base_actions; }
  int base_action_of(int merged_action) const { return merged_action % base_actions; }
};

// Throws std::invalid_argument when the models disagree on shape or discount.
MergedMDP merge_models(const std::vector<TabularMDP>& models);

}  // namespace boss
