#pragma once

#include "boss/mdp.hpp"
#include "boss/rng.hpp"

namespace boss {

// Updatable belief over the dynamics of a fixed-shape MDP. Rewards are known
// in advance: every emitted model carries the environment's reward tensor,
// only transitions are learned. Emitted models always satisfy the TabularMDP
// invariants.
class PosteriorModel {
 public:
  virtual ~PosteriorModel() = default;

  // Folds one observed transition into the belief.
  virtual void update(int s, int a, int s_next) = 0;

  // Draws a complete MDP from the current posterior.
  virtual TabularMDP sample_model(Rng& rng) = 0;

  // The posterior-mean MDP.
  virtual TabularMDP mean_model() const = 0;

  virtual int n_states() const = 0;
  virtual int n_actions() const = 0;
};

}  // namespace boss
