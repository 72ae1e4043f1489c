#pragma once

#include <span>
#include <vector>

#include "boss/env.hpp"
#include "boss/posterior.hpp"

namespace boss {

// Independent Dirichlet posterior over next states for every (s, a) pair.
// The weakest chain prior: nothing is shared between pairs. Defaults to the
// Jeffreys pseudo-count of 1/2 per next state.
class FullPosterior final : public PosteriorModel {
 public:
  FullPosterior(const OutcomeSpec& outcomes, int n_actions, double discount,
                double prior_pseudo_count = 0.5);

  void update(int s, int a, int s_next) override;
  TabularMDP sample_model(Rng& rng) override;
  TabularMDP mean_model() const override;
  int n_states() const override { return n_states_; }
  int n_actions() const override { return n_actions_; }

  double dirichlet_param(int s, int a, int s_next) const {
    return params_[(static_cast<std::size_t>(s) * n_actions_ + a) * n_states_ + s_next];
  }

 private:
  TabularMDP blank_model() const;

  OutcomeSpec outcomes_;
  int n_states_;
  int n_actions_;
  double discount_;
  std::vector<double> params_;  // pseudo-counts + observed transition counts
};

enum class SlipTying {
  shared,     // one slip probability for all state-action pairs
  per_action  // one slip probability per action
};

// Beta posterior over the slip probability: the chance that an action
// realizes the outcome it does not intend. Dynamics are otherwise known
// through the OutcomeSpec, so a single scalar (or one per action) pins the
// whole transition model. Requires a two-outcome structure.
class SlipPosterior final : public PosteriorModel {
 public:
  SlipPosterior(const OutcomeSpec& outcomes, int n_actions, double discount,
                SlipTying tying, double prior_non_slip = 1.0,
                double prior_slip = 1.0);

  void update(int s, int a, int s_next) override;
  TabularMDP sample_model(Rng& rng) override;
  TabularMDP mean_model() const override;
  int n_states() const override { return outcomes_.n_states; }
  int n_actions() const override { return n_actions_; }

  int n_groups() const { return static_cast<int>(non_slip_.size()); }
  int group_of(int action) const { return tying_ == SlipTying::shared ? 0 : action; }
  double non_slip_count(int group) const { return non_slip_[group]; }
  double slip_count(int group) const { return slip_[group]; }

 private:
  TabularMDP model_for_slip(std::span<const double> slip_by_group) const;

  OutcomeSpec outcomes_;
  int n_actions_;
  double discount_;
  SlipTying tying_;
  std::vector<double> non_slip_;  // per group: intended-outcome count
  std::vector<double> slip_;      // per group: switched-outcome count
};

}  // namespace boss
