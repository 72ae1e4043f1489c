#pragma once

#include <memory>
#include <vector>

#include "boss/merge.hpp"
#include "boss/posterior.hpp"

namespace boss {

class Agent {
 public:
  virtual ~Agent() = default;
  virtual int act(int state, Rng& rng) = 0;
  virtual void observe(int state, int action, double reward, int next_state) = 0;
  // True when the preceding act() rebuilt its policy from fresh posterior samples.
  virtual bool resampled_last_act() const { return false; }
};

// Best-of-sampled-set agent: draws `sample_count` models from the posterior
// whenever some (s, a) visit count first reaches `known_threshold`, plans in
// their optimistic merge, and follows the merged policy (decoded back to base
// actions) until the next trigger.
class BossAgent final : public Agent {
 public:
  BossAgent(std::unique_ptr<PosteriorModel> posterior, int sample_count,
            int known_threshold, double plan_tolerance = kDefaultPlanTolerance);

  int act(int state, Rng& rng) override;
  void observe(int state, int action, double reward, int next_state) override;
  bool resampled_last_act() const override { return resampled_last_act_; }

  bool resample_pending() const { return resample_pending_; }
  int resample_events() const { return resample_events_; }
  int visit_count(int s, int a) const {
    return visit_counts_[static_cast<std::size_t>(s) * posterior_->n_actions() + a];
  }
  const Policy& merged_policy() const { return merged_policy_; }
  const MergedMDP& merged_mdp() const { return merged_; }
  PosteriorModel& posterior() { return *posterior_; }

 private:
  void resample_and_plan(Rng& rng);

  std::unique_ptr<PosteriorModel> posterior_;
  int sample_count_;
  int known_threshold_;
  double plan_tolerance_;
  std::vector<int> visit_counts_;  // s * n_actions + a
  MergedMDP merged_;
  Policy merged_policy_;
  bool resample_pending_ = true;  // plan before the very first action
  bool resampled_last_act_ = false;
  int resample_events_ = 0;
};

// Baseline that plans greedily on the posterior-mean model, replanning from
// scratch every step. No deliberate exploration.
class ExploitAgent final : public Agent {
 public:
  ExploitAgent(std::unique_ptr<PosteriorModel> posterior,
               double plan_tolerance = kDefaultPlanTolerance);

  int act(int state, Rng& rng) override;
  void observe(int state, int action, double reward, int next_state) override;

  PosteriorModel& posterior() { return *posterior_; }

 private:
  std::unique_ptr<PosteriorModel> posterior_;
  double plan_tolerance_;
};

class FixedPolicyAgent final : public Agent {
 public:
  explicit FixedPolicyAgent(Policy policy) : policy_(std::move(policy)) {}
  int act(int state, Rng&) override { return policy_.actions[state]; }
  void observe(int, int, double, int) override {}

 private:
  Policy policy_;
};

class UniformRandomAgent final : public Agent {
 public:
  explicit UniformRandomAgent(int n_actions) : n_actions_(n_actions) {}
  int act(int, Rng& rng) override { return rng.uniform_int(n_actions_); }
  void observe(int, int, double, int) override {}

 private:
  int n_actions_;
};

// Number of posterior draws so that, with probability at least 1 - delta,
// some draw is optimistic whenever optimistic models hold at least delta/2
// posterior mass: ceil(log(delta/2) / log(1 - delta/2)).
int optimistic_sample_count(double delta);

}  // namespace boss
