#include "boss/agents.hpp"

#include <cmath>

namespace boss {

BossAgent::BossAgent(std::unique_ptr<PosteriorModel> posterior, int sample_count,
                     int known_threshold, double plan_tolerance)
    : posterior_(std::move(posterior)),
      sample_count_(sample_count),
      known_threshold_(known_threshold),
      plan_tolerance_(plan_tolerance) {
  if (sample_count_ < 1) {
    throw std::invalid_argument("BossAgent: sample count must be at least 1");
  }
  if (known_threshold_ < 1) {
    throw std::invalid_argument("BossAgent: known threshold must be at least 1");
  }
  visit_counts_.assign(
      static_cast<std::size_t>(posterior_->n_states()) * posterior_->n_actions(), 0);
}

void BossAgent::resample_and_plan(Rng& rng) {
  std::vector<TabularMDP> models;
  models.reserve(sample_count_);
  for (int i = 0; i < sample_count_; ++i) {
    models.push_back(posterior_->sample_model(rng));
  }
  merged_ = merge_models(models);
  const ValueFunction v = value_iteration(merged_.mdp, plan_tolerance_);
  merged_policy_ = greedy_policy(merged_.mdp, v);
  resample_pending_ = false;
  ++resample_events_;
}

int BossAgent::act(int state, Rng& rng) {
  resampled_last_act_ = false;
  if (resample_pending_) {
    resample_and_plan(rng);
    resampled_last_act_ = true;
  }
  return merged_.base_action_of(merged_policy_.actions[state]);
}

void BossAgent::observe(int state, int action, double /*reward*/, int next_state) {
  const std::size_t i = static_cast<std::size_t>(state) * posterior_->n_actions() + action;
  visit_counts_[i] += 1;
  posterior_->update(state, action, next_state);
  // Equality, not >=: each pair triggers exactly one resample, when it
  // first becomes known.
  if (visit_counts_[i] == known_threshold_) {
    resample_pending_ = true;
  }
}

ExploitAgent::ExploitAgent(std::unique_ptr<PosteriorModel> posterior, double plan_tolerance)
    : posterior_(std::move(posterior)), plan_tolerance_(plan_tolerance) {}

int ExploitAgent::act(int state, Rng&) {
  const TabularMDP mean = posterior_->mean_model();
  const ValueFunction v = value_iteration(mean, plan_tolerance_);
  const Policy policy = greedy_policy(mean, v);
  return policy.actions[state];
}

void ExploitAgent::observe(int state, int action, double /*reward*/, int next_state) {
  posterior_->update(state, action, next_state);
}

int optimistic_sample_count(double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("optimistic_sample_count: delta must lie in (0, 1)");
  }
  return static_cast<int>(std::ceil(std::log(delta / 2.0) / std::log(1.0 - delta / 2.0)));
}

}  // namespace boss
