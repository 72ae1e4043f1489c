#include "boss/basic_priors.hpp"

#include <string>

namespace boss {

namespace {

void check_indices(int s, int a, int s_next, int n_states, int n_actions) {
  if (s < 0 || s >= n_states || s_next < 0 || s_next >= n_states || a < 0 ||
      a >= n_actions) {
    throw std::invalid_argument("posterior update: index out of range");
  }
}

}  // namespace

FullPosterior::FullPosterior(const OutcomeSpec& outcomes, int n_actions,
                             double discount, double prior_pseudo_count)
    : outcomes_(outcomes),
      n_states_(outcomes.n_states),
      n_actions_(n_actions),
      discount_(discount),
      params_(static_cast<std::size_t>(n_states_) * n_actions_ * n_states_,
              prior_pseudo_count) {
  if (!(prior_pseudo_count > 0.0)) {
    throw std::invalid_argument("FullPosterior: prior pseudo-count must be positive");
  }
}

TabularMDP FullPosterior::blank_model() const {
  TabularMDP mdp(n_states_, n_actions_, discount_);
  mdp.rewards = outcomes_.reward_tensor(n_actions_);
  return mdp;
}

void FullPosterior::update(int s, int a, int s_next) {
  check_indices(s, a, s_next, n_states_, n_actions_);
  params_[(static_cast<std::size_t>(s) * n_actions_ + a) * n_states_ + s_next] += 1.0;
}

TabularMDP FullPosterior::sample_model(Rng& rng) {
  TabularMDP mdp = blank_model();
  for (int s = 0; s < n_states_; ++s) {
    for (int a = 0; a < n_actions_; ++a) {
      const std::size_t base = mdp.idx(s, a, 0);
      rng.dirichlet(std::span<const double>(&params_[base], n_states_),
                    std::span<double>(&mdp.transitions[base], n_states_));
    }
  }
  return mdp;
}

TabularMDP FullPosterior::mean_model() const {
  TabularMDP mdp = blank_model();
  for (int s = 0; s < n_states_; ++s) {
    for (int a = 0; a < n_actions_; ++a) {
      const std::size_t base = mdp.idx(s, a, 0);
      double total = 0.0;
      for (int j = 0; j < n_states_; ++j) total += params_[base + j];
      for (int j = 0; j < n_states_; ++j) mdp.transitions[base + j] = params_[base + j] / total;
    }
  }
  return mdp;
}

SlipPosterior::SlipPosterior(const OutcomeSpec& outcomes, int n_actions,
                             double discount, SlipTying tying,
                             double prior_non_slip, double prior_slip)
    : outcomes_(outcomes),
      n_actions_(n_actions),
      discount_(discount),
      tying_(tying),
      non_slip_(tying == SlipTying::shared ? 1 : n_actions, prior_non_slip),
      slip_(tying == SlipTying::shared ? 1 : n_actions, prior_slip) {
  if (outcomes_.n_outcomes != 2) {
    throw std::invalid_argument("SlipPosterior: requires exactly two outcomes");
  }
  if (static_cast<int>(outcomes_.intended.size()) != n_actions) {
    throw std::invalid_argument("SlipPosterior: intended-outcome map shape mismatch");
  }
  if (!(prior_non_slip > 0.0) || !(prior_slip > 0.0)) {
    throw std::invalid_argument("SlipPosterior: prior counts must be positive");
  }
}

void SlipPosterior::update(int s, int a, int s_next) {
  check_indices(s, a, s_next, outcomes_.n_states, n_actions_);
  const auto outcome = outcomes_.decode(s, s_next);
  if (!outcome) {
    throw std::invalid_argument("SlipPosterior: transition (" + std::to_string(s) +
                                " -> " + std::to_string(s_next) +
                                ") does not decode to a unique outcome");
  }
  const int group = group_of(a);
  if (*outcome == outcomes_.intended[a]) {
    non_slip_[group] += 1.0;
  } else {
    slip_[group] += 1.0;
  }
}

TabularMDP SlipPosterior::model_for_slip(std::span<const double> slip_by_group) const {
  TabularMDP mdp(outcomes_.n_states, n_actions_, discount_);
  mdp.rewards = outcomes_.reward_tensor(n_actions_);
  for (int s = 0; s < outcomes_.n_states; ++s) {
    for (int a = 0; a < n_actions_; ++a) {
      const double w = slip_by_group[group_of(a)];
      const int wanted = outcomes_.intended[a];
      const int other = 1 - wanted;
      mdp.t(s, a, outcomes_.successor(s, wanted)) += 1.0 - w;
      mdp.t(s, a, outcomes_.successor(s, other)) += w;
    }
  }
  return mdp;
}

TabularMDP SlipPosterior::sample_model(Rng& rng) {
  std::vector<double> slips(non_slip_.size());
  for (std::size_t g = 0; g < slips.size(); ++g) {
    slips[g] = rng.beta(slip_[g], non_slip_[g]);
  }
  return model_for_slip(slips);
}

TabularMDP SlipPosterior::mean_model() const {
  std::vector<double> slips(non_slip_.size());
  for (std::size_t g = 0; g < slips.size(); ++g) {
    slips[g] = slip_[g] / (slip_[g] + non_slip_[g]);
  }
  return model_for_slip(slips);
}

}  // namespace boss
