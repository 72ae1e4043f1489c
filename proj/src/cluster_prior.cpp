#include "boss/cluster_prior.hpp"

#include <algorithm>
#include <string>

#include "boss/math.hpp"

namespace boss {

int Clustering::n_clusters() const {
  std::vector<int> labels(assignment);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return static_cast<int>(labels.size());
}

std::vector<int> Clustering::sizes() const {
  std::vector<int> labels(assignment);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::vector<int> out(labels.size(), 0);
  for (int label : assignment) {
    const auto it = std::lower_bound(labels.begin(), labels.end(), label);
    out[it - labels.begin()] += 1;
  }
  return out;
}

void Clustering::canonicalize() {
  std::vector<int> remap;   // old label -> position = new label
  for (int& label : assignment) {
    const auto it = std::find(remap.begin(), remap.end(), label);
    if (it == remap.end()) {
      remap.push_back(label);
      label = static_cast<int>(remap.size()) - 1;
    } else {
      label = static_cast<int>(it - remap.begin());
    }
  }
}

double crp_log_prior(const Clustering& clustering, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("crp_log_prior: alpha must be positive");
  }
  if (clustering.assignment.empty()) {
    throw std::invalid_argument("crp_log_prior: empty clustering");
  }
  const std::vector<int> sizes = clustering.sizes();
  const int n = static_cast<int>(clustering.assignment.size());
  double log_p = static_cast<double>(sizes.size()) * std::log(alpha) +
                 log_gamma(alpha) - log_gamma(alpha + n);
  for (int size : sizes) log_p += log_gamma(static_cast<double>(size));
  return log_p;
}

double dcm_log_marginal(const std::vector<std::vector<std::vector<int>>>& counts,
                        const std::vector<double>& eta) {
  if (counts.empty()) return 0.0;
  const std::size_t n_actions = counts[0].size();
  const std::size_t n_outcomes = eta.size();
  for (const auto& member : counts) {
    if (member.size() != n_actions) {
      throw std::invalid_argument("dcm_log_marginal: ragged action dimension");
    }
    for (const auto& row : member) {
      if (row.size() != n_outcomes) {
        throw std::invalid_argument("dcm_log_marginal: ragged outcome dimension");
      }
      for (int c : row) {
        if (c < 0) throw std::invalid_argument("dcm_log_marginal: negative count");
      }
    }
  }
  double eta_sum = 0.0;
  double eta_lgamma_sum = 0.0;
  for (double e : eta) {
    if (!(e > 0.0)) {
      throw std::invalid_argument("dcm_log_marginal: eta entries must be positive");
    }
    eta_sum += e;
    eta_lgamma_sum += log_gamma(e);
  }

  double log_p = 0.0;
  for (std::size_t a = 0; a < n_actions; ++a) {
    log_p += log_gamma(eta_sum) - eta_lgamma_sum;
    double pooled_total = 0.0;
    for (std::size_t o = 0; o < n_outcomes; ++o) {
      double pooled = 0.0;
      for (const auto& member : counts) pooled += member[a][o];
      log_p += log_gamma(pooled + eta[o]);
      pooled_total += pooled;
    }
    log_p -= log_gamma(pooled_total + eta_sum);
    // Per-state multinomial coefficients.
    for (const auto& member : counts) {
      double state_total = 0.0;
      for (std::size_t o = 0; o < n_outcomes; ++o) {
        log_p -= log_gamma(member[a][o] + 1.0);
        state_total += member[a][o];
      }
      log_p += log_gamma(state_total + 1.0);
    }
  }
  return log_p;
}

ClusterPosterior::ClusterPosterior(const OutcomeSpec& outcomes, int n_actions,
                                   double discount, ClusterPriorConfig config)
    : outcomes_(outcomes),
      n_actions_(n_actions),
      discount_(discount),
      config_(std::move(config)),
      counts_(static_cast<std::size_t>(outcomes.n_states) * n_actions * outcomes.n_outcomes, 0),
      clustering_{std::vector<int>(outcomes.n_states, 0)} {
  if (config_.eta.empty()) {
    config_.eta.assign(outcomes_.n_outcomes, 1.0);
  }
  if (static_cast<int>(config_.eta.size()) != outcomes_.n_outcomes) {
    throw std::invalid_argument("ClusterPosterior: eta length must equal outcome count");
  }
  for (double e : config_.eta) {
    if (!(e > 0.0)) throw std::invalid_argument("ClusterPosterior: eta entries must be positive");
  }
  if (!(config_.alpha > 0.0)) {
    throw std::invalid_argument("ClusterPosterior: alpha must be positive");
  }
  if (config_.gibbs_burn < 0 || config_.gibbs_thin < 0) {
    throw std::invalid_argument("ClusterPosterior: sweep counts must be non-negative");
  }
}

void ClusterPosterior::update(int s, int a, int s_next) {
  if (s < 0 || s >= outcomes_.n_states || a < 0 || a >= n_actions_ ||
      s_next < 0 || s_next >= outcomes_.n_states) {
    throw std::invalid_argument("ClusterPosterior: index out of range");
  }
  const auto outcome = outcomes_.decode(s, s_next);
  if (!outcome) {
    throw std::invalid_argument("ClusterPosterior: transition (" + std::to_string(s) +
                                " -> " + std::to_string(s_next) +
                                ") does not decode to a unique outcome");
  }
  counts_[(static_cast<std::size_t>(s) * n_actions_ + a) * outcomes_.n_outcomes + *outcome] += 1;
  needs_burn_ = true;
}

double ClusterPosterior::pooled_log_term(const std::vector<double>& pooled) const {
  double eta_sum = 0.0;
  double eta_lgamma_sum = 0.0;
  for (double e : config_.eta) {
    eta_sum += e;
    eta_lgamma_sum += log_gamma(e);
  }
  double term = log_gamma(eta_sum) - eta_lgamma_sum;
  double total = 0.0;
  for (std::size_t o = 0; o < pooled.size(); ++o) {
    term += log_gamma(pooled[o] + config_.eta[o]);
    total += pooled[o];
  }
  term -= log_gamma(total + eta_sum);
  return term;
}

double ClusterPosterior::clustering_log_score(const Clustering& c) const {
  // Joint log score up to terms constant in the clustering: the per-state
  // multinomial coefficients of the full marginal cancel after normalization.
  double score = crp_log_prior(c, config_.alpha);
  std::vector<int> labels(c.assignment);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const int n_out = outcomes_.n_outcomes;
  std::vector<double> pooled(n_out);
  for (int label : labels) {
    for (int a = 0; a < n_actions_; ++a) {
      std::fill(pooled.begin(), pooled.end(), 0.0);
      for (int s = 0; s < outcomes_.n_states; ++s) {
        if (c.assignment[s] != label) continue;
        const std::size_t base = (static_cast<std::size_t>(s) * n_actions_ + a) * n_out;
        for (int o = 0; o < n_out; ++o) pooled[o] += counts_[base + o];
      }
      score += pooled_log_term(pooled);
    }
  }
  return score;
}

const Clustering& ClusterPosterior::gibbs_sweep(Rng& rng) {
  const int n = outcomes_.n_states;
  for (int s = 0; s < n; ++s) {
    // Candidate labels: every cluster present among the other states plus one
    // fresh cluster.
    std::vector<int> candidates;
    int fresh = 0;
    for (int t = 0; t < n; ++t) {
      fresh = std::max(fresh, clustering_.assignment[t] + 1);
      if (t == s) continue;
      if (std::find(candidates.begin(), candidates.end(), clustering_.assignment[t]) ==
          candidates.end()) {
        candidates.push_back(clustering_.assignment[t]);
      }
    }
    candidates.push_back(fresh);

    Clustering proposal = clustering_;
    std::vector<double> logits(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      proposal.assignment[s] = candidates[i];
      logits[i] = clustering_log_score(proposal);
    }
    clustering_.assignment[s] = candidates[rng.categorical_logits(logits)];
  }
  clustering_.canonicalize();
  return clustering_;
}

TabularMDP ClusterPosterior::model_from_outcome_probs(const std::vector<double>& probs) const {
  TabularMDP mdp(outcomes_.n_states, n_actions_, discount_);
  mdp.rewards = outcomes_.reward_tensor(n_actions_);
  const int n_out = outcomes_.n_outcomes;
  for (int s = 0; s < outcomes_.n_states; ++s) {
    for (int a = 0; a < n_actions_; ++a) {
      const std::size_t base = (static_cast<std::size_t>(s) * n_actions_ + a) * n_out;
      for (int o = 0; o < n_out; ++o) {
        mdp.t(s, a, outcomes_.successor(s, o)) += probs[base + o];
      }
    }
  }
  return mdp;
}

TabularMDP ClusterPosterior::sample_model(Rng& rng) {
  if (needs_burn_) {
    clustering_.assignment.assign(outcomes_.n_states, 0);
    for (int i = 0; i < config_.gibbs_burn; ++i) gibbs_sweep(rng);
    needs_burn_ = false;
  } else {
    for (int i = 0; i < config_.gibbs_thin; ++i) gibbs_sweep(rng);
  }

  const int n_out = outcomes_.n_outcomes;
  const int n_clusters = clustering_.n_clusters();
  // One posterior-predictive Dirichlet draw per (cluster, action), shared by
  // every member state.
  std::vector<double> theta(static_cast<std::size_t>(n_clusters) * n_actions_ * n_out);
  std::vector<double> concentration(n_out);
  for (int c = 0; c < n_clusters; ++c) {
    for (int a = 0; a < n_actions_; ++a) {
      std::copy(config_.eta.begin(), config_.eta.end(), concentration.begin());
      for (int s = 0; s < outcomes_.n_states; ++s) {
        if (clustering_.assignment[s] != c) continue;
        const std::size_t base = (static_cast<std::size_t>(s) * n_actions_ + a) * n_out;
        for (int o = 0; o < n_out; ++o) concentration[o] += counts_[base + o];
      }
      rng.dirichlet(concentration,
                    std::span<double>(&theta[(static_cast<std::size_t>(c) * n_actions_ + a) * n_out],
                                      n_out));
    }
  }
  std::vector<double> probs(static_cast<std::size_t>(outcomes_.n_states) * n_actions_ * n_out);
  for (int s = 0; s < outcomes_.n_states; ++s) {
    const int c = clustering_.assignment[s];
    for (int a = 0; a < n_actions_; ++a) {
      const std::size_t dst = (static_cast<std::size_t>(s) * n_actions_ + a) * n_out;
      const std::size_t src = (static_cast<std::size_t>(c) * n_actions_ + a) * n_out;
      for (int o = 0; o < n_out; ++o) probs[dst + o] = theta[src + o];
    }
  }
  return model_from_outcome_probs(probs);
}

TabularMDP ClusterPosterior::mean_model() const {
  const int n_out = outcomes_.n_outcomes;
  std::vector<double> probs(static_cast<std::size_t>(outcomes_.n_states) * n_actions_ * n_out);
  std::vector<double> concentration(n_out);
  for (int s = 0; s < outcomes_.n_states; ++s) {
    const int c = clustering_.assignment[s];
    for (int a = 0; a < n_actions_; ++a) {
      std::copy(config_.eta.begin(), config_.eta.end(), concentration.begin());
      for (int t = 0; t < outcomes_.n_states; ++t) {
        if (clustering_.assignment[t] != c) continue;
        const std::size_t base = (static_cast<std::size_t>(t) * n_actions_ + a) * n_out;
        for (int o = 0; o < n_out; ++o) concentration[o] += counts_[base + o];
      }
      double total = 0.0;
      for (int o = 0; o < n_out; ++o) total += concentration[o];
      const std::size_t dst = (static_cast<std::size_t>(s) * n_actions_ + a) * n_out;
      for (int o = 0; o < n_out; ++o) probs[dst + o] = concentration[o] / total;
    }
  }
  return model_from_outcome_probs(probs);
}

void ClusterPosterior::set_clustering(Clustering c) {
  if (static_cast<int>(c.assignment.size()) != outcomes_.n_states) {
    throw std::invalid_argument("ClusterPosterior: clustering shape mismatch");
  }
  c.canonicalize();
  clustering_ = std::move(c);
}

}  // namespace boss
