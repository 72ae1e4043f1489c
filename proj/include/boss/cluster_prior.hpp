#pragma once

#include <vector>

#include "boss/env.hpp"
#include "boss/posterior.hpp"

namespace boss {

// Assignment of states to clusters. Canonical form relabels clusters in
// first-occurrence order, so equal partitions compare equal regardless of
// the labels a sampler happened to use.
struct Clustering {
  std::vector<int> assignment;

  int n_clusters() const;
  std::vector<int> sizes() const;
  void canonicalize();

  friend bool operator==(const Clustering&, const Clustering&) = default;
};

// log p(clustering | alpha) under the Chinese restaurant process:
//   r * log(alpha) + logG(alpha) - logG(alpha + n) + sum_i logG(n_i)
// with r clusters of sizes n_i over n states.
double crp_log_prior(const Clustering& clustering, double alpha);

// Log marginal likelihood of one cluster's outcome counts with the shared
// per-action outcome distribution integrated out against Dirichlet(eta)
// (Dirichlet-compound-multinomial, one factor per action). Includes the
// per-state multinomial coefficient terms, so the value matches direct
// integration of the observation likelihood. counts[member][action][outcome].
double dcm_log_marginal(const std::vector<std::vector<std::vector<int>>>& counts,
                        const std::vector<double>& eta);

struct ClusterPriorConfig {
  double alpha = 0.5;            // CRP concentration
  std::vector<double> eta;       // Dirichlet pseudo-counts; all-ones when empty
  int gibbs_burn = 500;          // sweeps before the first draw of a batch
  int gibbs_thin = 50;           // sweeps between draws within a batch
};

// Nonparametric posterior over chain-style dynamics: a CRP prior couples
// states into clusters whose outcome distributions are learned jointly.
// Cluster assignments are sampled by collapsed Gibbs sweeps; outcome
// probabilities come from the per-cluster posterior-predictive Dirichlet.
class ClusterPosterior final : public PosteriorModel {
 public:
  ClusterPosterior(const OutcomeSpec& outcomes, int n_actions, double discount,
                   ClusterPriorConfig config = {});

  void update(int s, int a, int s_next) override;

  // Fresh data restarts the chain: the first draw after an update reinitializes
  // to a single cluster and burns gibbs_burn sweeps; subsequent draws of the
  // same batch advance the chain by gibbs_thin sweeps each.
  TabularMDP sample_model(Rng& rng) override;

  // Predictive mean under the chain's current clustering (no sweeps).
  TabularMDP mean_model() const override;

  int n_states() const override { return outcomes_.n_states; }
  int n_actions() const override { return n_actions_; }

  // One full sweep in fixed state order; the stored clustering is left
  // canonicalized and returned.
  const Clustering& gibbs_sweep(Rng& rng);

  const Clustering& clustering() const { return clustering_; }
  void set_clustering(Clustering c);
  int outcome_count(int s, int a, int o) const {
    return counts_[(static_cast<std::size_t>(s) * n_actions_ + a) * outcomes_.n_outcomes + o];
  }
  const ClusterPriorConfig& config() const { return config_; }

 private:
  // log DCM factor for one (cluster, action) given pooled counts, without the
  // per-state multinomial coefficients (constant in the clustering, so they
  // cancel when the Gibbs conditional is normalized).
  double pooled_log_term(const std::vector<double>& pooled) const;
  double clustering_log_score(const Clustering& c) const;
  TabularMDP model_from_outcome_probs(const std::vector<double>& probs) const;

  OutcomeSpec outcomes_;
  int n_actions_;
  double discount_;
  ClusterPriorConfig config_;
  std::vector<int> counts_;  // (s * n_actions + a) * n_outcomes + o
  Clustering clustering_;
  bool needs_burn_ = true;
};

}  // namespace boss
