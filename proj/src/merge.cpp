#include "boss/merge.hpp"

#include <algorithm>

namespace boss {

MergedMDP merge_models(const std::vector<TabularMDP>& models) {
  if (models.empty()) {
    throw std::invalid_argument("merge_models: need at least one model");
  }
  const TabularMDP& first = models.front();
  for (const TabularMDP& m : models) {
    if (m.n_states != first.n_states || m.n_actions != first.n_actions ||
        m.discount != first.discount) {
      throw std::invalid_argument("merge_models: models disagree on shape or discount");
    }
  }

  MergedMDP merged;
  merged.n_models = static_cast<int>(models.size());
  merged.base_actions = first.n_actions;
  merged.mdp = TabularMDP(first.n_states, merged.n_models * first.n_actions, first.discount);
  for (int s = 0; s < first.n_states; ++s) {
    for (int i = 0; i < merged.n_models; ++i) {
      for (int j = 0; j < first.n_actions; ++j) {
        const int k = i * first.n_actions + j;
        const std::size_t src = models[i].idx(s, j, 0);
        const std::size_t dst = merged.mdp.idx(s, k, 0);
        std::copy_n(models[i].transitions.begin() + src, first.n_states,
                    merged.mdp.transitions.begin() + dst);
        std::copy_n(models[i].rewards.begin() + src, first.n_states,
                    merged.mdp.rewards.begin() + dst);
      }
    }
  }
  return merged;
}

}  // namespace boss
