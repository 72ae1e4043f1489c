#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "boss/agents.hpp"
#include "boss/basic_priors.hpp"
#include "boss/env.hpp"
#include "boss/merge.hpp"
#include "test_util.hpp"

using namespace boss;

namespace {

// A posterior pinned (numerically) to the true chain dynamics.
std::unique_ptr<SlipPosterior> concentrated_chain_posterior(const EnvInstance& env) {
  return std::make_unique<SlipPosterior>(env.outcomes, 2, 0.95, SlipTying::shared,
                                         8e8, 2e8);  // slip 0.2, negligible spread
}

}  // namespace

TEST_CASE("merge: a single model is only relabeled") {
  const EnvInstance env = make_chain2(0.95);
  const MergedMDP merged = merge_models({env.mdp});
  CHECK(merged.mdp.n_actions == 2);
  CHECK(merged.mdp.transitions == env.mdp.transitions);
  CHECK(merged.mdp.rewards == env.mdp.rewards);
  const ValueFunction direct = value_iteration(env.mdp);
  const ValueFunction via_merge = value_iteration(merged.mdp);
  CHECK(direct.values == via_merge.values);
}

TEST_CASE("merge: the optimistic union picks the better of two models") {
  // state 1 is absorbing and pays 1; model A reaches it surely, model B never
  TabularMDP a(2, 1, 0.9);
  a.t(0, 0, 1) = 1.0;
  a.t(1, 0, 1) = 1.0;
  a.r(1, 0, 1) = 1.0;
  TabularMDP b = a;
  b.t(0, 0, 1) = 0.0;
  b.t(0, 0, 0) = 1.0;

  const MergedMDP merged = merge_models({b, a});
  CHECK(merged.mdp.n_actions == 2);
  const ValueFunction v = value_iteration(merged.mdp, 1e-9);
  CHECK(std::abs(v.values[1] - 10.0) <= 1e-6);  // 1 / (1 - 0.9)
  CHECK(std::abs(v.values[0] - 9.0) <= 1e-6);   // model A's optimum: 0.9 * 10
  const Policy policy = greedy_policy(merged.mdp, v);
  CHECK(merged.model_of(policy.actions[0]) == 1);  // prefers the reaching model
  CHECK(merged.base_action_of(policy.actions[0]) == 0);
}

TEST_CASE("merge: decode map and row copies are exact") {
  const EnvInstance env = make_chain(0.95);
  FullPosterior posterior(env.outcomes, 2, 0.95);
  Rng rng(17);
  std::vector<TabularMDP> models;
  for (int i = 0; i < 3; ++i) models.push_back(posterior.sample_model(rng));
  const MergedMDP merged = merge_models(models);
  CHECK(merged.n_models == 3);
  CHECK(merged.base_actions == 2);
  for (int k = 0; k < merged.mdp.n_actions; ++k) {
    const int i = merged.model_of(k);
    const int j = merged.base_action_of(k);
    CHECK(k == i * 2 + j);
    for (int s = 0; s < 5; ++s) {
      for (int t = 0; t < 5; ++t) {
        CHECK(merged.mdp.t(s, k, t) == models[i].t(s, j, t));
        CHECK(merged.mdp.r(s, k, t) == models[i].r(s, j, t));
      }
    }
  }
}

TEST_CASE("merge rejects mismatched shapes") {
  CHECK_THROWS_AS(merge_models({}), std::invalid_argument);
  const EnvInstance chain = make_chain(0.95);
  TabularMDP other(4, 2, 0.95);
  CHECK_THROWS_AS(merge_models({chain.mdp, other}), std::invalid_argument);
  TabularMDP discount_mismatch = chain.mdp;
  discount_mismatch.discount = 0.9;
  CHECK_THROWS_AS(merge_models({chain.mdp, discount_mismatch}), std::invalid_argument);
}

TEST_CASE("merged optimum dominates every sampled model's optimum") {
  const double tol = 1e-6;
  const EnvInstance env = make_chain(0.95);
  FullPosterior posterior(env.outcomes, 2, 0.95);
  Rng data_rng(23);
  int s = 0;
  for (int i = 0; i < 300; ++i) {
    const int a = data_rng.uniform_int(2);
    const StepResult sr = env_step(env, s, a, data_rng);
    posterior.update(s, a, sr.next_state);
    s = sr.next_state;
  }
  Rng rng(29);
  for (int batch = 0; batch < 10; ++batch) {
    std::vector<TabularMDP> models;
    for (int i = 0; i < 5; ++i) models.push_back(posterior.sample_model(rng));
    const ValueFunction merged_v = value_iteration(merge_models(models).mdp, tol);
    for (const TabularMDP& model : models) {
      const ValueFunction v = value_iteration(model, tol);
      for (int state = 0; state < 5; ++state) {
        CHECK(merged_v.values[state] >= v.values[state] - 2.0 * tol);
      }
    }
  }
}

TEST_CASE("boss agent plans before its first action and then holds the policy") {
  const EnvInstance env = make_chain(0.95);
  BossAgent agent(concentrated_chain_posterior(env), 5, 1000000000);
  Rng rng(101);
  CHECK(agent.resample_pending());
  CHECK(agent.resample_events() == 0);
  int s = 0;
  for (int t = 0; t < 1000; ++t) {
    const int a = agent.act(s, rng);
    CHECK(a == 0);  // concentrated posterior: always advance
    if (t == 0) CHECK(agent.resampled_last_act());
    if (t > 0) CHECK_FALSE(agent.resampled_last_act());
    const StepResult sr = env_step(env, s, a, rng);
    agent.observe(s, a, sr.reward, sr.next_state);
    s = sr.next_state;
  }
  CHECK(agent.resample_events() == 1);  // the threshold never fires
}

TEST_CASE("boss agent fires exactly when a count first reaches the threshold") {
  const EnvInstance env = make_chain(0.95);
  BossAgent agent(concentrated_chain_posterior(env), 2, 3);
  Rng rng(7);
  (void)agent.act(0, rng);  // initial plan
  CHECK_FALSE(agent.resample_pending());

  agent.observe(0, 0, 0.0, 1);
  agent.observe(0, 0, 0.0, 1);
  CHECK_FALSE(agent.resample_pending());  // count 2 of 3
  agent.observe(0, 0, 0.0, 1);
  CHECK(agent.resample_pending());  // count 3: fires
  CHECK(agent.visit_count(0, 0) == 3);

  (void)agent.act(1, rng);
  CHECK_FALSE(agent.resample_pending());
  agent.observe(0, 0, 0.0, 1);  // count 4: equality has passed, no refire
  CHECK_FALSE(agent.resample_pending());
  CHECK(agent.visit_count(0, 0) == 4);
  CHECK(agent.resample_events() == 2);
}

TEST_CASE("boss agent keeps feeding the posterior beyond the threshold") {
  const EnvInstance env = make_chain(0.95);
  auto posterior = std::make_unique<SlipPosterior>(env.outcomes, 2, 0.95, SlipTying::shared);
  SlipPosterior* raw = posterior.get();
  BossAgent agent(std::move(posterior), 1, 2);
  Rng rng(13);
  (void)agent.act(0, rng);
  for (int i = 0; i < 6; ++i) agent.observe(0, 0, 0.0, 1);
  // prior Beta(1,1) plus six intended transitions
  CHECK(raw->non_slip_count(0) == 7.0);
}

TEST_CASE("boss actions always decode into the base range") {
  const EnvInstance env = make_chain2(0.95);
  BossAgent agent(std::make_unique<FullPosterior>(env.outcomes, 2, 0.95), 7, 3);
  Rng rng(3131);
  int s = 0;
  for (int t = 0; t < 300; ++t) {
    const int a = agent.act(s, rng);
    CHECK(a >= 0);
    CHECK(a < 2);
    const StepResult sr = env_step(env, s, a, rng);
    agent.observe(s, a, sr.reward, sr.next_state);
    s = sr.next_state;
  }
  CHECK(agent.merged_mdp().mdp.n_actions == 14);
  CHECK(agent.merged_policy().actions.size() == 5);
}

TEST_CASE("boss agent rejects degenerate parameters") {
  const EnvInstance env = make_chain(0.95);
  CHECK_THROWS_AS(
      BossAgent(std::make_unique<FullPosterior>(env.outcomes, 2, 0.95), 0, 10),
      std::invalid_argument);
  CHECK_THROWS_AS(
      BossAgent(std::make_unique<FullPosterior>(env.outcomes, 2, 0.95), 5, 0),
      std::invalid_argument);
}

TEST_CASE("exploit agent follows the posterior-mean optimum") {
  const EnvInstance env = make_chain(0.95);
  Rng rng(1);

  ExploitAgent concentrated(concentrated_chain_posterior(env));
  for (int s = 0; s < 5; ++s) CHECK(concentrated.act(s, rng) == 0);

  // no data: actions are well-defined and deterministic under the tie-break
  ExploitAgent fresh(std::make_unique<FullPosterior>(env.outcomes, 2, 0.95));
  for (int s = 0; s < 5; ++s) {
    const int a = fresh.act(s, rng);
    CHECK(a >= 0);
    CHECK(a < 2);
    CHECK(fresh.act(s, rng) == a);
  }
}

TEST_CASE("exploit agent with Beta(9,3) matches planning on the explicit mean model") {
  const EnvInstance env = make_chain(0.95);
  auto posterior = std::make_unique<SlipPosterior>(env.outcomes, 2, 0.95,
                                                   SlipTying::shared, 9.0, 3.0);
  ExploitAgent agent(std::move(posterior));

  // hand-built chain with slip 1/4
  TabularMDP by_hand(5, 2, 0.95);
  by_hand.rewards = env.mdp.rewards;
  for (int s = 0; s < 5; ++s) {
    by_hand.t(s, 0, env.outcomes.successor(s, kAdvance)) += 0.75;
    by_hand.t(s, 0, env.outcomes.successor(s, kReset)) += 0.25;
    by_hand.t(s, 1, env.outcomes.successor(s, kReset)) += 0.75;
    by_hand.t(s, 1, env.outcomes.successor(s, kAdvance)) += 0.25;
  }
  const Policy expected = greedy_policy(by_hand, value_iteration(by_hand));
  Rng rng(2);
  for (int s = 0; s < 5; ++s) CHECK(agent.act(s, rng) == expected.actions[s]);
}

TEST_CASE("optimistic sample count evaluates the closed form") {
  CHECK(optimistic_sample_count(0.1) == 59);
  CHECK(optimistic_sample_count(0.999999) <= 2);  // approaches 1 in the limit
  CHECK(optimistic_sample_count(0.01) > optimistic_sample_count(0.1));
  CHECK_THROWS_AS(optimistic_sample_count(0.0), std::invalid_argument);
  CHECK_THROWS_AS(optimistic_sample_count(1.0), std::invalid_argument);
  CHECK_THROWS_AS(optimistic_sample_count(-0.5), std::invalid_argument);
}
