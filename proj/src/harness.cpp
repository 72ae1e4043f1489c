#include "boss/harness.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "boss/basic_priors.hpp"
#include "boss/cluster_prior.hpp"

namespace boss {

std::string to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::chain: return "chain";
    case EnvKind::chain2: return "chain2";
  }
  return "?";
}

std::string to_string(AgentKind kind) {
  switch (kind) {
    case AgentKind::boss: return "boss";
    case AgentKind::exploit: return "exploit";
    case AgentKind::optimal: return "optimal";
    case AgentKind::random: return "random";
  }
  return "?";
}

std::string to_string(PriorKind kind) {
  switch (kind) {
    case PriorKind::full: return "full";
    case PriorKind::tied: return "tied";
    case PriorKind::semi: return "semi";
    case PriorKind::cluster: return "cluster";
  }
  return "?";
}

EnvKind parse_env(const std::string& name) {
  if (name == "chain") return EnvKind::chain;
  if (name == "chain2") return EnvKind::chain2;
  throw std::invalid_argument("unknown environment: " + name);
}

AgentKind parse_agent(const std::string& name) {
  if (name == "boss") return AgentKind::boss;
  if (name == "exploit") return AgentKind::exploit;
  if (name == "optimal") return AgentKind::optimal;
  if (name == "random") return AgentKind::random;
  throw std::invalid_argument("unknown agent: " + name);
}

PriorKind parse_prior(const std::string& name) {
  if (name == "full") return PriorKind::full;
  if (name == "tied") return PriorKind::tied;
  if (name == "semi") return PriorKind::semi;
  if (name == "cluster") return PriorKind::cluster;
  throw std::invalid_argument("unknown prior: " + name);
}

void ExperimentConfig::validate() const {
  if (steps < 1) throw std::invalid_argument("config: steps must be at least 1");
  if (runs < 1) throw std::invalid_argument("config: runs must be at least 1");
  if (!(discount >= 0.0) || !(discount < 1.0)) {
    throw std::invalid_argument("config: gamma must lie in [0, 1)");
  }
  if (agent == AgentKind::boss) {
    if (sample_count < 1) throw std::invalid_argument("config: K must be at least 1");
    if (known_threshold < 1) throw std::invalid_argument("config: B must be at least 1");
  }
  if (prior == PriorKind::cluster) {
    if (!(alpha > 0.0)) throw std::invalid_argument("config: alpha must be positive");
    if (gibbs_burn < 0 || gibbs_thin < 0) {
      throw std::invalid_argument("config: gibbs sweep counts must be non-negative");
    }
  }
  if (threads < 0) throw std::invalid_argument("config: threads must be non-negative");
  if (!(plan_tolerance > 0.0)) {
    throw std::invalid_argument("config: planning tolerance must be positive");
  }
}

EnvInstance make_env(EnvKind kind, double discount) {
  return kind == EnvKind::chain ? make_chain(discount) : make_chain2(discount);
}

std::unique_ptr<PosteriorModel> make_posterior(PriorKind kind, const EnvInstance& env,
                                               const ExperimentConfig& config) {
  switch (kind) {
    case PriorKind::full:
      return std::make_unique<FullPosterior>(env.outcomes, env.mdp.n_actions,
                                             config.discount);
    case PriorKind::tied:
      return std::make_unique<SlipPosterior>(env.outcomes, env.mdp.n_actions,
                                             config.discount, SlipTying::shared);
    case PriorKind::semi:
      return std::make_unique<SlipPosterior>(env.outcomes, env.mdp.n_actions,
                                             config.discount, SlipTying::per_action);
    case PriorKind::cluster: {
      ClusterPriorConfig cluster_config;
      cluster_config.alpha = config.alpha;
      cluster_config.gibbs_burn = config.gibbs_burn;
      cluster_config.gibbs_thin = config.gibbs_thin;
      return std::make_unique<ClusterPosterior>(env.outcomes, env.mdp.n_actions,
                                                config.discount, cluster_config);
    }
  }
  throw std::invalid_argument("make_posterior: unknown prior");
}

std::unique_ptr<Agent> make_agent(const ExperimentConfig& config, const EnvInstance& env) {
  switch (config.agent) {
    case AgentKind::boss:
      return std::make_unique<BossAgent>(make_posterior(config.prior, env, config),
                                         config.sample_count, config.known_threshold,
                                         config.plan_tolerance);
    case AgentKind::exploit:
      return std::make_unique<ExploitAgent>(make_posterior(config.prior, env, config),
                                            config.plan_tolerance);
    case AgentKind::optimal: {
      const ValueFunction v = value_iteration(env.mdp, config.plan_tolerance);
      return std::make_unique<FixedPolicyAgent>(greedy_policy(env.mdp, v));
    }
    case AgentKind::random:
      return std::make_unique<UniformRandomAgent>(env.mdp.n_actions);
  }
  throw std::invalid_argument("make_agent: unknown agent");
}

TrialResult run_trial(const ExperimentConfig& config, int run_id) {
  config.validate();
  try {
    const EnvInstance env = make_env(config.env, config.discount);
    const std::unique_ptr<Agent> agent = make_agent(config, env);
    Rng rng(trial_seed(config.base_seed, static_cast<std::uint64_t>(run_id)));

    TrialResult result;
    result.run_id = run_id;
    if (config.keep_traces) result.trace.reserve(config.steps);
    int state = 0;
    for (int step = 0; step < config.steps; ++step) {
      const int action = agent->act(state, rng);
      const StepResult sr = env_step(env, state, action, rng);
      agent->observe(state, action, sr.reward, sr.next_state);
      result.cum_reward += sr.reward;
      const bool resampled = agent->resampled_last_act();
      if (resampled) result.resample_events += 1;
      if (config.keep_traces) {
        result.trace.push_back(TraceRow{step, state, action, sr.reward, resampled});
      }
      state = sr.next_state;
    }
    return result;
  } catch (const std::exception& e) {
    throw std::runtime_error("trial failed (env=" + to_string(config.env) +
                             ", agent=" + to_string(config.agent) +
                             ", prior=" + to_string(config.prior) +
                             ", run_id=" + std::to_string(run_id) + "): " + e.what());
  }
}

std::vector<TrialResult> run_trials(const ExperimentConfig& config) {
  config.validate();
  int n_workers = config.threads;
  if (n_workers == 0) {
    n_workers = static_cast<int>(std::thread::hardware_concurrency());
    if (n_workers < 1) n_workers = 1;
  }
  n_workers = std::min(n_workers, config.runs);

  std::vector<TrialResult> results(config.runs);
  if (n_workers <= 1) {
    for (int i = 0; i < config.runs; ++i) results[i] = run_trial(config, i);
    return results;
  }

  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (int w = 0; w < n_workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= config.runs) return;
        try {
          results[i] = run_trial(config, i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

Summary summarize(const ExperimentConfig& config, const std::vector<TrialResult>& trials) {
  if (trials.empty()) {
    throw std::invalid_argument("summarize: no trials");
  }
  Summary summary;
  summary.config = config;
  summary.runs = static_cast<int>(trials.size());
  double total = 0.0;
  for (const TrialResult& t : trials) total += t.cum_reward;
  summary.mean_cum_reward = total / summary.runs;
  if (summary.runs > 1) {
    double ss = 0.0;
    for (const TrialResult& t : trials) {
      const double d = t.cum_reward - summary.mean_cum_reward;
      ss += d * d;
    }
    summary.std_err = std::sqrt(ss / (summary.runs - 1)) / std::sqrt(summary.runs);
  }
  return summary;
}

Summary run_experiment(const ExperimentConfig& config) {
  return summarize(config, run_trials(config));
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  return out;
}

}  // namespace

void write_results(const Summary& summary, const std::vector<TrialResult>& trials,
                   const std::filesystem::path& out_stem) {
  if (out_stem.has_parent_path()) {
    std::filesystem::create_directories(out_stem.parent_path());
  }
  const ExperimentConfig& c = summary.config;

  {
    std::ofstream out = open_csv(out_stem.string() + "_summary.csv");
    out << kSummaryHeader << "\n";
    out << to_string(c.env) << ',' << to_string(c.agent) << ',' << to_string(c.prior)
        << ',' << c.sample_count << ',' << c.known_threshold << ','
        << format_double(c.discount) << ',' << c.steps << ',' << summary.runs << ','
        << c.base_seed << ',' << format_double(summary.mean_cum_reward) << ','
        << format_double(summary.std_err) << "\n";
  }
  {
    std::ofstream out = open_csv(out_stem.string() + "_trials.csv");
    out << kTrialsHeader << "\n";
    for (const TrialResult& t : trials) {
      out << t.run_id << ',' << format_double(t.cum_reward) << "\n";
    }
  }
  bool any_trace = false;
  for (const TrialResult& t : trials) any_trace = any_trace || !t.trace.empty();
  if (any_trace) {
    std::ofstream out = open_csv(out_stem.string() + "_trace.csv");
    out << kTraceHeader << "\n";
    for (const TrialResult& t : trials) {
      for (const TraceRow& row : t.trace) {
        out << t.run_id << ',' << row.step + 1 << ',' << row.state + 1 << ','
            << row.action + 1 << ',' << format_double(row.reward) << ','
            << (row.resampled ? 1 : 0) << "\n";
      }
    }
  }
}

}  // namespace boss
