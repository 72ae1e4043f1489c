#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "boss/agents.hpp"
#include "boss/env.hpp"

namespace boss {

enum class EnvKind { chain, chain2 };
enum class AgentKind {
  boss,     // best-of-sampled-set
  exploit,  // posterior-mean planner
  optimal,  // greedy policy of the true model, fixed for the whole trial
  random    // uniform over actions
};
enum class PriorKind { full, tied, semi, cluster };

std::string to_string(EnvKind kind);
std::string to_string(AgentKind kind);
std::string to_string(PriorKind kind);
EnvKind parse_env(const std::string& name);
AgentKind parse_agent(const std::string& name);
PriorKind parse_prior(const std::string& name);

struct ExperimentConfig {
  EnvKind env = EnvKind::chain;
  AgentKind agent = AgentKind::boss;
  PriorKind prior = PriorKind::tied;
  int sample_count = 5;      // models drawn per resample (-K)
  int known_threshold = 10;  // visits before a pair is known (-B)
  double discount = 0.95;
  int steps = 1000;
  int runs = 500;
  std::uint64_t base_seed = 0;
  double alpha = 0.5;        // cluster prior: CRP concentration
  int gibbs_burn = 500;      // cluster prior: sweeps before a batch's first draw
  int gibbs_thin = 50;       // cluster prior: sweeps between draws
  bool keep_traces = false;
  int threads = 1;           // 0 = hardware concurrency
  double plan_tolerance = kDefaultPlanTolerance;

  void validate() const;  // throws std::invalid_argument
};

struct TraceRow {
  int step;    // 0-based; written 1-based
  int state;   // 0-based; written 1-based
  int action;  // 0-based; written 1-based
  double reward;
  bool resampled;
};

struct TrialResult {
  int run_id = 0;
  double cum_reward = 0.0;  // undiscounted sum over the horizon
  int resample_events = 0;
  std::vector<TraceRow> trace;  // kept only when keep_traces is set
};

struct Summary {
  ExperimentConfig config;
  int runs = 0;
  double mean_cum_reward = 0.0;
  double std_err = 0.0;  // sample stddev / sqrt(runs); 0 when runs == 1
};

EnvInstance make_env(EnvKind kind, double discount);
std::unique_ptr<PosteriorModel> make_posterior(PriorKind kind, const EnvInstance& env,
                                               const ExperimentConfig& config);
std::unique_ptr<Agent> make_agent(const ExperimentConfig& config, const EnvInstance& env);

// One seeded trial: fresh environment, posterior and agent; the trial stream
// is derived from (base_seed, run_id) so trials are order-independent.
TrialResult run_trial(const ExperimentConfig& config, int run_id);

// All trials, optionally on a worker pool; results indexed by run_id.
std::vector<TrialResult> run_trials(const ExperimentConfig& config);

Summary summarize(const ExperimentConfig& config, const std::vector<TrialResult>& trials);

Summary run_experiment(const ExperimentConfig& config);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double x);

inline constexpr char kSummaryHeader[] =
    "env,agent,prior,K,B,gamma,steps,runs,seed,mean_cum_reward,std_err";
inline constexpr char kTrialsHeader[] = "run_id,cum_reward";
inline constexpr char kTraceHeader[] = "run_id,step,state,action,reward,resampled";

// Writes <stem>_summary.csv and <stem>_trials.csv, plus <stem>_trace.csv when
// any trial carries a trace. Output is byte-stable for fixed inputs.
void write_results(const Summary& summary, const std::vector<TrialResult>& trials,
                   const std::filesystem::path& out_stem);

}  // namespace boss
