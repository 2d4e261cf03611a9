#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "banditlab/gts.hpp"
#include "banditlab/posterior.hpp"
#include "banditlab/rng.hpp"

namespace banditlab {

// Stationary Bernoulli bandit: arm means strictly inside (0,1).
class BernoulliEnv {
 public:
  explicit BernoulliEnv(std::vector<double> true_means);
  int num_arms() const { return static_cast<int>(means_.size()); }
  double mean(int arm) const { return means_.at(static_cast<std::size_t>(arm)); }
  const std::vector<double>& means() const { return means_; }
  int best_arm() const { return best_arm_; }
  double best_mean() const { return means_[static_cast<std::size_t>(best_arm_)]; }

 private:
  std::vector<double> means_;
  int best_arm_ = 0;
};

// Bernoulli reward draw for one arm pull.
int env_step(const BernoulliEnv& env, int arm, RngStream& rng);

// Finitely many contexts, each with its own Bernoulli mean per arm.
// Contexts are drawn i.i.d. from context_weights (uniform by default).
class ContextualEnv {
 public:
  ContextualEnv(int num_contexts, int num_arms, std::vector<double> mean_table,
                std::vector<double> context_weights = {});
  int num_contexts() const { return num_contexts_; }
  int num_arms() const { return num_arms_; }
  double mean(int context, int arm) const;
  int sample_context(RngStream& rng) const;

 private:
  int num_contexts_ = 0;
  int num_arms_ = 0;
  std::vector<double> mean_table_;        // row-major [context][arm]
  std::vector<double> context_weights_;   // normalized
};

int env_step(const ContextualEnv& env, int context, int arm, RngStream& rng);

struct StepRecord {
  int t = 0;        // 1-based step index
  int context = -1; // -1 when the environment has no contexts
  int arm = 0;
  int reward = 0;
  double regret_step = 0.0;
  double regret_cum = 0.0;
};

// Diagnostics captured per step of an information-directed run.
struct IdsStepDiagnostics {
  std::vector<double> alpha;
  std::vector<double> delta;
  std::vector<double> gain;
  double psi = 0.0;
};

struct RunRecord {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::string config_hash;
  int num_arms = 0;
  std::vector<StepRecord> steps;
  std::vector<IdsStepDiagnostics> ids_diagnostics;  // filled for IDS runs

  double final_regret() const {
    return steps.empty() ? 0.0 : steps.back().regret_cum;
  }
  // Cumulative regret after step t (1-based).
  double regret_at(int t) const;
};

enum class BanditAlgorithm { ids, ts };

struct BanditRunOptions {
  double prior_b1 = 1.0;
  double prior_b2 = 1.0;
  int ids_grid_points = 1001;
};

// Full bandit trajectory with pseudo-regret accounting against the best
// fixed arm. Identical (algorithm, env, horizon, seed, options) inputs
// reproduce the record exactly: env and algorithm draws come from separate
// substreams derived from the seed.
RunRecord run_bandit(BanditAlgorithm algorithm, const BernoulliEnv& env,
                     int horizon, std::uint64_t seed,
                     const BanditRunOptions& options = {});

// Trajectory of the expert-weighting algorithm on a contextual environment.
// Pseudo-regret compares against the best expert in hindsight on the
// realized context sequence.
RunRecord run_gts(const ExpertPool& pool, const ContextualEnv& env,
                  int horizon, std::uint64_t seed);

}  // namespace banditlab
