#include "banditlab/simenv.hpp"

#include <algorithm>
#include <stdexcept>

#include "banditlab/ids.hpp"
#include "banditlab/thompson.hpp"

namespace banditlab {

BernoulliEnv::BernoulliEnv(std::vector<double> true_means)
    : means_(std::move(true_means)) {
  if (means_.size() < 2) {
    throw std::invalid_argument("BernoulliEnv: need at least 2 arms");
  }
  for (double m : means_) {
    if (!(m > 0.0) || !(m < 1.0)) {
      throw std::invalid_argument("BernoulliEnv: means must be in (0,1)");
    }
  }
  best_arm_ = static_cast<int>(
      std::max_element(means_.begin(), means_.end()) - means_.begin());
}

int env_step(const BernoulliEnv& env, int arm, RngStream& rng) {
  if (arm < 0 || arm >= env.num_arms()) {
    throw std::out_of_range("env_step: arm out of range");
  }
  return rng.bernoulli(env.mean(arm));
}

ContextualEnv::ContextualEnv(int num_contexts, int num_arms,
                             std::vector<double> mean_table,
                             std::vector<double> context_weights)
    : num_contexts_(num_contexts),
      num_arms_(num_arms),
      mean_table_(std::move(mean_table)),
      context_weights_(std::move(context_weights)) {
  if (num_contexts_ < 1 || num_arms_ < 1) {
    throw std::invalid_argument("ContextualEnv: need >= 1 context and arm");
  }
  if (mean_table_.size() != static_cast<std::size_t>(num_contexts_) *
                                static_cast<std::size_t>(num_arms_)) {
    throw std::invalid_argument("ContextualEnv: mean table size mismatch");
  }
  for (double m : mean_table_) {
    if (!(m >= 0.0) || !(m <= 1.0)) {
      throw std::invalid_argument("ContextualEnv: means must be in [0,1]");
    }
  }
  if (context_weights_.empty()) {
    context_weights_.assign(static_cast<std::size_t>(num_contexts_),
                            1.0 / num_contexts_);
  } else {
    if (context_weights_.size() != static_cast<std::size_t>(num_contexts_)) {
      throw std::invalid_argument("ContextualEnv: weight size mismatch");
    }
    double sum = 0.0;
    for (double w : context_weights_) {
      if (!(w >= 0.0)) {
        throw std::invalid_argument("ContextualEnv: negative context weight");
      }
      sum += w;
    }
    if (!(sum > 0.0)) {
      throw std::invalid_argument("ContextualEnv: weights sum to zero");
    }
    for (double& w : context_weights_) w /= sum;
  }
}

double ContextualEnv::mean(int context, int arm) const {
  if (context < 0 || context >= num_contexts_ || arm < 0 || arm >= num_arms_) {
    throw std::out_of_range("ContextualEnv::mean: index out of range");
  }
  return mean_table_[static_cast<std::size_t>(context) *
                         static_cast<std::size_t>(num_arms_) +
                     static_cast<std::size_t>(arm)];
}

int ContextualEnv::sample_context(RngStream& rng) const {
  return rng.categorical(context_weights_);
}

int env_step(const ContextualEnv& env, int context, int arm, RngStream& rng) {
  return rng.bernoulli(env.mean(context, arm));
}

double RunRecord::regret_at(int t) const {
  if (t < 1 || t > static_cast<int>(steps.size())) {
    throw std::out_of_range("RunRecord::regret_at: t out of range");
  }
  return steps[static_cast<std::size_t>(t) - 1].regret_cum;
}

RunRecord run_bandit(BanditAlgorithm algorithm, const BernoulliEnv& env,
                     int horizon, std::uint64_t seed,
                     const BanditRunOptions& options) {
  if (horizon < 1) throw std::invalid_argument("run_bandit: horizon must be >= 1");
  if (options.ids_grid_points < 3) {
    throw std::invalid_argument("run_bandit: grid needs >= 3 points");
  }

  RunRecord rec;
  rec.algorithm = algorithm == BanditAlgorithm::ids ? "ids" : "ts";
  rec.seed = seed;
  rec.num_arms = env.num_arms();
  rec.steps.reserve(static_cast<std::size_t>(horizon));

  RngStream env_rng = make_stream(seed, "env");
  RngStream algo_rng = make_stream(seed, "algo");

  BetaPosterior state = BetaPosterior::with_prior(
      env.num_arms(), options.prior_b1, options.prior_b2);
  Grid grid = algorithm == BanditAlgorithm::ids
                  ? Grid::uniform(options.ids_grid_points - 1)
                  : Grid::uniform(2);

  double regret_cum = 0.0;
  for (int t = 1; t <= horizon; ++t) {
    int arm;
    if (algorithm == BanditAlgorithm::ids) {
      IdsDecision d = ids_select_arm(state, grid, algo_rng);
      arm = d.arm;
      IdsStepDiagnostics diag;
      diag.alpha = std::move(d.quantities.alpha);
      diag.delta = std::move(d.quantities.delta);
      diag.gain = std::move(d.quantities.gain);
      diag.psi = d.psi;
      rec.ids_diagnostics.push_back(std::move(diag));
    } else {
      arm = ts_select_arm(state, algo_rng);
    }
    int reward = env_step(env, arm, env_rng);
    state = state.updated(arm, reward);

    StepRecord s;
    s.t = t;
    s.context = -1;
    s.arm = arm;
    s.reward = reward;
    s.regret_step = env.best_mean() - env.mean(arm);
    regret_cum += s.regret_step;
    s.regret_cum = regret_cum;
    rec.steps.push_back(s);
  }
  return rec;
}

RunRecord run_gts(const ExpertPool& pool, const ContextualEnv& env,
                  int horizon, std::uint64_t seed) {
  if (horizon < 1) throw std::invalid_argument("run_gts: horizon must be >= 1");
  if (pool.num_arms() != env.num_arms() ||
      pool.num_contexts() != env.num_contexts()) {
    throw std::invalid_argument("run_gts: pool/env shape mismatch");
  }

  RunRecord rec;
  rec.algorithm = "gts";
  rec.seed = seed;
  rec.num_arms = env.num_arms();
  rec.steps.reserve(static_cast<std::size_t>(horizon));

  RngStream env_rng = make_stream(seed, "env");
  RngStream algo_rng = make_stream(seed, "algo");

  ExpertPool state = pool;
  for (int t = 1; t <= horizon; ++t) {
    int context = env.sample_context(env_rng);
    ActionDistribution dist = state.action_distribution(context);
    int arm = algo_rng.categorical(dist.probs);
    int reward = env_step(env, context, arm, env_rng);
    state = state.updated(context, arm, reward);

    StepRecord s;
    s.t = t;
    s.context = context;
    s.arm = arm;
    s.reward = reward;
    rec.steps.push_back(s);
  }

  // Comparator: the expert whose own policy earns the most expected reward
  // on the realized context sequence.
  const std::vector<Expert>& experts = pool.experts();
  std::size_t best = 0;
  double best_total = -1.0;
  for (std::size_t i = 0; i < experts.size(); ++i) {
    double total = 0.0;
    for (const StepRecord& s : rec.steps) {
      total += env.mean(s.context, experts[i].policy_arm(s.context));
    }
    if (total > best_total) {
      best_total = total;
      best = i;
    }
  }
  double regret_cum = 0.0;
  for (StepRecord& s : rec.steps) {
    s.regret_step = env.mean(s.context, experts[best].policy_arm(s.context)) -
                    env.mean(s.context, s.arm);
    regret_cum += s.regret_step;
    s.regret_cum = regret_cum;
  }
  return rec;
}

}  // namespace banditlab
