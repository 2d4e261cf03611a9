#pragma once

#include <filesystem>
#include <vector>

#include "banditlab/rng.hpp"

namespace banditlab {

struct ActionDistribution;  // defined in ids.hpp

// Predictions are clamped into [kPredictionClamp, 1 - kPredictionClamp]
// before losses are taken, so the log loss stays finite.
inline constexpr double kPredictionClamp = 1e-6;

enum class LossKind { logarithmic, square };

// Loss of predicting mean `predicted` for a binary reward.
// logarithmic: -ln(p) on reward 1, -ln(1-p) on reward 0 (p clamped);
// square: (predicted - reward)^2.
double loss(LossKind kind, double predicted, int reward);

// An expert is a complete lookup table of predicted means over
// contexts x arms, each in [0,1]. Its recommended arm per context is the
// argmax of its own predictions (lowest index on ties).
class Expert {
 public:
  Expert(int num_contexts, int num_arms, std::vector<double> table);
  int num_contexts() const { return num_contexts_; }
  int num_arms() const { return num_arms_; }
  double predict(int context, int arm) const;
  int policy_arm(int context) const;

 private:
  int num_contexts_ = 0;
  int num_arms_ = 0;
  std::vector<double> table_;  // row-major [context][arm]
};

// Exponentially weighted expert pool with uniform exploration.
// Immutable value type: updated() returns the next state.
class ExpertPool {
 public:
  // prior: initial weights (strictly positive); uniform 1/N when empty.
  ExpertPool(std::vector<Expert> experts, double eta, double gamma,
             LossKind loss_kind, std::vector<double> prior = {});

  int num_experts() const { return static_cast<int>(experts_.size()); }
  int num_arms() const { return experts_.front().num_arms(); }
  int num_contexts() const { return experts_.front().num_contexts(); }
  double eta() const { return eta_; }
  double gamma() const { return gamma_; }
  LossKind loss_kind() const { return loss_kind_; }
  const std::vector<Expert>& experts() const { return experts_; }
  const std::vector<double>& weights() const { return weights_; }
  double total_weight() const;

  // P(a) = (1 - gamma) * sum_i w_i 1(expert i picks a) / W + gamma / K.
  ActionDistribution action_distribution(int context) const;

  // Multiply every weight by exp(-eta * loss of its prediction for the
  // played (context, arm) against the realized reward). Weights are
  // rescaled by an exact power of two if they all drift below 2^-512,
  // which never changes their ratios.
  [[nodiscard]] ExpertPool updated(int context, int arm, int reward) const;

  // Normalized weights: with logarithmic loss and eta = 1 this is the exact
  // Bayes posterior over experts.
  std::vector<double> posterior() const;

 private:
  std::vector<Expert> experts_;
  std::vector<double> weights_;
  double eta_ = 1.0;
  double gamma_ = 0.0;
  LossKind loss_kind_ = LossKind::logarithmic;
};

// Horizon-tuned default exploration rate.
double default_gamma(LossKind kind, int num_arms, int horizon);

// Load experts from a CSV file with header
// expert_id,context_id,arm_id,predicted_mean (ids 0-based). The table must
// be complete over experts x contexts x arms with every mean in [0,1].
std::vector<Expert> load_experts_csv(const std::filesystem::path& path);

}  // namespace banditlab
