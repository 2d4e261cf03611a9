#pragma once

#include <span>
#include <vector>

namespace banditlab {

// KL arguments are clamped into [kKlClamp, 1 - kKlClamp] so boundary
// estimates never produce infinities.
inline constexpr double kKlClamp = 1e-9;

// Independent Beta(b1_i, b2_i) beliefs over K Bernoulli arm means.
// Immutable value type: updated() returns a new state.
class BetaPosterior {
 public:
  BetaPosterior(std::vector<double> b1, std::vector<double> b2);

  // Beta(1,1) on every arm.
  static BetaPosterior uniform_prior(int num_arms);
  static BetaPosterior with_prior(int num_arms, double b1, double b2);

  int num_arms() const { return static_cast<int>(b1_.size()); }
  double b1(int arm) const { return b1_.at(static_cast<std::size_t>(arm)); }
  double b2(int arm) const { return b2_.at(static_cast<std::size_t>(arm)); }

  // Posterior mean b1 / (b1 + b2).
  double mean(int arm) const;

  // Conjugate update for one Bernoulli observation (reward in {0,1});
  // only the played arm's counts change.
  [[nodiscard]] BetaPosterior updated(int arm, int reward) const;

 private:
  std::vector<double> b1_, b2_;
};

// KL divergence between Bernoulli(p1) and Bernoulli(p2), natural log,
// arguments clamped per kKlClamp. Always >= 0.
double bernoulli_kl(double p1, double p2);

// Shannon entropy (nats) of a probability vector; entries >= 0 and
// sum within 1e-9 of 1, else throws.
double entropy(std::span<const double> dist);

}  // namespace banditlab
