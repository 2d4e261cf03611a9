#include "banditlab/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace banditlab {

BetaPosterior::BetaPosterior(std::vector<double> b1, std::vector<double> b2)
    : b1_(std::move(b1)), b2_(std::move(b2)) {
  if (b1_.size() != b2_.size()) {
    throw std::invalid_argument("BetaPosterior: count vectors differ in size");
  }
  if (b1_.size() < 2) {
    throw std::invalid_argument("BetaPosterior: need at least 2 arms");
  }
  for (std::size_t i = 0; i < b1_.size(); ++i) {
    if (!(b1_[i] > 0.0) || !(b2_[i] > 0.0)) {
      throw std::invalid_argument("BetaPosterior: pseudo-counts must be > 0");
    }
  }
}

BetaPosterior BetaPosterior::uniform_prior(int num_arms) {
  return with_prior(num_arms, 1.0, 1.0);
}

BetaPosterior BetaPosterior::with_prior(int num_arms, double b1, double b2) {
  if (num_arms < 2) {
    throw std::invalid_argument("BetaPosterior: need at least 2 arms");
  }
  std::vector<double> v1(static_cast<std::size_t>(num_arms), b1);
  std::vector<double> v2(static_cast<std::size_t>(num_arms), b2);
  return BetaPosterior(std::move(v1), std::move(v2));
}

double BetaPosterior::mean(int arm) const {
  double a = b1(arm), b = b2(arm);
  return a / (a + b);
}

BetaPosterior BetaPosterior::updated(int arm, int reward) const {
  if (arm < 0 || arm >= num_arms()) {
    throw std::out_of_range("BetaPosterior::updated: arm out of range");
  }
  if (reward != 0 && reward != 1) {
    throw std::invalid_argument("BetaPosterior::updated: reward must be 0/1");
  }
  BetaPosterior next = *this;
  if (reward == 1) {
    next.b1_[static_cast<std::size_t>(arm)] += 1.0;
  } else {
    next.b2_[static_cast<std::size_t>(arm)] += 1.0;
  }
  return next;
}

double bernoulli_kl(double p1, double p2) {
  p1 = std::clamp(p1, kKlClamp, 1.0 - kKlClamp);
  p2 = std::clamp(p2, kKlClamp, 1.0 - kKlClamp);
  double kl = p1 * std::log(p1 / p2) + (1.0 - p1) * std::log((1.0 - p1) / (1.0 - p2));
  // Guard against rounding pushing near-zero divergences negative.
  return kl > 0.0 ? kl : 0.0;
}

double entropy(std::span<const double> dist) {
  double sum = 0.0;
  for (double p : dist) {
    if (p < 0.0) throw std::invalid_argument("entropy: negative entry");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("entropy: input not normalized");
  }
  double h = 0.0;
  for (double p : dist) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

}  // namespace banditlab
