#include "banditlab/oracle.hpp"

#include <stdexcept>

#include "banditlab/thompson.hpp"

namespace banditlab {

namespace {

void check_samples(std::int64_t samples) {
  if (samples < 1) {
    throw std::invalid_argument("oracle: sample count must be >= 1");
  }
}

}  // namespace

std::vector<double> mc_alpha(const BetaPosterior& state, std::int64_t samples,
                             RngStream& rng) {
  check_samples(samples);
  const int k = state.num_arms();
  std::vector<std::int64_t> wins(static_cast<std::size_t>(k), 0);
  std::vector<double> draw(static_cast<std::size_t>(k));
  for (std::int64_t s = 0; s < samples; ++s) {
    int best = 0;
    for (int a = 0; a < k; ++a) {
      draw[static_cast<std::size_t>(a)] =
          beta_sample(state.b1(a), state.b2(a), rng);
      if (draw[static_cast<std::size_t>(a)] > draw[static_cast<std::size_t>(best)]) {
        best = a;
      }
    }
    ++wins[static_cast<std::size_t>(best)];
  }
  std::vector<double> freq(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) {
    freq[static_cast<std::size_t>(a)] =
        static_cast<double>(wins[static_cast<std::size_t>(a)]) /
        static_cast<double>(samples);
  }
  return freq;
}

McCondMeans mc_cond_means(const BetaPosterior& state, std::int64_t samples,
                          RngStream& rng, std::int64_t min_hits) {
  check_samples(samples);
  const int k = state.num_arms();
  const std::size_t kk = static_cast<std::size_t>(k);
  std::vector<double> sums(kk * kk, 0.0);
  std::vector<std::int64_t> hits(kk, 0);
  std::vector<double> draw(kk);
  for (std::int64_t s = 0; s < samples; ++s) {
    int best = 0;
    for (int a = 0; a < k; ++a) {
      draw[static_cast<std::size_t>(a)] =
          beta_sample(state.b1(a), state.b2(a), rng);
      if (draw[static_cast<std::size_t>(a)] > draw[static_cast<std::size_t>(best)]) {
        best = a;
      }
    }
    ++hits[static_cast<std::size_t>(best)];
    double* row = &sums[static_cast<std::size_t>(best) * kk];
    for (int j = 0; j < k; ++j) row[j] += draw[static_cast<std::size_t>(j)];
  }
  McCondMeans out;
  out.cond_mean.assign(kk * kk, 0.0);
  out.hits = hits;
  for (int i = 0; i < k; ++i) {
    if (hits[static_cast<std::size_t>(i)] < min_hits) {
      out.insufficient_rows.push_back(i);
      for (int j = 0; j < k; ++j) {
        out.cond_mean[static_cast<std::size_t>(i) * kk + static_cast<std::size_t>(j)] =
            state.mean(j);
      }
      continue;
    }
    for (int j = 0; j < k; ++j) {
      out.cond_mean[static_cast<std::size_t>(i) * kk + static_cast<std::size_t>(j)] =
          sums[static_cast<std::size_t>(i) * kk + static_cast<std::size_t>(j)] /
          static_cast<double>(hits[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

double mc_information_gain(const BetaPosterior& state, int arm,
                           std::int64_t samples, RngStream& rng) {
  check_samples(samples);
  if (arm < 0 || arm >= state.num_arms()) {
    throw std::out_of_range("mc_information_gain: arm out of range");
  }
  double p1 = state.mean(arm);  // posterior predictive of reward 1
  std::vector<double> a_now = mc_alpha(state, samples, rng);
  std::vector<double> a_win = mc_alpha(state.updated(arm, 1), samples, rng);
  std::vector<double> a_loss = mc_alpha(state.updated(arm, 0), samples, rng);
  double h_now = entropy(a_now);
  double h_win = entropy(a_win);
  double h_loss = entropy(a_loss);
  return p1 * (h_now - h_win) + (1.0 - p1) * (h_now - h_loss);
}

}  // namespace banditlab
