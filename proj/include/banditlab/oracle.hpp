#pragma once

#include <cstdint>
#include <vector>

#include "banditlab/posterior.hpp"
#include "banditlab/rng.hpp"

namespace banditlab {

// Monte Carlo estimates of the posterior quantities the analytic routines
// compute by quadrature. Deliberately simple and route-independent so the
// two can check each other.

// Frequency with which each arm attains the maximum across joint draws
// from the product of Beta posteriors. Ties resolve to the lowest index
// (a measure-zero event).
std::vector<double> mc_alpha(const BetaPosterior& state, std::int64_t samples,
                             RngStream& rng);

struct McCondMeans {
  // cond_mean[i*K + j]: mean of arm j's draw over samples where arm i won.
  std::vector<double> cond_mean;
  // Number of samples conditioning each row.
  std::vector<std::int64_t> hits;
  // Rows whose hit count fell below the requested minimum; their entries
  // are filled with unconditional posterior means.
  std::vector<int> insufficient_rows;
};

McCondMeans mc_cond_means(const BetaPosterior& state, std::int64_t samples,
                          RngStream& rng, std::int64_t min_hits = 1000);

// Expected drop in optimal-arm entropy from observing one reward of `arm`:
// both Bernoulli outcomes are weighted by the posterior predictive
// probability and the post-update entropy is estimated with mc_alpha at
// `samples` draws each.
double mc_information_gain(const BetaPosterior& state, int arm,
                           std::int64_t samples, RngStream& rng);

}  // namespace banditlab
