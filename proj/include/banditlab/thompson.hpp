#pragma once

#include "banditlab/posterior.hpp"
#include "banditlab/rng.hpp"

namespace banditlab {

// Gamma(shape, 1) variate. Marsaglia-Tsang squeeze for shape >= 1,
// boosted by u^(1/shape) below 1.
double gamma_sample(double shape, RngStream& rng);

// Beta(b1, b2) variate as a ratio of two gamma variates. Result clamped
// into the open interval (0, 1).
double beta_sample(double b1, double b2, RngStream& rng);

// One Thompson sampling decision: draw a mean estimate per arm from the
// posterior and play the argmax (lowest index on ties).
int ts_select_arm(const BetaPosterior& state, RngStream& rng);

}  // namespace banditlab
