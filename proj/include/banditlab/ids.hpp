#pragma once

#include <span>
#include <vector>

#include "banditlab/posterior.hpp"
#include "banditlab/rng.hpp"
#include "banditlab/special.hpp"

namespace banditlab {

// Arms whose optimality probability falls below this floor get their
// conditional-mean row replaced by unconditional means (the conditional
// integrals are numerically meaningless there).
inline constexpr double kAlphaFloor = 1e-8;

// If every arm's information gain is at or below this floor there is
// nothing to learn; the ratio minimizer degenerates to pure exploitation.
inline constexpr double kGainFloor = 1e-12;

// Distribution over arms; support size is at most 2 when produced by
// minimize_psi.
struct ActionDistribution {
  std::vector<double> probs;
};

// Per-step posterior summaries driving one information-ratio decision.
struct IdsQuantities {
  std::vector<double> alpha;      // P(arm i is optimal), length K
  std::vector<double> cond_mean;  // row-major K*K; [i*K+j] = E[mean_j | i optimal]
  std::vector<double> delta;      // expected shortfall of arm i vs rho_star
  std::vector<double> gain;       // information gain of playing arm i
  double rho_star = 0.0;          // expected mean of the optimal arm

  double m(int i, int j) const {
    std::size_t k = alpha.size();
    return cond_mean[static_cast<std::size_t>(i) * k + static_cast<std::size_t>(j)];
  }
};

// P(arm i attains the maximum mean) under the product posterior, one entry
// per arm. Each integral over [0,1] is accumulated against the winning
// arm's CDF increments on the grid, which stays accurate even when
// posteriors concentrate far below the grid resolution.
std::vector<double> compute_alpha(const BetaPosterior& state, const Grid& grid);

// Conditional posterior means: entry (i, j) is E[mean_j | arm i optimal].
// Rows with alpha[i] < kAlphaFloor fall back to unconditional means.
// `alpha` must come from compute_alpha on the same state and grid.
std::vector<double> compute_cond_means(const BetaPosterior& state,
                                       std::span<const double> alpha,
                                       const Grid& grid);

struct RegretInfo {
  std::vector<double> delta;
  std::vector<double> gain;
  double rho_star = 0.0;
};

// delta[i] = rho_star - mean_i with rho_star = sum_i alpha_i * cond_mean_ii;
// gain[i] = sum_j alpha_j * KL(cond_mean_ji || mean_i).
RegretInfo compute_delta_gain(const BetaPosterior& state,
                              std::span<const double> alpha,
                              std::span<const double> cond_mean);

struct PsiMinimum {
  ActionDistribution pi;
  double psi = 0.0;
};

// Minimize (pi . delta)^2 / (pi . gain) over distributions supported on at
// most two arms (which is sufficient for the full simplex). Scans every
// arm pair with a coarse 1e-3 sweep over the mixing weight plus
// golden-section refinement; ties between pairs resolve to the lowest
// (i, j). If every gain is at or below kGainFloor, returns a point mass on
// the smallest-delta arm with psi = +infinity.
PsiMinimum minimize_psi(std::span<const double> delta,
                        std::span<const double> gain);

// All quantities above computed off one shared CDF table.
IdsQuantities compute_ids_quantities(const BetaPosterior& state,
                                     const Grid& grid);

struct IdsDecision {
  int arm = 0;
  ActionDistribution pi;
  double psi = 0.0;
  IdsQuantities quantities;
};

// One full information-directed step: build quantities, minimize the ratio,
// sample an arm from the minimizing distribution by inverse CDF.
IdsDecision ids_select_arm(const BetaPosterior& state, const Grid& grid,
                           RngStream& rng);

}  // namespace banditlab
