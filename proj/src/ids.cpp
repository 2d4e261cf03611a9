#include "banditlab/ids.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace banditlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPairTieEps = 1e-12;

// cdf[i*n + m] = F_i(x_m) for the state's arms over the grid points.
std::vector<double> cdf_table(const BetaPosterior& state, const Grid& grid) {
  const int k = state.num_arms();
  const std::size_t n = grid.size();
  std::vector<double> cdf(static_cast<std::size_t>(k) * n);
  for (int i = 0; i < k; ++i) {
    double a = state.b1(i), b = state.b2(i);
    double* row = &cdf[static_cast<std::size_t>(i) * n];
    for (std::size_t m = 0; m < n; ++m) row[m] = beta_cdf(grid[m], a, b);
  }
  return cdf;
}

// Integral of g against dF_i via trapezoid pairing of g at interval
// endpoints with exact CDF increments.
double stieltjes(const std::vector<double>& g, const double* cdf_i,
                 std::size_t n) {
  double acc = 0.0;
  for (std::size_t m = 1; m < n; ++m) {
    acc += 0.5 * (g[m] + g[m - 1]) * (cdf_i[m] - cdf_i[m - 1]);
  }
  return acc;
}

std::vector<double> alpha_from_table(const std::vector<double>& cdf, int k,
                                     std::size_t n) {
  std::vector<double> alpha(static_cast<std::size_t>(k));
  std::vector<double> g(n);
  for (int i = 0; i < k; ++i) {
    // g(x) = prod_{j != i} F_j(x): probability every other arm sits below x.
    std::fill(g.begin(), g.end(), 1.0);
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      const double* row = &cdf[static_cast<std::size_t>(j) * n];
      for (std::size_t m = 0; m < n; ++m) g[m] *= row[m];
    }
    alpha[static_cast<std::size_t>(i)] =
        stieltjes(g, &cdf[static_cast<std::size_t>(i) * n], n);
  }
  return alpha;
}

std::vector<double> cond_means_from_table(const BetaPosterior& state,
                                          std::span<const double> alpha,
                                          const std::vector<double>& cdf,
                                          const Grid& grid) {
  const int k = state.num_arms();
  const std::size_t n = grid.size();
  const std::size_t kk = static_cast<std::size_t>(k);
  std::vector<double> m(kk * kk, 0.0);

  // q[j*n + y] = integral of x dF_j over [grid.front, grid[y]]: the partial
  // first moment E[X_j; X_j <= y].
  std::vector<double> q(kk * n, 0.0);
  for (int j = 0; j < k; ++j) {
    const double* f = &cdf[static_cast<std::size_t>(j) * n];
    double* row = &q[static_cast<std::size_t>(j) * n];
    for (std::size_t y = 1; y < n; ++y) {
      row[y] = row[y - 1] +
               0.5 * (grid[y] + grid[y - 1]) * (f[y] - f[y - 1]);
    }
  }

  std::vector<double> g(n);
  for (int i = 0; i < k; ++i) {
    double a_i = alpha[static_cast<std::size_t>(i)];
    if (a_i < kAlphaFloor) {
      for (int j = 0; j < k; ++j) {
        m[static_cast<std::size_t>(i) * kk + static_cast<std::size_t>(j)] =
            state.mean(j);
      }
      continue;
    }
    for (int j = 0; j < k; ++j) {
      if (j == i) {
        // E[X_i | i wins]: weight x by the others' chance of sitting below.
        for (std::size_t y = 0; y < n; ++y) {
          double prod = grid[y];
          for (int l = 0; l < k; ++l) {
            if (l == i) continue;
            prod *= cdf[static_cast<std::size_t>(l) * n + y];
          }
          g[y] = prod;
        }
      } else {
        // E[X_j | i wins]: the partial moment of arm j below the winner's
        // value, times the remaining arms' chance of sitting below.
        const double* qj = &q[static_cast<std::size_t>(j) * n];
        for (std::size_t y = 0; y < n; ++y) {
          double prod = qj[y];
          for (int l = 0; l < k; ++l) {
            if (l == i || l == j) continue;
            prod *= cdf[static_cast<std::size_t>(l) * n + y];
          }
          g[y] = prod;
        }
      }
      double v = stieltjes(g, &cdf[static_cast<std::size_t>(i) * n], n) / a_i;
      m[static_cast<std::size_t>(i) * kk + static_cast<std::size_t>(j)] =
          std::clamp(v, 0.0, 1.0);
    }
  }
  return m;
}

double psi_value(double d, double g) {
  if (g <= 0.0) {
    // Zero expected regret with zero gain is free exploitation, not a
    // degenerate ratio; anything else with no gain is useless.
    return std::fabs(d) <= 1e-12 ? 0.0 : kInf;
  }
  return d * d / g;
}

}  // namespace

std::vector<double> compute_alpha(const BetaPosterior& state,
                                  const Grid& grid) {
  return alpha_from_table(cdf_table(state, grid), state.num_arms(),
                          grid.size());
}

std::vector<double> compute_cond_means(const BetaPosterior& state,
                                       std::span<const double> alpha,
                                       const Grid& grid) {
  if (alpha.size() != static_cast<std::size_t>(state.num_arms())) {
    throw std::invalid_argument("compute_cond_means: alpha size mismatch");
  }
  return cond_means_from_table(state, alpha, cdf_table(state, grid), grid);
}

RegretInfo compute_delta_gain(const BetaPosterior& state,
                              std::span<const double> alpha,
                              std::span<const double> cond_mean) {
  const int k = state.num_arms();
  const std::size_t kk = static_cast<std::size_t>(k);
  if (alpha.size() != kk || cond_mean.size() != kk * kk) {
    throw std::invalid_argument("compute_delta_gain: size mismatch");
  }
  RegretInfo out;
  out.rho_star = 0.0;
  for (int i = 0; i < k; ++i) {
    out.rho_star += alpha[static_cast<std::size_t>(i)] *
                    cond_mean[static_cast<std::size_t>(i) * kk +
                              static_cast<std::size_t>(i)];
  }
  out.delta.resize(kk);
  out.gain.resize(kk);
  for (int i = 0; i < k; ++i) {
    out.delta[static_cast<std::size_t>(i)] = out.rho_star - state.mean(i);
    double g = 0.0;
    for (int j = 0; j < k; ++j) {
      g += alpha[static_cast<std::size_t>(j)] *
           bernoulli_kl(cond_mean[static_cast<std::size_t>(j) * kk +
                                  static_cast<std::size_t>(i)],
                        state.mean(i));
    }
    out.gain[static_cast<std::size_t>(i)] = g;
  }
  return out;
}

PsiMinimum minimize_psi(std::span<const double> delta,
                        std::span<const double> gain) {
  const std::size_t k = delta.size();
  if (k == 0 || gain.size() != k) {
    throw std::invalid_argument("minimize_psi: bad input sizes");
  }

  auto point_mass = [&](std::size_t arm, double psi) {
    PsiMinimum out;
    out.pi.probs.assign(k, 0.0);
    out.pi.probs[arm] = 1.0;
    out.psi = psi;
    return out;
  };

  double max_gain = *std::max_element(gain.begin(), gain.end());
  if (max_gain <= kGainFloor) {
    // Nothing to learn anywhere: exploit the smallest-shortfall arm.
    std::size_t best = static_cast<std::size_t>(
        std::min_element(delta.begin(), delta.end()) - delta.begin());
    return point_mass(best, kInf);
  }
  if (k == 1) return point_mass(0, psi_value(delta[0], gain[0]));

  constexpr int kScan = 1000;  // coarse sweep step 1e-3
  constexpr double kGolden = 0.6180339887498949;

  double best_psi = kInf;
  std::size_t best_i = 0, best_j = 1;
  double best_q = 1.0;

  for (std::size_t i = 0; i + 1 < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      auto psi_at = [&](double qq) {
        return psi_value(qq * delta[i] + (1.0 - qq) * delta[j],
                         qq * gain[i] + (1.0 - qq) * gain[j]);
      };

      int arg = 0;
      double vmin = kInf;
      static thread_local std::vector<double> vals;
      vals.assign(static_cast<std::size_t>(kScan) + 1, 0.0);
      for (int s = 0; s <= kScan; ++s) {
        double v = psi_at(static_cast<double>(s) / kScan);
        vals[static_cast<std::size_t>(s)] = v;
        if (v < vmin) {
          vmin = v;
          arg = s;
        }
      }
      if (vmin == kInf) continue;

      // Tied stretch around the minimum (flat objectives arise for
      // symmetric arms; any q on the stretch is optimal, take its middle
      // so symmetric instances get symmetric treatment).
      double tie = vmin + std::max(kPairTieEps, 1e-9 * std::fabs(vmin));
      int lo = arg, hi = arg;
      while (lo > 0 && vals[static_cast<std::size_t>(lo - 1)] <= tie) --lo;
      while (hi < kScan && vals[static_cast<std::size_t>(hi + 1)] <= tie) ++hi;

      double q, v;
      if (hi > lo) {
        q = 0.5 * (static_cast<double>(lo) + static_cast<double>(hi)) / kScan;
        v = psi_at(q);
        if (!(v <= tie)) {
          // Non-contiguous tie (distinct equal minima): keep the scan argmin.
          q = static_cast<double>(arg) / kScan;
          v = vmin;
        }
      } else {
        // Golden-section refinement around the isolated scan minimum.
        double a = std::max(0.0, (static_cast<double>(arg) - 1.0) / kScan);
        double b = std::min(1.0, (static_cast<double>(arg) + 1.0) / kScan);
        double x1 = b - kGolden * (b - a);
        double x2 = a + kGolden * (b - a);
        double f1 = psi_at(x1), f2 = psi_at(x2);
        while (b - a > 1e-9) {
          if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = psi_at(x1);
          } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = psi_at(x2);
          }
        }
        q = 0.5 * (a + b);
        if (q < 1e-9) q = 0.0;
        if (q > 1.0 - 1e-9) q = 1.0;
        v = psi_at(q);
      }

      if (v < best_psi - kPairTieEps) {
        best_psi = v;
        best_i = i;
        best_j = j;
        best_q = q;
      }
    }
  }

  PsiMinimum out;
  out.pi.probs.assign(k, 0.0);
  out.pi.probs[best_i] = best_q;
  out.pi.probs[best_j] += 1.0 - best_q;
  out.psi = best_psi;
  return out;
}

IdsQuantities compute_ids_quantities(const BetaPosterior& state,
                                     const Grid& grid) {
  IdsQuantities q;
  std::vector<double> cdf = cdf_table(state, grid);
  q.alpha = alpha_from_table(cdf, state.num_arms(), grid.size());
  q.cond_mean = cond_means_from_table(state, q.alpha, cdf, grid);
  RegretInfo reg = compute_delta_gain(state, q.alpha, q.cond_mean);
  q.delta = std::move(reg.delta);
  q.gain = std::move(reg.gain);
  q.rho_star = reg.rho_star;
  return q;
}

IdsDecision ids_select_arm(const BetaPosterior& state, const Grid& grid,
                           RngStream& rng) {
  IdsDecision d;
  d.quantities = compute_ids_quantities(state, grid);
  PsiMinimum pm = minimize_psi(d.quantities.delta, d.quantities.gain);
  d.pi = std::move(pm.pi);
  d.psi = pm.psi;
  d.arm = rng.categorical(d.pi.probs);
  return d;
}

}  // namespace banditlab
