#pragma once

#include <span>
#include <vector>

namespace banditlab {

// Density values at {0,1} diverge when the corresponding shape parameter is
// below 1; beta_pdf returns this cap instead of infinity there.
inline constexpr double kBetaPdfCap = 1e12;

// Quadrature abscissae on [0,1]: at least 3 strictly increasing points,
// first >= 0, last <= 1.
class Grid {
 public:
  explicit Grid(std::vector<double> points);

  // intervals+1 equally spaced points spanning [lo, hi].
  static Grid uniform_on(double lo, double hi, int intervals);
  static Grid uniform(int intervals) { return uniform_on(0.0, 1.0, intervals); }

  const std::vector<double>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }

 private:
  std::vector<double> points_;
};

// ln Gamma(x) for x > 0. Lanczos approximation (g = 7, 9 coefficients),
// reflection below 0.5. Relative error <= 1e-12 away from the zeros at 1, 2.
double log_gamma(double x);

// ln B(b1, b2) = ln Gamma(b1) + ln Gamma(b2) - ln Gamma(b1 + b2).
double log_beta(double b1, double b2);

// Beta(b1, b2) density at x in [0,1]. Shape parameters must be positive.
// Values above kBetaPdfCap (possible only near an integrable endpoint
// singularity) are clamped to the cap.
double beta_pdf(double x, double b1, double b2);

// Regularized incomplete beta I_x(b1, b2): continued fraction (modified
// Lentz), switching to 1 - I_{1-x}(b2, b1) past the standard pivot so the
// fraction always converges fast. Relative error <= 1e-10.
double beta_cdf(double x, double b1, double b2);

// Composite trapezoid of values sampled on grid (estimates the integral
// over [grid.front, grid.back]).
double integrate(std::span<const double> values, const Grid& grid);

// Running trapezoid: out[k] estimates the integral from grid.front to
// grid[k]; out[0] = 0.
std::vector<double> cumulative_integrate(std::span<const double> values,
                                         const Grid& grid);

}  // namespace banditlab
