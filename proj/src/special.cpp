#include "banditlab/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace banditlab {

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 3) {
    throw std::invalid_argument("Grid: need at least 3 points");
  }
  if (points_.front() < 0.0 || points_.back() > 1.0) {
    throw std::invalid_argument("Grid: points must lie in [0,1]");
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i] > points_[i - 1])) {
      throw std::invalid_argument("Grid: points must be strictly increasing");
    }
  }
}

Grid Grid::uniform_on(double lo, double hi, int intervals) {
  if (intervals < 2) throw std::invalid_argument("Grid: need >= 2 intervals");
  std::vector<double> pts(static_cast<std::size_t>(intervals) + 1);
  double h = (hi - lo) / intervals;
  for (int k = 0; k <= intervals; ++k) pts[static_cast<std::size_t>(k)] = lo + h * k;
  pts.back() = hi;  // exact endpoint regardless of rounding
  return Grid(std::move(pts));
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: x must be > 0");
  // ln Gamma has exact zeros here; return them exactly so relative error
  // stays meaningful in the neighborhood.
  if (x == 1.0 || x == 2.0) return 0.0;
  // https://en.wikipedia.org/wiki/Lanczos_approximation (g = 7, n = 9)
  static const double kCoef[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double kG = 7.0;
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
           log_gamma(1.0 - x);
  }
  double z = x - 1.0;
  double sum = kCoef[0];
  for (int i = 1; i < 9; ++i) sum += kCoef[i] / (z + i);
  double base = z + kG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(base) -
         base + std::log(sum);
}

double log_beta(double b1, double b2) {
  return log_gamma(b1) + log_gamma(b2) - log_gamma(b1 + b2);
}

double beta_pdf(double x, double b1, double b2) {
  if (!(b1 > 0.0) || !(b2 > 0.0)) {
    throw std::domain_error("beta_pdf: shape parameters must be > 0");
  }
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw std::domain_error("beta_pdf: x must be in [0,1]");
  }
  if (x == 0.0) {
    if (b1 < 1.0) return kBetaPdfCap;
    if (b1 > 1.0) return 0.0;
    return std::exp(-log_beta(1.0, b2));  // = b2
  }
  if (x == 1.0) {
    if (b2 < 1.0) return kBetaPdfCap;
    if (b2 > 1.0) return 0.0;
    return std::exp(-log_beta(b1, 1.0));  // = b1
  }
  double v = std::exp((b1 - 1.0) * std::log(x) + (b2 - 1.0) * std::log1p(-x) -
                      log_beta(b1, b2));
  return v < kBetaPdfCap ? v : kBetaPdfCap;
}

namespace {

// Continued fraction for I_x(a, b), valid for x < (a+1)/(a+b+2).
// Modified Lentz; see Numerical Recipes section 6.4.
double beta_cf(double x, double a, double b) {
  constexpr double kTiny = 1e-30;
  constexpr double kEps = 1e-15;
  constexpr int kMaxIter = 400;

  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    // Even step.
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    // Odd step.
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("beta_cdf: continued fraction did not converge");
}

}  // namespace

double beta_cdf(double x, double b1, double b2) {
  if (!(b1 > 0.0) || !(b2 > 0.0)) {
    throw std::domain_error("beta_cdf: shape parameters must be > 0");
  }
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw std::domain_error("beta_cdf: x must be in [0,1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  double front = std::exp(b1 * std::log(x) + b2 * std::log1p(-x) -
                          log_beta(b1, b2));
  if (x < (b1 + 1.0) / (b1 + b2 + 2.0)) {
    return front * beta_cf(x, b1, b2) / b1;
  }
  return 1.0 - front * beta_cf(1.0 - x, b2, b1) / b2;
}

double integrate(std::span<const double> values, const Grid& grid) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("integrate: values/grid size mismatch");
  }
  double acc = 0.0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    acc += 0.5 * (values[k] + values[k - 1]) * (grid[k] - grid[k - 1]);
  }
  return acc;
}

std::vector<double> cumulative_integrate(std::span<const double> values,
                                         const Grid& grid) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("cumulative_integrate: size mismatch");
  }
  std::vector<double> out(values.size(), 0.0);
  for (std::size_t k = 1; k < values.size(); ++k) {
    out[k] = out[k - 1] +
             0.5 * (values[k] + values[k - 1]) * (grid[k] - grid[k - 1]);
  }
  return out;
}

}  // namespace banditlab
