#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "banditlab/special.hpp"

using namespace banditlab;

TEST_CASE("Grid validates its points") {
  CHECK_THROWS_AS(Grid({0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Grid({0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Grid({-0.1, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Grid({0.0, 0.5, 1.1}), std::invalid_argument);
  Grid g = Grid::uniform(10);
  CHECK(g.size() == 11);
  CHECK(g.points().front() == 0.0);
  CHECK(g.points().back() == 1.0);
  Grid h = Grid::uniform_on(0.25, 0.75, 4);
  CHECK(h.points().front() == 0.25);
  CHECK(h.points().back() == 0.75);
}

TEST_CASE("log_gamma matches the standard library") {
  // std::lgamma is used only as an independent reference here.
  const double xs[] = {0.1,  0.5,  0.99, 1.0,  1.5,  2.0,  3.7,
                       10.0, 25.3, 100.0, 501.5, 1000.0};
  for (double x : xs) {
    double ref = std::lgamma(x);
    double got = log_gamma(x);
    CHECK(std::fabs(got - ref) <= 1e-12 * std::max(1.0, std::fabs(ref)));
  }
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(log_gamma(2.0) == 0.0);
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
}

TEST_CASE("log_gamma satisfies the recurrence") {
  for (double x = 0.5; x <= 100.0; x += 0.7) {
    double lhs = log_gamma(x + 1.0);
    double rhs = log_gamma(x) + std::log(x);
    CHECK(std::fabs(lhs - rhs) <= 1e-11 * std::max(1.0, std::fabs(lhs)));
  }
}

TEST_CASE("log_gamma rejects the nonpositive domain") {
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("log_beta matches its definition") {
  CHECK(log_beta(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
  // B(2,3) = 1/12.
  CHECK(log_beta(2.0, 3.0) ==
        doctest::Approx(std::log(1.0 / 12.0)).epsilon(1e-13));
  CHECK(log_beta(5.5, 0.5) ==
        doctest::Approx(std::lgamma(5.5) + std::lgamma(0.5) -
                        std::lgamma(6.0))
            .epsilon(1e-13));
}

TEST_CASE("beta_pdf spot values") {
  // Beta(2,1) has density 2x.
  CHECK(beta_pdf(0.25, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(beta_pdf(0.5, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  // Beta(3,2) has density 12 x^2 (1-x).
  CHECK(beta_pdf(0.3, 3.0, 2.0) ==
        doctest::Approx(12.0 * 0.09 * 0.7).epsilon(1e-12));
}

TEST_CASE("beta_pdf endpoint handling") {
  // Exponent > 0: density vanishes at the endpoint.
  CHECK(beta_pdf(0.0, 2.0, 2.0) == 0.0);
  CHECK(beta_pdf(1.0, 2.0, 2.0) == 0.0);
  // Exponent == 0: finite limit b2 (resp. b1).
  CHECK(beta_pdf(0.0, 1.0, 3.0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(beta_pdf(1.0, 3.0, 1.0) == doctest::Approx(3.0).epsilon(1e-12));
  // Exponent < 0: singular, capped.
  CHECK(beta_pdf(0.0, 0.5, 0.5) == kBetaPdfCap);
  CHECK(beta_pdf(1.0, 2.0, 0.5) == kBetaPdfCap);
}

TEST_CASE("beta_pdf integrates to one on a uniform grid") {
  Grid grid = Grid::uniform(1000);
  for (double b1 : {1.0, 2.0, 5.0, 20.0}) {
    for (double b2 : {1.0, 2.0, 5.0, 20.0}) {
      std::vector<double> f(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        f[i] = beta_pdf(grid.points()[i], b1, b2);
      }
      CHECK(std::fabs(integrate(f, grid) - 1.0) <= 1e-4);
    }
  }
}

TEST_CASE("beta_pdf(3,2) normalizes tightly on a fine grid") {
  Grid grid = Grid::uniform(4000);
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    f[i] = beta_pdf(grid.points()[i], 3.0, 2.0);
  }
  CHECK(integrate(f, grid) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("singular beta_pdf normalizes approximately away from endpoints") {
  // With b1 < 1 the density is unbounded at 0, so the mass check uses an
  // interior grid plus the analytic mass of the clipped tails; the trapezoid
  // rule on a singular integrand is only good to a few percent here.
  Grid grid = Grid::uniform_on(1e-6, 1.0 - 1e-6, 200000);
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    f[i] = beta_pdf(grid.points()[i], 0.5, 2.0);
  }
  double interior = integrate(f, grid);
  double expected = beta_cdf(1.0 - 1e-6, 0.5, 2.0) - beta_cdf(1e-6, 0.5, 2.0);
  CHECK(std::fabs(interior - expected) <= 0.02 * expected);
}

TEST_CASE("beta_cdf analytic cases") {
  // Beta(2,1): F(x) = x^2; Beta(1,1): F(x) = x.
  CHECK(beta_cdf(0.5, 2.0, 1.0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(beta_cdf(0.3, 1.0, 1.0) == doctest::Approx(0.3).epsilon(1e-12));
  // Beta(2,2): F(x) = 3x^2 - 2x^3.
  CHECK(beta_cdf(0.4, 2.0, 2.0) ==
        doctest::Approx(3 * 0.16 - 2 * 0.064).epsilon(1e-12));
  CHECK(beta_cdf(0.0, 4.0, 7.0) == 0.0);
  CHECK(beta_cdf(1.0, 4.0, 7.0) == 1.0);
}

TEST_CASE("beta_cdf agrees with brute-force quadrature") {
  // Reference: 1e6-interval trapezoid of the density on [0, 0.3].
  const double b1 = 5.0, b2 = 3.0, x = 0.3;
  const int n = 1000000;
  double acc = 0.0;
  double prev = beta_pdf(0.0, b1, b2);
  for (int i = 1; i <= n; ++i) {
    double xi = x * static_cast<double>(i) / n;
    double cur = beta_pdf(xi, b1, b2);
    acc += 0.5 * (prev + cur) * (x / n);
    prev = cur;
  }
  CHECK(beta_cdf(x, b1, b2) == doctest::Approx(acc).epsilon(1e-8));
}

TEST_CASE("beta_cdf reflection symmetry and monotonicity") {
  const double b1 = 7.3, b2 = 2.1;
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    double x = static_cast<double>(i) / 100.0;
    double v = beta_cdf(x, b1, b2);
    CHECK(v >= prev);
    prev = v;
    double mirror = 1.0 - beta_cdf(1.0 - x, b2, b1);
    CHECK(v == doctest::Approx(mirror).epsilon(1e-12));
  }
}

TEST_CASE("integrate handles simple integrands") {
  Grid grid = Grid::uniform(1000);
  std::vector<double> ones(grid.size(), 1.0);
  CHECK(integrate(ones, grid) == doctest::Approx(1.0).epsilon(1e-14));
  std::vector<double> xs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) xs[i] = grid.points()[i];
  CHECK(integrate(xs, grid) == doctest::Approx(0.5).epsilon(1e-12));
  std::vector<double> wrong(grid.size() - 1, 1.0);
  CHECK_THROWS_AS(integrate(wrong, grid), std::invalid_argument);
}

TEST_CASE("cumulative_integrate matches integrate at the endpoint") {
  Grid grid = Grid::uniform(500);
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    f[i] = grid.points()[i] * grid.points()[i];
  }
  std::vector<double> cum = cumulative_integrate(f, grid);
  CHECK(cum.front() == 0.0);
  CHECK(cum.back() == doctest::Approx(integrate(f, grid)).epsilon(1e-14));
  CHECK(cum[250] == doctest::Approx(0.5 * 0.5 * 0.5 / 3.0).epsilon(1e-5));
}
