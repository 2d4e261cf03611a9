#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "banditlab/posterior.hpp"
#include "banditlab/rng.hpp"
#include "banditlab/thompson.hpp"

using namespace banditlab;

TEST_CASE("gamma_sample moments") {
  RngStream rng = make_stream(1, "gamma");
  for (double shape : {0.5, 1.0, 2.5, 9.0}) {
    const int n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double x = gamma_sample(shape, rng);
      CHECK(x > 0.0);
      sum += x;
      sum2 += x * x;
    }
    double mean = sum / n;
    double var = sum2 / n - mean * mean;
    // Gamma(shape, 1): mean = shape, var = shape.
    CHECK(mean == doctest::Approx(shape).epsilon(0.01));
    CHECK(var == doctest::Approx(shape).epsilon(0.03));
  }
}

TEST_CASE("beta_sample moments") {
  RngStream rng = make_stream(2, "beta");
  for (auto [b1, b2] : {std::pair{1.0, 1.0}, {2.0, 5.0}, {0.5, 0.5},
                        {30.0, 10.0}}) {
    const int n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double x = beta_sample(b1, b2, rng);
      CHECK(x > 0.0);
      CHECK(x < 1.0);
      sum += x;
      sum2 += x * x;
    }
    double mean = sum / n;
    double var = sum2 / n - mean * mean;
    double m = b1 / (b1 + b2);
    double v = b1 * b2 / ((b1 + b2) * (b1 + b2) * (b1 + b2 + 1.0));
    CHECK(mean == doctest::Approx(m).epsilon(0.005));
    CHECK(var == doctest::Approx(v).epsilon(0.02));
  }
}

TEST_CASE("beta_sample with unit shapes is uniform (KS test)") {
  RngStream rng = make_stream(3, "ks");
  const int n = 100000;
  std::vector<double> xs(n);
  for (double& x : xs) x = beta_sample(1.0, 1.0, rng);
  std::sort(xs.begin(), xs.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    double lo = static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, std::fabs(xs[i] - lo), std::fabs(xs[i] - hi)});
  }
  // 1% critical value of the Kolmogorov statistic.
  CHECK(d <= 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("ts_select_arm prefers the better posterior overwhelmingly") {
  BetaPosterior p({1000.0, 1.0}, {1.0, 1000.0});
  RngStream rng = make_stream(4, "ts");
  int wins = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    if (ts_select_arm(p, rng) == 0) ++wins;
  }
  CHECK(wins >= n - 1);
}

TEST_CASE("ts_select_arm frequencies reflect posterior optimality") {
  // Beta(2,1) vs Beta(1,1): P(X1 > X2) = 2/3 up to ties of measure zero.
  BetaPosterior p({2.0, 1.0}, {1.0, 1.0});
  RngStream rng = make_stream(5, "tsfreq");
  const int n = 200000;
  int wins = 0;
  for (int i = 0; i < n; ++i) {
    if (ts_select_arm(p, rng) == 0) ++wins;
  }
  CHECK(static_cast<double>(wins) / n == doctest::Approx(2.0 / 3.0).epsilon(0.01));
}

TEST_CASE("sampling is deterministic given the seed") {
  RngStream a = make_stream(42, "det");
  RngStream b = make_stream(42, "det");
  for (int i = 0; i < 100; ++i) {
    CHECK(gamma_sample(1.7, a) == gamma_sample(1.7, b));
  }
  BetaPosterior p = BetaPosterior::uniform_prior(4);
  RngStream c = make_stream(42, "det2");
  RngStream d = make_stream(42, "det2");
  for (int i = 0; i < 100; ++i) {
    CHECK(ts_select_arm(p, c) == ts_select_arm(p, d));
  }
  // Different labels decorrelate streams from the same master seed.
  RngStream e = make_stream(42, "det");
  RngStream f = make_stream(42, "other");
  int equal = 0;
  for (int i = 0; i < 64; ++i) {
    if (e.next_u64() == f.next_u64()) ++equal;
  }
  CHECK(equal == 0);
}
