#include "banditlab/thompson.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace banditlab {

double gamma_sample(double shape, RngStream& rng) {
  if (!(shape > 0.0)) {
    throw std::domain_error("gamma_sample: shape must be > 0");
  }
  if (shape < 1.0) {
    // Boost: Gamma(a) = Gamma(a+1) * U^(1/a).
    double u = 1.0 - rng.uniform01();  // (0, 1]
    return gamma_sample(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia & Tsang, "A simple method for generating gamma variables".
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = rng.normal();
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = 1.0 - rng.uniform01();  // (0, 1]
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double beta_sample(double b1, double b2, RngStream& rng) {
  double ga = gamma_sample(b1, rng);
  double gb = gamma_sample(b2, rng);
  double r = ga / (ga + gb);
  if (!(r > 0.0)) return std::numeric_limits<double>::min();
  if (!(r < 1.0)) return 1.0 - std::numeric_limits<double>::epsilon();
  return r;
}

int ts_select_arm(const BetaPosterior& state, RngStream& rng) {
  int best = 0;
  double best_draw = -1.0;
  for (int a = 0; a < state.num_arms(); ++a) {
    double draw = beta_sample(state.b1(a), state.b2(a), rng);
    if (draw > best_draw) {
      best_draw = draw;
      best = a;
    }
  }
  return best;
}

}  // namespace banditlab
