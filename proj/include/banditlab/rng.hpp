#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace banditlab {

// Deterministic random stream. Every draw is built from the raw 64-bit
// engine output, so sequences are identical across standard libraries
// (std::*_distribution sequences are implementation-defined; we avoid them).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller. The sine branch is discarded so the
  // stream position is a fixed function of the call count.
  double normal();

  int bernoulli(double p) { return uniform01() < p ? 1 : 0; }

  // Inverse-CDF draw from a probability vector (entries >= 0, sum ~ 1).
  int categorical(std::span<const double> probs);

 private:
  std::mt19937_64 engine_;
};

// Labeled substream derivation: one master seed fans out into decorrelated
// streams ("env", "algo", "oracle", ...) so that consumers never share or
// perturb each other's sequences.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view label,
                          std::uint64_t index);

RngStream make_stream(std::uint64_t master_seed, std::string_view label,
                      std::uint64_t index = 0);

}  // namespace banditlab
