#include "banditlab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace banditlab {

namespace {

// https://prng.di.unimi.it/splitmix64.c
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

double RngStream::normal() {
  // u1 in (0, 1] keeps the log finite.
  double u1 = 1.0 - uniform01();
  double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

int RngStream::categorical(std::span<const double> probs) {
  if (probs.empty()) throw std::invalid_argument("categorical: empty vector");
  double u = uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  // Rounding left acc slightly below 1: fall back to the last positive entry.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view label,
                          std::uint64_t index) {
  std::uint64_t s = splitmix64(master_seed);
  s = splitmix64(s ^ fnv1a64(label));
  s = splitmix64(s ^ index);
  return s;
}

RngStream make_stream(std::uint64_t master_seed, std::string_view label,
                      std::uint64_t index) {
  return RngStream(derive_seed(master_seed, label, index));
}

}  // namespace banditlab
