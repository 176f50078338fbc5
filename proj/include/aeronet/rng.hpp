// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

#include "aeronet/geometry.hpp"

namespace aeronet::rng {

// Label slot identifying what a random stream is used for. Streams with any
// differing label are statistically independent; identical labels replay the
// same draws regardless of evaluation order or thread count.
enum class Purpose : std::uint64_t {
  LinkLos = 1,
  LinkShadow = 2,
  UeDrop = 3,
  TrafficPhase = 4,
  ShadowTrack = 5,
  RouteGeometry = 6,
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace detail

// Counter-based key derivation: hash the label tuple into a stream key.
inline std::uint64_t derive_key(std::uint64_t master_seed, Purpose purpose,
                                std::uint64_t a = 0, std::uint64_t b = 0,
                                std::uint64_t c = 0) {
  std::uint64_t h = detail::mix64(master_seed ^ 0x6A09E667F3BCC909ull);
  const std::uint64_t labels[4] = {static_cast<std::uint64_t>(purpose), a, b, c};
  for (std::uint64_t x : labels) {
    h = detail::mix64(h ^ (x + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2)));
  }
  return h;
}

// Small deterministic generator (splitmix64 core). Single owner once derived.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return detail::mix64(state_);
  }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; second value of each pair is cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * kPi * uniform();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline Stream derive_stream(std::uint64_t master_seed, Purpose purpose,
                            std::uint64_t a = 0, std::uint64_t b = 0,
                            std::uint64_t c = 0) {
  return Stream(derive_key(master_seed, purpose, a, b, c));
}

}  // namespace aeronet::rng
