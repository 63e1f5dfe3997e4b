#pragma once

#include <cmath>
#include <cstdint>

namespace ssi {

/// Deterministic counter-based random streams. All randomness in the library
/// flows through these so that (seed → output) is reproducible bit-for-bit,
/// independent of call order and standard-library implementation details.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix(seed ^ 0x9e3779b97f4a7c15ull)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return splitmix(state_);
  }

  /// Uniform in [0,1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo,hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Standard normal via Box-Muller (both uniforms drawn from the stream).
  double gaussian() {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 1e-300) u1 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  int sign() { return (next_u64() & 1u) ? 1 : -1; }

  /// Stable hash combine, used to derive per-(sample,index) substreams.
  static std::uint64_t hash(std::uint64_t a, std::uint64_t b) {
    return splitmix(a * 0x9e3779b97f4a7c15ull + b + 0x7f4a7c159e3779b9ull);
  }
  static std::uint64_t hash(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return hash(hash(a, b), c);
  }

  static std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Gaussian derived from a single key; used for frozen Monte Carlo sample sets
/// keyed by (seed, sample, position) so evaluations share noise.
inline double keyed_gaussian(std::uint64_t key) {
  std::uint64_t a = Rng::splitmix(key);
  std::uint64_t b = Rng::splitmix(a ^ 0xd1342543de82ef95ull);
  double u1 = static_cast<double>(a >> 11) * 0x1.0p-53;
  double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
  if (u1 <= 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

inline int keyed_sign(std::uint64_t key) {
  return (Rng::splitmix(key) & 1u) ? 1 : -1;
}

}  // namespace ssi
