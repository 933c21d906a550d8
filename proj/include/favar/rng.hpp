#ifndef FAVAR_RNG_HPP
#define FAVAR_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace favar {

// Deterministic, splittable random source. Every stochastic task derives its
// own child stream from a parent seed plus a textual label, so results are
// reproducible regardless of how work is scheduled across threads.
//
// std::mt19937_64 has a fully specified algorithm; the uniform and normal
// samplers below avoid std::*_distribution, whose output is
// implementation-defined, so identical seeds give identical streams on every
// platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix(seed)) {}

  std::uint64_t seed() const { return seed_; }

  // Child stream for an independent task, e.g. derive("identify/TX/PIT").
  // Derivation depends only on the construction seed, not on how much of
  // this stream has been consumed.
  Rng derive(std::string_view label) const {
    return Rng(splitmix(seed_ ^ fnv1a(label)));
  }

  Rng derive(std::string_view label, std::uint64_t index) const {
    return Rng(splitmix(seed_ ^ fnv1a(label) ^ splitmix(index)));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Integer in [0, n). n is always far below 2^53 here (panel sizes, draw
  // counts), so mapping through the 53-bit uniform is exact enough.
  std::uint64_t uniform_index(std::uint64_t n) {
    auto k = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

  // Standard normal via Box-Muller; the cached spare keeps the stream cheap
  // and deterministic.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (const char c : s) {
      h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
      h *= 1099511628211ull;
    }
    return h;
  }

  static std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace favar

#endif
