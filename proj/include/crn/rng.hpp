#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace crn {

/// Deterministic random source for the simulation dynamics.
///
/// Wraps std::mt19937_64 but performs all variate transforms by hand so that
/// a given seed produces the same stream on every platform (the standard
/// pins the engine output, not the library distributions).
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double uniform01_open() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Exponential waiting time with the given rate (> 0).
  double exponential(double rate) { return -std::log(uniform01_open()) / rate; }

  /// Uniform index in [0, n).
  size_t index(size_t n) {
    size_t i = static_cast<size_t>(uniform01() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  /// Floor plus a Bernoulli draw on the fractional part; preserves the mean
  /// of x while returning an integer. x must be >= 0.
  int64_t stoch_round(double x) {
    double f = std::floor(x);
    int64_t n = static_cast<int64_t>(f);
    if (bernoulli(x - f)) ++n;
    return n;
  }

  /// Index drawn proportionally to the (non-negative) weights; total must be
  /// the sum of weights and > 0.
  size_t weighted_index(std::span<const double> weights, double total) {
    double target = uniform01() * total;
    double acc = 0.0;
    size_t last_positive = 0;
    for (size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      last_positive = i;
      acc += weights[i];
      if (target < acc) return i;
    }
    return last_positive;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace crn
