#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace boss {

// SplitMix64 step: add the golden-ratio increment, then finalize.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-trial seed: the run_id-th output of a SplitMix64 stream seeded with
// base_seed. Trials are independent of execution order, and adding more
// runs never perturbs the seeds of existing ones.
constexpr std::uint64_t trial_seed(std::uint64_t base_seed,
                                   std::uint64_t run_id) noexcept {
  return splitmix64(splitmix64(base_seed) + 0x9e3779b97f4a7c15ULL * run_id);
}

// Seeded random stream. All distributions are derived from the raw engine
// output by explicit arithmetic, so replays are bit-identical across
// standard-library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1]; safe under log().
  double uniform_pos() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  int uniform_int(int n) {  // [0, n)
    return static_cast<int>(uniform() * static_cast<double>(n));
  }

  double normal() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  // Unit-scale gamma draw, Marsaglia-Tsang squeeze-free variant.
  double gamma(double shape) {
    if (!(shape > 0.0)) {
      throw std::invalid_argument("gamma: shape must be positive");
    }
    if (shape < 1.0) {
      const double u = uniform_pos();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      const double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = uniform_pos();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
        return d * v;
      }
    }
  }

  double beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
  }

  // Dirichlet draw via normalized independent gammas.
  void dirichlet(std::span<const double> concentration, std::span<double> out) {
    double total = 0.0;
    for (std::size_t i = 0; i < concentration.size(); ++i) {
      out[i] = gamma(concentration[i]);
      total += out[i];
    }
    for (std::size_t i = 0; i < concentration.size(); ++i) out[i] /= total;
  }

  // Draw an index proportional to non-negative weights.
  int categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = uniform() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (u < weights[i]) return static_cast<int>(i);
      u -= weights[i];
    }
    return static_cast<int>(weights.size()) - 1;
  }

  // Draw an index proportional to exp(logits), max-shifted for stability.
  int categorical_logits(std::span<const double> logits) {
    double m = logits[0];
    for (double x : logits) m = std::max(m, x);
    double total = 0.0;
    for (double x : logits) total += std::exp(x - m);
    double u = uniform() * total;
    for (std::size_t i = 0; i < logits.size(); ++i) {
      const double w = std::exp(logits[i] - m);
      if (u < w) return static_cast<int>(i);
      u -= w;
    }
    return static_cast<int>(logits.size()) - 1;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace boss
