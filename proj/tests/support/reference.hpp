#pragma once

// Test-only reference implementations. They restate the formulas directly and
// never call into the library's evaluation paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "tocq/mlp.hpp"

namespace tocq::ref {

inline double ee(const std::vector<double>& p, const std::vector<double>& g, double noise, double c) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) num += std::exp(-c * noise / (p[i] * g[i]));
    den += p[i];
  }
  return den > 0.0 ? num / den : 0.0;
}

inline double sr(const std::vector<double>& p, const std::vector<double>& g, double noise) {
  double r = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) r += std::log(1.0 + p[i] * g[i] / noise);
  return r;
}

// Brute-force argmax over a decision list, smallest index on ties (1-based).
template <typename U>
int argmax_label(const std::vector<std::vector<double>>& decisions, U&& u) {
  int best = 1;
  double best_u = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    const double v = u(decisions[i]);
    if (v > best_u) {
      best_u = v;
      best = static_cast<int>(i) + 1;
    }
  }
  return best;
}

// Single-band EE maximizer by exhaustive grid search on (0, p_max].
inline double grid_argmax_power(double g, double noise, double c, double p_max, std::size_t points) {
  double best_p = p_max;
  double best_u = -1.0;
  for (std::size_t k = 1; k <= points; ++k) {
    const double p = p_max * static_cast<double>(k) / static_cast<double>(points);
    const double u = std::exp(-c * noise / (p * g)) / p;
    if (u > best_u) {
      best_u = u;
      best_p = p;
    }
  }
  return best_p;
}

// Independent forward pass in normalized output units.
inline double raw_forward(const MlpModel& m, const std::vector<double>& g) {
  double y = m.b2;
  for (int j = 0; j < m.n_hidden; ++j) {
    double a = m.b1[static_cast<std::size_t>(j)];
    for (int i = 0; i < m.n_inputs; ++i) {
      const auto& nrm = m.input_norm[static_cast<std::size_t>(i)];
      a += m.w1[static_cast<std::size_t>(j * m.n_inputs + i)] * (g[static_cast<std::size_t>(i)] - nrm.shift) / nrm.scale;
    }
    y += m.w2[static_cast<std::size_t>(j)] / (1.0 + std::exp(-a));
  }
  return y;
}

// Small deterministic generator for test inputs (LCG + xorshift), separate from
// the library's sampler.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : s_(seed * 6364136223846793005ULL + 1442695040888963407ULL) {}
  double uniform(double lo = 0.0, double hi = 1.0) {
    s_ = s_ * 6364136223846793005ULL + 1442695040888963407ULL;
    std::uint64_t x = s_ ^ (s_ >> 29);
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 32;
    return lo + (hi - lo) * (static_cast<double>(x >> 11) * 0x1.0p-53);
  }
  double exp1() { return -std::log(uniform(0x1.0p-53, 1.0)); }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

 private:
  std::uint64_t s_;
};

// Random two-input model on the scale the trainer starts from (weights
// uniform in ±2/sqrt(fan_in)), with the label normalization the trainer would
// pick for the drawn label count.
inline MlpModel small_model(TestRng& rng) {
  const int m = rng.integer(1, 64);
  MlpModel model = MlpModel::zeros(2, 20, m);
  std::vector<double> theta(model.parameter_count());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    const double fan_in = k < 60 ? 2.0 : 20.0;  // w1 and b1 come first
    theta[k] = rng.uniform(-1, 1) * 2.0 / std::sqrt(fan_in);
  }
  model.set_parameters(theta);
  for (auto& a : model.input_norm) a = {rng.uniform(0.5, 1.5), rng.uniform(0.5, 1.5)};
  model.label_norm = {(m + 1) / 2.0, std::max(1.0, (m - 1) / 2.0)};
  return model;
}

}  // namespace tocq::ref
