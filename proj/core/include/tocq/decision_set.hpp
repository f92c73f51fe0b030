#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "tocq/model.hpp"

namespace tocq {

// Ordered list of candidate power vectors. Decision i carries label i (1-based).
class DecisionSet {
 public:
  DecisionSet() = default;
  // Throws DomainError on an empty list, ragged dimensions or negative powers.
  explicit DecisionSet(std::vector<PowerVector> decisions);

  std::size_t size() const { return decisions_.size(); }
  int n_bands() const { return decisions_.empty() ? 0 : static_cast<int>(decisions_.front().size()); }

  // 1-based access.
  const PowerVector& at_label(int label) const;
  const std::vector<PowerVector>& decisions() const& { return decisions_; }
  std::vector<PowerVector> decisions() && { return std::move(decisions_); }

  bool operator==(const DecisionSet&) const = default;

 private:
  std::vector<PowerVector> decisions_;
};

enum class Spacing { Uniform, Geometric };

// Single-band power levels, strictly increasing with maximum p_max.
// Uniform: P_i = p_max * i / M. Geometric: P_i = p_max * ratio^(M - i).
DecisionSet single_channel_grid(int m, double p_max, Spacing spacing = Spacing::Uniform,
                                double ratio = 0.5);

// Two-band one-active-band set: all (x, 0) ascending, then all (0, x) ascending,
// x in {p_max * 2i / M : i = 1..M/2}. M must be even and >= 2.
DecisionSet ee_pair_grid(int m, double p_max);

// Two-band equispaced grid on p_1 + p_2 = p_max, corners included, p_1 ascending.
DecisionSet sr_simplex_grid(int m, double p_max);

// The decision set the experiments use for a scenario: uniform levels for one band,
// ee_pair_grid / sr_simplex_grid for two bands.
DecisionSet experiment_grid(const Scenario& scn, int m);

// CSV with header `label,p_1,...,p_N`.
void write_decisions_csv(std::ostream& os, const DecisionSet& ds);

}  // namespace tocq
