#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tocq/decision_set.hpp"
#include "tocq/model.hpp"

namespace tocq {

enum class FeasibleRegion { Box, Simplex };

// EE optimizes over the box [0, p_max]^N, sum-rate over the simplex sum(p) = p_max.
FeasibleRegion default_region(Utility u);

struct OracleConfig {
  int grid_points_per_dim = 1001;
  FeasibleRegion region = FeasibleRegion::Box;

  static OracleConfig for_utility(Utility u) { return {1001, default_region(u)}; }
  void validate() const;
};

// Smallest label attaining max_i u(d_i; g).
int oracle_label(std::span<const double> g, const DecisionSet& ds, const Scenario& scn);

// Labels for a row-major batch of gain vectors (n_bands columns). Runs in parallel.
std::vector<int> oracle_labels(std::span<const GainVector> gains, const DecisionSet& ds,
                               const Scenario& scn);

// Maximizer of exp(-c s2 / (p g)) / p on [0, p_max]: min(c s2 / g, p_max).
double ee_opt_power_1band(double g, const Scenario& scn);

// Sum-rate optimal allocation with total power p_max: p_i = max(0, mu - s2/g_i).
PowerVector waterfill_sr(std::span<const double> g, const Scenario& scn);

// Largest utility attainable over the continuous feasible region.
double continuous_opt(std::span<const double> g, const Scenario& scn, const OracleConfig& cfg);

std::vector<double> continuous_opts(std::span<const GainVector> gains, const Scenario& scn,
                                    const OracleConfig& cfg);

// Golden-section search for the maximum of a unimodal function on [lo, hi].
// Returns the abscissa of the best point probed.
double golden_section_argmax(const std::function<double(double)>& f, double lo, double hi,
                             double tol = 1e-12);

}  // namespace tocq
