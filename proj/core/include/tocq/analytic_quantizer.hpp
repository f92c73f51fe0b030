#pragma once

#include <iosfwd>
#include <vector>

#include "tocq/decision_set.hpp"
#include "tocq/model.hpp"

namespace tocq {

// Channel gain at which powers p_lo < p_hi give the same energy efficiency
// for a single band. Higher gains prefer p_lo.
double transition_level(double p_lo, double p_hi, double c, double noise_var);

// Decision-optimal partition of the single-band gain axis (0, inf) for a set of
// increasing power levels under the EE utility.
//
// Cell k (1-based) is mapped to power level P_k. With thresholds
// t_1 > t_2 > ... > t_{M-1}, t_k = transition_level(P_k, P_{k+1}):
//   g >= t_1            -> P_1
//   t_{k} > g >= t_{k+1} -> P_{k+1}
//   g <  t_{M-1}         -> P_M
// A gain exactly on a threshold goes to the lower-power cell.
class ScalarPartition {
 public:
  ScalarPartition(std::vector<double> levels, std::vector<double> thresholds);

  const std::vector<double>& levels() const { return levels_; }
  const std::vector<double>& thresholds() const { return thresholds_; }
  std::size_t cell_count() const { return levels_.size(); }

  // Label (1-based index into levels) of the cell containing g. Throws for g <= 0.
  int quantize(double g) const;
  double power_for(double g) const { return levels_[static_cast<std::size_t>(quantize(g) - 1)]; }

 private:
  std::vector<double> levels_;
  std::vector<double> thresholds_;
};

// Requires a single-band strictly increasing level set and the EE utility with c > 0.
ScalarPartition build_partition(const DecisionSet& levels, const Scenario& scn);

// Header comments carry levels and constants, then `threshold_index,gain_threshold` rows.
void write_partition_csv(std::ostream& os, const ScalarPartition& part, const Scenario& scn);
ScalarPartition read_partition_csv(std::istream& is);

}  // namespace tocq
