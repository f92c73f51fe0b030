#include "tocq/decision_set.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "tocq/errors.hpp"
#include "tocq/numfmt.hpp"

namespace tocq {

DecisionSet::DecisionSet(std::vector<PowerVector> decisions) : decisions_(std::move(decisions)) {
  if (decisions_.empty()) throw DomainError("decision set must not be empty");
  const auto n = decisions_.front().size();
  if (n == 0) throw DomainError("decision vectors must have at least one band");
  for (const auto& d : decisions_) {
    if (d.size() != n) throw DomainError("decision vectors have mismatched dimensions");
    for (double p : d) {
      if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("decision powers must be finite and >= 0");
    }
  }
}

const PowerVector& DecisionSet::at_label(int label) const {
  if (label < 1 || static_cast<std::size_t>(label) > decisions_.size()) {
    throw DomainError("label " + std::to_string(label) + " out of range 1.." +
                      std::to_string(decisions_.size()));
  }
  return decisions_[static_cast<std::size_t>(label - 1)];
}

DecisionSet single_channel_grid(int m, double p_max, Spacing spacing, double ratio) {
  if (m < 1) throw DomainError("single_channel_grid: M must be >= 1");
  if (!(p_max > 0.0)) throw DomainError("single_channel_grid: p_max must be > 0");
  if (spacing == Spacing::Geometric && !(ratio > 0.0 && ratio < 1.0)) {
    throw DomainError("single_channel_grid: geometric ratio must lie in (0, 1)");
  }
  std::vector<PowerVector> levels;
  levels.reserve(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    const double p = spacing == Spacing::Uniform ? p_max * i / m : p_max * std::pow(ratio, m - i);
    levels.push_back({p});
  }
  return DecisionSet(std::move(levels));
}

DecisionSet ee_pair_grid(int m, double p_max) {
  if (m < 2 || m % 2 != 0) throw DomainError("ee_pair_grid: M must be even and >= 2");
  if (!(p_max > 0.0)) throw DomainError("ee_pair_grid: p_max must be > 0");
  const int half = m / 2;
  std::vector<PowerVector> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int i = 1; i <= half; ++i) out.push_back({p_max * 2 * i / m, 0.0});
  for (int i = 1; i <= half; ++i) out.push_back({0.0, p_max * 2 * i / m});
  return DecisionSet(std::move(out));
}

DecisionSet sr_simplex_grid(int m, double p_max) {
  if (m < 2) throw DomainError("sr_simplex_grid: M must be >= 2");
  if (!(p_max > 0.0)) throw DomainError("sr_simplex_grid: p_max must be > 0");
  std::vector<PowerVector> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    out.push_back({p_max * (i - 1) / (m - 1), p_max * (m - i) / (m - 1)});
  }
  return DecisionSet(std::move(out));
}

DecisionSet experiment_grid(const Scenario& scn, int m) {
  if (scn.n_bands == 1) return single_channel_grid(m, scn.p_max);
  if (scn.n_bands == 2) {
    return scn.utility == Utility::EnergyEfficiency ? ee_pair_grid(m, scn.p_max)
                                                    : sr_simplex_grid(m, scn.p_max);
  }
  throw UnsupportedCase("decision grids are defined for one or two bands only");
}

void write_decisions_csv(std::ostream& os, const DecisionSet& ds) {
  os << "label";
  for (int b = 1; b <= ds.n_bands(); ++b) os << ",p_" << b;
  os << '\n';
  for (std::size_t i = 0; i < ds.size(); ++i) {
    os << (i + 1) << ',' << numfmt::join(ds.decisions()[i]) << '\n';
  }
}

}  // namespace tocq
