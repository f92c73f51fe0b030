#include "tocq/analytic_quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "tocq/errors.hpp"
#include "tocq/numfmt.hpp"

namespace tocq {

double transition_level(double p_lo, double p_hi, double c, double noise_var) {
  if (!(p_lo > 0.0)) throw DomainError("transition_level: p_lo must be > 0");
  if (!(p_hi > p_lo)) throw DomainError("transition_level: requires p_lo < p_hi");
  if (!(noise_var > 0.0)) throw DomainError("transition_level: noise_var must be > 0");
  if (!(c > 0.0)) throw DomainError("transition_level: c must be > 0 (c = 0 always prefers the lowest power)");
  // c*s2*(1/p_lo - 1/p_hi) / ln(p_hi/p_lo), arranged to avoid cancellation when
  // the two levels are close.
  const double gap = p_hi - p_lo;
  const double inv_diff = gap / (p_lo * p_hi);
  const double log_ratio = std::log1p(gap / p_lo);
  return c * noise_var * inv_diff / log_ratio;
}

ScalarPartition::ScalarPartition(std::vector<double> levels, std::vector<double> thresholds)
    : levels_(std::move(levels)), thresholds_(std::move(thresholds)) {
  if (levels_.empty()) throw DomainError("partition needs at least one level");
  if (thresholds_.size() + 1 != levels_.size()) {
    throw DomainError("partition needs exactly M-1 thresholds for M levels");
  }
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    if (!(levels_[i] > levels_[i - 1])) throw DomainError("partition levels must be strictly increasing");
  }
  for (std::size_t i = 0; i < thresholds_.size(); ++i) {
    if (!(thresholds_[i] > 0.0)) throw DomainError("partition thresholds must be > 0");
    if (i > 0 && !(thresholds_[i] < thresholds_[i - 1])) {
      throw DomainError("partition thresholds must be strictly decreasing");
    }
  }
}

int ScalarPartition::quantize(double g) const {
  if (!(g > 0.0)) throw DomainError("quantize: gain must be > 0");
  // Number of thresholds strictly above g; thresholds are sorted descending.
  const auto above = std::partition_point(thresholds_.begin(), thresholds_.end(),
                                          [g](double t) { return t > g; });
  return static_cast<int>(above - thresholds_.begin()) + 1;
}

ScalarPartition build_partition(const DecisionSet& levels, const Scenario& scn) {
  scn.validate();
  if (scn.utility != Utility::EnergyEfficiency) {
    throw UnsupportedCase("analytic partition exists only for the energy-efficiency utility");
  }
  if (levels.n_bands() != 1 || scn.n_bands != 1) {
    throw UnsupportedCase("analytic partition exists only for a single band (N = 1)");
  }
  std::vector<double> p;
  p.reserve(levels.size());
  for (const auto& d : levels.decisions()) p.push_back(d.front());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0)) throw DomainError("build_partition: levels must be > 0");
    if (i > 0 && !(p[i] > p[i - 1])) throw DomainError("build_partition: levels must be strictly increasing");
  }
  std::vector<double> t;
  t.reserve(p.size());
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    t.push_back(transition_level(p[i], p[i + 1], scn.c, scn.noise_var));
  }
  return ScalarPartition(std::move(p), std::move(t));
}

void write_partition_csv(std::ostream& os, const ScalarPartition& part, const Scenario& scn) {
  os << "# levels=" << numfmt::join(part.levels()) << '\n';
  os << "# c=" << numfmt::shortest(scn.c) << ",noise_var=" << numfmt::shortest(scn.noise_var) << '\n';
  os << "threshold_index,gain_threshold\n";
  const auto& t = part.thresholds();
  for (std::size_t i = 0; i < t.size(); ++i) os << (i + 1) << ',' << numfmt::shortest(t[i]) << '\n';
}

ScalarPartition read_partition_csv(std::istream& is) {
  std::vector<double> levels;
  std::vector<double> thresholds;
  bool have_levels = false;
  bool have_header = false;
  std::string line;
  while (std::getline(is, line)) {
    const auto text = numfmt::trim(line);
    if (text.empty()) continue;
    if (text.starts_with('#')) {
      const auto body = numfmt::trim(text.substr(1));
      if (body.starts_with("levels=")) {
        for (auto v : numfmt::split(body.substr(7), ',')) levels.push_back(numfmt::parse_double(v));
        have_levels = true;
      }
      continue;
    }
    if (!have_header) {
      if (text != "threshold_index,gain_threshold") throw ParseError("partition: unexpected header");
      have_header = true;
      continue;
    }
    const auto cols = numfmt::split(text, ',');
    if (cols.size() != 2) throw ParseError("partition: expected 2 columns");
    if (numfmt::parse_int(cols[0]) != static_cast<long long>(thresholds.size() + 1)) {
      throw ParseError("partition: threshold indices out of order");
    }
    thresholds.push_back(numfmt::parse_double(cols[1]));
  }
  if (!have_levels || !have_header) throw ParseError("partition: missing levels or header");
  return ScalarPartition(std::move(levels), std::move(thresholds));
}

}  // namespace tocq
