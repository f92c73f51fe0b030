#include "tocq/model.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <vector>

#include "tocq/errors.hpp"

namespace tocq {

std::string_view to_string(Utility u) {
  switch (u) {
    case Utility::EnergyEfficiency:
      return "ee";
    case Utility::SumRate:
      return "sum_rate";
  }
  return "unknown";
}

Utility parse_utility(std::string_view s) {
  if (s == "ee" || s == "energy_efficiency") return Utility::EnergyEfficiency;
  if (s == "sum_rate" || s == "sr") return Utility::SumRate;
  throw DomainError("unknown utility '" + std::string(s) + "' (expected ee or sum_rate)");
}

void Scenario::validate() const {
  if (n_bands < 1) throw DomainError("scenario: n_bands must be >= 1");
  if (!(p_max > 0.0) || !std::isfinite(p_max)) throw DomainError("scenario: p_max must be > 0");
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
    throw DomainError("scenario: noise_var must be > 0");
  }
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("scenario: c must be >= 0");
}

double snr(double p, double g, double noise_var) {
  if (!(noise_var > 0.0)) throw DomainError("snr: noise_var must be > 0");
  return p * g / noise_var;
}

double efficiency(double s, double c) {
  if (s <= 0.0) return c > 0.0 ? 0.0 : 1.0;
  return std::exp(-c / s);
}

namespace {

void check_dims(std::span<const double> p, std::span<const double> g, const Scenario& scn) {
  const auto n = static_cast<std::size_t>(scn.n_bands);
  if (p.size() != n || g.size() != n) {
    throw DomainError("utility: expected " + std::to_string(n) + " bands, got p=" +
                      std::to_string(p.size()) + " g=" + std::to_string(g.size()));
  }
}

}  // namespace

double ee_utility(std::span<const double> p, std::span<const double> g, const Scenario& scn) {
  check_dims(p, g, scn);
  double success = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    success += efficiency(snr(p[i], g[i], scn.noise_var), scn.c);
    total += p[i];
  }
  if (total <= 0.0) return 0.0;
  return success / total;
}

double ee_log_utility(std::span<const double> p, std::span<const double> g, const Scenario& scn) {
  check_dims(p, g, scn);
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  double total = 0.0;
  double peak = kNegInf;
  std::vector<double> logs(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double s = snr(p[i], g[i], scn.noise_var);
    logs[i] = s > 0.0 ? -scn.c / s : (scn.c > 0.0 ? kNegInf : 0.0);
    peak = std::max(peak, logs[i]);
    total += p[i];
  }
  if (total <= 0.0 || peak == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double l : logs) sum += std::exp(l - peak);
  return peak + std::log(sum) - std::log(total);
}

double sr_utility(std::span<const double> p, std::span<const double> g, const Scenario& scn) {
  check_dims(p, g, scn);
  double rate = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) rate += std::log1p(snr(p[i], g[i], scn.noise_var));
  return rate;
}

double utility(std::span<const double> p, std::span<const double> g, const Scenario& scn) {
  return scn.utility == Utility::EnergyEfficiency ? ee_utility(p, g, scn) : sr_utility(p, g, scn);
}

}  // namespace tocq
