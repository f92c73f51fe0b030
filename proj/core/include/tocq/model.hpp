#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tocq {

enum class Utility { EnergyEfficiency, SumRate };

std::string_view to_string(Utility u);
Utility parse_utility(std::string_view s);

// Channel gains, linear scale, one entry per band.
using GainVector = std::vector<double>;
// Transmit powers in mW, one entry per band.
using PowerVector = std::vector<double>;

// Physical constants of the link. Powers are in mW.
struct Scenario {
  int n_bands = 2;
  double p_max = 5.0;
  double noise_var = 1.0;
  double c = 1.0;
  Utility utility = Utility::EnergyEfficiency;

  // Throws DomainError when an invariant is violated.
  void validate() const;
};

double snr(double p, double g, double noise_var);

// Packet success rate exp(-c/s), extended by continuity at s = 0.
double efficiency(double s, double c);

// Sum of per-band efficiencies over total power. Zero at zero total power.
double ee_utility(std::span<const double> p, std::span<const double> g, const Scenario& scn);

// ln of ee_utility, computed with log-sum-exp so it stays finite where
// ee_utility underflows to 0. -inf at zero total power.
double ee_log_utility(std::span<const double> p, std::span<const double> g, const Scenario& scn);

// Sum of ln(1 + SNR_i), in nats.
double sr_utility(std::span<const double> p, std::span<const double> g, const Scenario& scn);

// Dispatches on scn.utility.
double utility(std::span<const double> p, std::span<const double> g, const Scenario& scn);

}  // namespace tocq
