#include "tocq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "parallel.hpp"
#include "tocq/errors.hpp"

namespace tocq {

FeasibleRegion default_region(Utility u) {
  return u == Utility::EnergyEfficiency ? FeasibleRegion::Box : FeasibleRegion::Simplex;
}

void OracleConfig::validate() const {
  if (grid_points_per_dim < 2) throw DomainError("oracle: grid_points_per_dim must be >= 2");
}

int oracle_label(std::span<const double> g, const DecisionSet& ds, const Scenario& scn) {
  if (ds.size() == 0) throw DomainError("oracle_label: empty decision set");
  // EE is compared in the log domain: at very small gains every candidate's
  // utility underflows to 0 while their logarithms still differ.
  const auto score = [&](const PowerVector& d) {
    return scn.utility == Utility::EnergyEfficiency ? ee_log_utility(d, g, scn) : sr_utility(d, g, scn);
  };
  int best = 1;
  double best_u = score(ds.decisions().front());
  for (std::size_t i = 1; i < ds.size(); ++i) {
    const double u = score(ds.decisions()[i]);
    if (u > best_u) {
      best_u = u;
      best = static_cast<int>(i) + 1;
    }
  }
  return best;
}

std::vector<int> oracle_labels(std::span<const GainVector> gains, const DecisionSet& ds,
                               const Scenario& scn) {
  std::vector<int> labels(gains.size());
  detail::parallel_for(gains.size(), [&](std::size_t i) { labels[i] = oracle_label(gains[i], ds, scn); });
  return labels;
}

double ee_opt_power_1band(double g, const Scenario& scn) {
  if (!(g > 0.0)) throw DomainError("ee_opt_power_1band: gain must be > 0");
  if (!(scn.c > 0.0)) throw DomainError("ee_opt_power_1band: c must be > 0");
  return std::min(scn.c * scn.noise_var / g, scn.p_max);
}

PowerVector waterfill_sr(std::span<const double> g, const Scenario& scn) {
  const std::size_t n = g.size();
  if (n == 0) throw DomainError("waterfill_sr: no bands");
  std::vector<double> floor(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(g[i] > 0.0)) throw DomainError("waterfill_sr: gains must be > 0");
    floor[i] = scn.noise_var / g[i];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return floor[a] < floor[b]; });

  // Grow the active set over the lowest floors while the water level stays above
  // the next floor.
  double level = 0.0;
  double filled = 0.0;
  std::size_t active = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double candidate = (scn.p_max + filled + floor[order[k]]) / static_cast<double>(k + 1);
    if (k > 0 && candidate <= floor[order[k]]) break;
    filled += floor[order[k]];
    level = candidate;
    active = k + 1;
  }
  PowerVector p(n, 0.0);
  for (std::size_t k = 0; k < active; ++k) p[order[k]] = std::max(0.0, level - floor[order[k]]);
  return p;
}

double golden_section_argmax(const std::function<double(double)>& f, double lo, double hi,
                             double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > tol * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  double best = f1 >= f2 ? x1 : x2;
  double best_f = std::max(f1, f2);
  for (double edge : {lo, hi}) {
    const double fe = f(edge);
    if (fe > best_f) {
      best_f = fe;
      best = edge;
    }
  }
  return best;
}

namespace {

// Grid over [0, p_max]^N followed by one golden-section pass per refined axis.
double ee_box_opt(std::span<const double> g, const Scenario& scn, int points) {
  const auto n = g.size();
  const auto pts = static_cast<std::size_t>(points);
  double cells = 1.0;
  for (std::size_t b = 0; b < n; ++b) cells *= static_cast<double>(pts);
  if (cells > 2e8) throw UnsupportedCase("continuous EE oracle: box grid too large for this band count");

  const double step = scn.p_max / static_cast<double>(pts - 1);
  std::vector<double> axis(pts);
  for (std::size_t k = 0; k < pts; ++k) axis[k] = step * static_cast<double>(k);
  axis.back() = scn.p_max;

  // Per-band efficiencies on the grid: f(x_k g_b / s2).
  std::vector<std::vector<double>> eff(n, std::vector<double>(pts));
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t k = 0; k < pts; ++k) eff[b][k] = efficiency(snr(axis[k], g[b], scn.noise_var), scn.c);
  }

  std::vector<std::size_t> idx(n, 0);
  std::vector<std::size_t> best_idx(n, 0);
  double best = 0.0;
  while (true) {
    // Odometer increment; the all-zero point is skipped (utility 0 by convention).
    std::size_t d = 0;
    while (d < n && ++idx[d] == pts) idx[d++] = 0;
    if (d == n) break;
    double success = 0.0;
    double total = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      success += eff[b][idx[b]];
      total += axis[idx[b]];
    }
    const double u = success / total;
    if (u > best) {
      best = u;
      best_idx = idx;
    }
  }

  PowerVector p(n);
  for (std::size_t b = 0; b < n; ++b) p[b] = axis[best_idx[b]];
  const auto nonzero = static_cast<std::size_t>(
      std::count_if(best_idx.begin(), best_idx.end(), [](std::size_t k) { return k != 0; }));
  for (std::size_t b = 0; b < n; ++b) {
    if (nonzero == 1 && best_idx[b] == 0) continue;
    const double lo = best_idx[b] == 0 ? 0.0 : axis[best_idx[b] - 1];
    const double hi = best_idx[b] + 1 == pts ? scn.p_max : axis[best_idx[b] + 1];
    auto along = [&](double x) {
      PowerVector q = p;
      q[b] = x;
      return ee_utility(q, g, scn);
    };
    const double x = golden_section_argmax(along, lo, hi);
    if (along(x) > ee_utility(p, g, scn)) p[b] = x;
  }
  best = std::max(best, ee_utility(p, g, scn));

  // Single-active-band allocations have a closed-form optimum.
  for (std::size_t b = 0; b < n; ++b) {
    PowerVector q(n, 0.0);
    q[b] = ee_opt_power_1band(g[b], scn);
    best = std::max(best, ee_utility(q, g, scn));
  }
  return best;
}

double ee_simplex_opt(std::span<const double> g, const Scenario& scn, int points) {
  if (g.size() == 1) return ee_utility(std::vector<double>{scn.p_max}, g, scn);
  if (g.size() != 2) throw UnsupportedCase("continuous EE oracle on the simplex supports N <= 2");
  auto at = [&](double x) { return ee_utility(std::vector<double>{x, scn.p_max - x}, g, scn); };
  const auto pts = static_cast<std::size_t>(points);
  const double step = scn.p_max / static_cast<double>(pts - 1);
  std::size_t best_k = 0;
  double best = at(0.0);
  for (std::size_t k = 1; k < pts; ++k) {
    const double u = at(k + 1 == pts ? scn.p_max : step * static_cast<double>(k));
    if (u > best) {
      best = u;
      best_k = k;
    }
  }
  const double lo = best_k == 0 ? 0.0 : step * static_cast<double>(best_k - 1);
  const double hi = std::min(scn.p_max, step * static_cast<double>(best_k + 1));
  return std::max(best, at(golden_section_argmax(at, lo, hi)));
}

}  // namespace

double continuous_opt(std::span<const double> g, const Scenario& scn, const OracleConfig& cfg) {
  cfg.validate();
  if (g.size() != static_cast<std::size_t>(scn.n_bands)) throw DomainError("continuous_opt: dimension mismatch");
  if (scn.utility == Utility::SumRate) {
    if (cfg.region == FeasibleRegion::Simplex) return sr_utility(waterfill_sr(g, scn), g, scn);
    // Sum-rate is nondecreasing in every power, so the box corner is optimal.
    return sr_utility(PowerVector(g.size(), scn.p_max), g, scn);
  }
  if (cfg.region == FeasibleRegion::Simplex) return ee_simplex_opt(g, scn, cfg.grid_points_per_dim);
  if (g.size() == 1) {
    const PowerVector p{ee_opt_power_1band(g[0], scn)};
    return ee_utility(p, g, scn);
  }
  return ee_box_opt(g, scn, cfg.grid_points_per_dim);
}

std::vector<double> continuous_opts(std::span<const GainVector> gains, const Scenario& scn,
                                    const OracleConfig& cfg) {
  std::vector<double> out(gains.size());
  detail::parallel_for(gains.size(), [&](std::size_t i) { out[i] = continuous_opt(gains[i], scn, cfg); },
                       8);
  return out;
}

}  // namespace tocq
