#include "tocq/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "parallel.hpp"
#include "tocq/analytic_quantizer.hpp"
#include "tocq/dataset.hpp"
#include "tocq/errors.hpp"
#include "tocq/numfmt.hpp"

namespace tocq {

std::string_view to_string(Baseline b) {
  return b == Baseline::Continuous ? "continuous" : "discrete_best";
}

std::string_view to_string(LabelerKind k) {
  switch (k) {
    case LabelerKind::Oracle:
      return "oracle";
    case LabelerKind::Neural:
      return "nn";
    case LabelerKind::Analytic:
      return "analytic";
  }
  return "unknown";
}

Baseline parse_baseline(std::string_view s) {
  if (s == "continuous") return Baseline::Continuous;
  if (s == "discrete_best") return Baseline::DiscreteBest;
  throw DomainError("unknown baseline '" + std::string(s) + "' (expected continuous or discrete_best)");
}

LabelerKind parse_labeler(std::string_view s) {
  if (s == "oracle") return LabelerKind::Oracle;
  if (s == "nn") return LabelerKind::Neural;
  if (s == "analytic") return LabelerKind::Analytic;
  throw DomainError("unknown labeler '" + std::string(s) + "' (expected oracle, nn or analytic)");
}

std::vector<double> discrete_best(std::span<const GainVector> gains, const DecisionSet& ds,
                                  const Scenario& scn) {
  std::vector<double> out(gains.size());
  detail::parallel_for(gains.size(), [&](std::size_t i) {
    out[i] = utility(ds.at_label(oracle_label(gains[i], ds, scn)), gains[i], scn);
  });
  return out;
}

LossStats loss_from_labels(std::span<const int> labels, std::span<const GainVector> test,
                           const DecisionSet& ds, const Scenario& scn,
                           std::span<const double> reference) {
  if (test.empty()) throw DomainError("optimality_loss: empty test set");
  if (labels.size() != test.size() || reference.size() != test.size()) {
    throw DomainError("optimality_loss: size mismatch");
  }
  const std::size_t n = test.size();
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ref = reference[i];
    if (ref == 0.0) throw DomainError("optimality_loss: reference utility is zero (degenerate scenario)");
    const double achieved = utility(ds.at_label(labels[i]), test[i], scn);
    const double loss = std::abs((ref - achieved) / ref) * 100.0;
    sum += loss;
    sum_sq += loss * loss;
  }
  LossStats s;
  s.n = n;
  s.mean_pct = sum / static_cast<double>(n);
  if (n > 1) {
    const double var = std::max(0.0, (sum_sq - sum * s.mean_pct) / static_cast<double>(n - 1));
    s.stderr_pct = std::sqrt(var / static_cast<double>(n));
  }
  return s;
}

LossStats optimality_loss(const Labeler& labeler, std::span<const GainVector> test,
                          const DecisionSet& ds, const Scenario& scn, Baseline baseline,
                          const OracleConfig& oracle) {
  if (test.empty()) throw DomainError("optimality_loss: empty test set");
  std::vector<int> labels(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) labels[i] = labeler(test[i]);
  const auto reference =
      baseline == Baseline::Continuous ? continuous_opts(test, scn, oracle) : discrete_best(test, ds, scn);
  return loss_from_labels(labels, test, ds, scn, reference);
}

EvalReport sweep(std::span<const int> m_list, LabelerKind labeler, const Scenario& scn,
                 const SweepConfig& cfg) {
  scn.validate();
  cfg.oracle.validate();
  cfg.train.validate();
  for (std::size_t i = 1; i < m_list.size(); ++i) {
    if (m_list[i] <= m_list[i - 1]) throw DomainError("sweep: M list must be strictly increasing");
  }
  EvalReport report;
  if (m_list.empty()) return report;
  if (labeler == LabelerKind::Analytic &&
      (scn.n_bands != 1 || scn.utility != Utility::EnergyEfficiency)) {
    throw UnsupportedCase("analytic labeler requires a single band and the EE utility");
  }

  const auto gains = sample_gains(cfg.n_samples, scn.n_bands, cfg.data_seed);
  const auto idx = split_indices(gains.size(), cfg.train_fraction, cfg.split_seed);
  std::vector<GainVector> test;
  test.reserve(gains.size() - idx.n_train);
  for (std::size_t i = idx.n_train; i < idx.order.size(); ++i) test.push_back(gains[idx.order[i]]);

  std::vector<double> continuous;
  if (cfg.baseline == Baseline::Continuous) continuous = continuous_opts(test, scn, cfg.oracle);

  report.records.resize(m_list.size());
  detail::parallel_for(
      m_list.size(),
      [&](std::size_t leg) {
        const int m = m_list[leg];
        const auto ds = experiment_grid(scn, m);
        std::vector<int> labels;
        switch (labeler) {
          case LabelerKind::Oracle:
            labels = oracle_labels(test, ds, scn);
            break;
          case LabelerKind::Analytic: {
            const auto part = build_partition(ds, scn);
            labels.reserve(test.size());
            for (const auto& g : test) labels.push_back(part.quantize(g[0]));
            break;
          }
          case LabelerKind::Neural: {
            const auto full = build_dataset(gains, ds, scn);
            const auto [train_set, test_set] = split(full, cfg.train_fraction, cfg.split_seed);
            const auto trained = tocq::train(train_set, cfg.train, m);
            labels = predict_labels(trained.model, test);
            break;
          }
        }
        const auto reference =
            cfg.baseline == Baseline::Continuous ? continuous : discrete_best(test, ds, scn);
        const auto stats = loss_from_labels(labels, test, ds, scn, reference);
        auto& r = report.records[leg];
        r.utility = scn.utility;
        r.m = m;
        r.labeler = labeler;
        r.baseline = cfg.baseline;
        r.mean_loss_pct = stats.mean_pct;
        r.stderr_pct = stats.stderr_pct;
        r.n_test = stats.n;
        r.data_seed = cfg.data_seed;
        r.split_seed = cfg.split_seed;
        r.init_seed = cfg.train.seed;
      },
      1);
  return report;
}

namespace {

std::optional<int> smallest_m_meeting(const EvalReport& report, double sigma_pct) {
  for (const auto& r : report.records) {
    if (r.mean_loss_pct <= sigma_pct) return r.m;
  }
  return std::nullopt;
}

}  // namespace

GammaResult compression_rate(const EvalReport& report, double sigma_pct, double reference_sigma_pct) {
  GammaResult out;
  out.sigma_pct = sigma_pct;
  if (report.records.empty()) return out;
  out.m_sigma = smallest_m_meeting(report, sigma_pct);
  out.m_reference = smallest_m_meeting(report, reference_sigma_pct);
  if (!out.m_reference) {
    out.m_reference = report.records.back().m;
    out.reference_substituted = true;
  }
  if (out.m_sigma && *out.m_sigma > 1) {
    out.gamma = std::log2(static_cast<double>(*out.m_reference)) / std::log2(static_cast<double>(*out.m_sigma));
  }
  return out;
}

void write_results_header(std::ostream& os) {
  os << "utility,M,labeler,baseline,mean_loss_pct,stderr_pct,n_test,seed\n";
}

void write_results_row(std::ostream& os, const SweepRecord& r) {
  os << to_string(r.utility) << ',' << r.m << ',' << to_string(r.labeler) << ',' << to_string(r.baseline)
     << ',' << numfmt::shortest(r.mean_loss_pct) << ',' << numfmt::shortest(r.stderr_pct) << ','
     << r.n_test << ',' << r.data_seed << '\n';
}

void write_gamma_header(std::ostream& os) { os << "utility,sigma_pct,M_sigma,gamma,reference_flag\n"; }

void write_gamma_row(std::ostream& os, Utility u, const GammaResult& g) {
  os << to_string(u) << ',' << numfmt::shortest(g.sigma_pct) << ','
     << (g.m_sigma ? std::to_string(*g.m_sigma) : std::string("NA")) << ','
     << (g.gamma ? numfmt::shortest(*g.gamma) : std::string("NA")) << ','
     << (g.reference_substituted ? "largest_m" : "measured") << '\n';
}

}  // namespace tocq
