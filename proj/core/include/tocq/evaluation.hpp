#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tocq/decision_set.hpp"
#include "tocq/mlp.hpp"
#include "tocq/model.hpp"
#include "tocq/oracle.hpp"

namespace tocq {

// Reference utility u*(g) in the loss: the continuous optimum, or the best
// decision in the same discrete set.
enum class Baseline { Continuous, DiscreteBest };
enum class LabelerKind { Oracle, Neural, Analytic };

std::string_view to_string(Baseline b);
std::string_view to_string(LabelerKind k);
Baseline parse_baseline(std::string_view s);
LabelerKind parse_labeler(std::string_view s);

using Labeler = std::function<int(std::span<const double>)>;

struct LossStats {
  double mean_pct = 0.0;
  double stderr_pct = 0.0;  // sample std / sqrt(n)
  std::size_t n = 0;
};

// Mean of |u*(g) - u(d_label(g); g)| / u*(g) * 100 over the test gains.
// Throws DomainError if some u*(g) is zero.
LossStats optimality_loss(const Labeler& labeler, std::span<const GainVector> test,
                          const DecisionSet& ds, const Scenario& scn, Baseline baseline,
                          const OracleConfig& oracle = {});

// Same metric from precomputed labels and reference utilities.
LossStats loss_from_labels(std::span<const int> labels, std::span<const GainVector> test,
                           const DecisionSet& ds, const Scenario& scn,
                           std::span<const double> reference);

// Best utility reachable within the decision set, per gain vector.
std::vector<double> discrete_best(std::span<const GainVector> gains, const DecisionSet& ds,
                                  const Scenario& scn);

struct SweepConfig {
  std::size_t n_samples = 10000;
  double train_fraction = 0.9;
  std::uint64_t data_seed = 1;
  std::uint64_t split_seed = 2;
  TrainConfig train;  // train.seed seeds weight init and batch order
  OracleConfig oracle;
  Baseline baseline = Baseline::Continuous;
};

struct SweepRecord {
  Utility utility = Utility::EnergyEfficiency;
  int m = 0;
  LabelerKind labeler = LabelerKind::Oracle;
  Baseline baseline = Baseline::Continuous;
  double mean_loss_pct = 0.0;
  double stderr_pct = 0.0;
  std::size_t n_test = 0;
  std::uint64_t data_seed = 0;
  std::uint64_t split_seed = 0;
  std::uint64_t init_seed = 0;
};

struct EvalReport {
  std::vector<SweepRecord> records;  // strictly increasing m
};

// One loss record per M. The same gains and split are used for every M, so the
// legs differ only in the decision set (and the trained network).
EvalReport sweep(std::span<const int> m_list, LabelerKind labeler, const Scenario& scn,
                 const SweepConfig& cfg);

struct GammaResult {
  double sigma_pct = 0.0;
  std::optional<int> m_sigma;
  std::optional<int> m_reference;
  std::optional<double> gamma;      // empty when undefined
  bool reference_substituted = false;  // no swept M met reference_sigma; largest M used
};

// gamma = log2 M(reference) / log2 M(sigma), M(s) = smallest swept M with loss <= s.
GammaResult compression_rate(const EvalReport& report, double sigma_pct, double reference_sigma_pct = 1.0);

// Results CSV: `utility,M,labeler,baseline,mean_loss_pct,stderr_pct,n_test,seed`.
void write_results_header(std::ostream& os);
void write_results_row(std::ostream& os, const SweepRecord& r);
// Gamma CSV: `utility,sigma_pct,M_sigma,gamma,reference_flag`.
void write_gamma_header(std::ostream& os);
void write_gamma_row(std::ostream& os, Utility u, const GammaResult& g);

}  // namespace tocq
