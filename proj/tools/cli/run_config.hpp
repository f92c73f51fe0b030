#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tocq/decision_set.hpp"
#include "tocq/evaluation.hpp"
#include "tocq/mlp.hpp"
#include "tocq/model.hpp"
#include "tocq/oracle.hpp"

namespace tocq::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything a command needs. Defaults reproduce the two-band experiment:
// p_max = 5 mW, noise 1 mW, c = 1, 10000 Exp(1) samples split 9000/1000.
struct RunConfig {
  Scenario scenario;

  int decisions_m = 4;  // decision-set size for gen-data / train / eval

  int design_m = 5;
  Spacing design_spacing = Spacing::Uniform;
  double design_ratio = 0.5;

  std::size_t n_samples = 10000;
  double train_fraction = 0.9;
  std::uint64_t data_seed = 1;
  std::uint64_t split_seed = 2;

  std::vector<Utility> sweep_utilities{Utility::EnergyEfficiency, Utility::SumRate};
  std::vector<LabelerKind> sweep_labelers{LabelerKind::Oracle, LabelerKind::Neural};
  std::vector<int> m_list{2, 4, 8, 16, 32, 64};
  std::vector<double> sigmas{0.25, 0.5, 1, 2, 4, 8, 16, 32, 64};
  double reference_sigma = 1.0;
  LabelerKind gamma_labeler = LabelerKind::Neural;

  TrainConfig train;

  int oracle_grid_points = 1001;
  std::optional<FeasibleRegion> oracle_region;  // empty: per-utility default
  Baseline baseline = Baseline::Continuous;

  LabelerKind eval_labeler = LabelerKind::Neural;

  std::filesystem::path output_dir = "out";

  OracleConfig oracle_for(Utility u) const;
  SweepConfig sweep_config(Utility u) const;
  // Scenario with the utility replaced.
  Scenario scenario_for(Utility u) const;

  // Throws ConfigError on any invariant violation.
  void validate() const;

  // Canonical `key = value` text (output dir excluded) and its hash.
  std::string canonical() const;
  std::uint64_t hash() const;

  // Named seeds derived from one override: data = s, split = s + 1, init = s + 2.
  void apply_seed(std::uint64_t s);
};

// `key = value` lines, `#` comments. Unknown or repeated keys are rejected.
RunConfig parse_config(std::istream& is);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace tocq::cli
