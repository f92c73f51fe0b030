#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "tocq/decision_set.hpp"
#include "tocq/model.hpp"

namespace tocq {

struct Sample {
  GainVector g;
  int label = 1;

  bool operator==(const Sample&) const = default;
};

// Gain vectors paired with their oracle-optimal decision labels.
struct LabeledDataset {
  int n_bands = 0;
  int label_count = 0;
  std::uint64_t fingerprint = 0;
  std::vector<Sample> samples;

  std::size_t size() const { return samples.size(); }
  std::vector<GainVector> gains() const;
  void validate() const;

  bool operator==(const LabeledDataset&) const = default;
};

// Hash of the scenario constants and the ordered decision list.
std::uint64_t fingerprint(const Scenario& scn, const DecisionSet& ds);

// n i.i.d. vectors with Exp(1) components, g = -ln(1 - u) for u uniform on (0, 1).
std::vector<GainVector> sample_gains(std::size_t n, int n_bands, std::uint64_t seed);

LabeledDataset build_dataset(std::span<const GainVector> gains, const DecisionSet& ds,
                             const Scenario& scn);

// Row order used by split(): a seeded Fisher-Yates permutation of 0..n-1 whose
// first `n_train` entries are the training rows.
struct SplitIndices {
  std::vector<std::size_t> order;
  std::size_t n_train = 0;
};
SplitIndices split_indices(std::size_t n, double train_fraction, std::uint64_t seed);

// Seeded Fisher-Yates shuffle, then the first round(n * fraction) rows train.
std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& data, double train_fraction,
                                                std::uint64_t seed);

// CSV: `# fingerprint=<hex>`, `# label_count=<M>`, header `g_1,...,g_N,label`.
void write_dataset_csv(std::ostream& os, const LabeledDataset& data);
LabeledDataset read_dataset_csv(std::istream& is);

void save_dataset(const std::filesystem::path& path, const LabeledDataset& data);
// Throws FingerprintMismatch when `expected` is given and differs from the file.
LabeledDataset load_dataset(const std::filesystem::path& path,
                            std::optional<std::uint64_t> expected = std::nullopt);

}  // namespace tocq
