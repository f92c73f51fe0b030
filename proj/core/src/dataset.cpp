#include "tocq/dataset.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "tocq/errors.hpp"
#include "tocq/numfmt.hpp"
#include "tocq/oracle.hpp"
#include "tocq/rng.hpp"

namespace tocq {

std::vector<GainVector> LabeledDataset::gains() const {
  std::vector<GainVector> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.g);
  return out;
}

void LabeledDataset::validate() const {
  if (n_bands < 1) throw DomainError("dataset: n_bands must be >= 1");
  if (label_count < 1) throw DomainError("dataset: label_count must be >= 1");
  for (const auto& s : samples) {
    if (s.g.size() != static_cast<std::size_t>(n_bands)) throw DomainError("dataset: ragged gain vectors");
    for (double g : s.g) {
      if (!(g > 0.0) || !std::isfinite(g)) throw DomainError("dataset: gains must be finite and > 0");
    }
    if (s.label < 1 || s.label > label_count) throw DomainError("dataset: label out of range");
  }
}

std::uint64_t fingerprint(const Scenario& scn, const DecisionSet& ds) {
  std::string canon = "n_bands=" + std::to_string(scn.n_bands) + ";p_max=" + numfmt::sig17(scn.p_max) +
                      ";noise_var=" + numfmt::sig17(scn.noise_var) + ";c=" + numfmt::sig17(scn.c) +
                      ";utility=" + std::string(to_string(scn.utility)) + ";decisions=";
  for (const auto& d : ds.decisions()) {
    for (double p : d) canon += numfmt::sig17(p) + ",";
    canon += ";";
  }
  return numfmt::fnv1a(canon);
}

std::vector<GainVector> sample_gains(std::size_t n, int n_bands, std::uint64_t seed) {
  if (n_bands < 1) throw DomainError("sample_gains: n_bands must be >= 1");
  Xoshiro256ss rng(seed);
  std::vector<GainVector> out(n, GainVector(static_cast<std::size_t>(n_bands)));
  for (auto& g : out) {
    for (auto& x : g) x = -std::log1p(-rng.uniform_open());
  }
  return out;
}

LabeledDataset build_dataset(std::span<const GainVector> gains, const DecisionSet& ds,
                             const Scenario& scn) {
  scn.validate();
  if (gains.empty()) throw DomainError("build_dataset: no gains");
  if (ds.size() == 0) throw DomainError("build_dataset: empty decision set");
  if (ds.n_bands() != scn.n_bands) throw DomainError("build_dataset: decision set dimension mismatch");
  const auto labels = oracle_labels(gains, ds, scn);
  LabeledDataset out;
  out.n_bands = scn.n_bands;
  out.label_count = static_cast<int>(ds.size());
  out.fingerprint = fingerprint(scn, ds);
  out.samples.reserve(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i) out.samples.push_back({gains[i], labels[i]});
  out.validate();
  return out;
}

SplitIndices split_indices(std::size_t n, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw DomainError("split: train fraction must lie in (0, 1)");
  }
  const auto n_train = static_cast<std::size_t>(std::llround(static_cast<double>(n) * train_fraction));
  if (n_train == 0 || n_train >= n) throw DomainError("split: one side would be empty");

  SplitIndices out;
  out.n_train = n_train;
  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), 0);
  Xoshiro256ss rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(out.order[i], out.order[rng.below(i + 1)]);
  return out;
}

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& data, double train_fraction,
                                                std::uint64_t seed) {
  const std::size_t n = data.size();
  const auto [order, n_train] = split_indices(n, train_fraction, seed);

  LabeledDataset train{data.n_bands, data.label_count, data.fingerprint, {}};
  LabeledDataset test = train;
  train.samples.reserve(n_train);
  test.samples.reserve(n - n_train);
  for (std::size_t i = 0; i < n; ++i) {
    (i < n_train ? train : test).samples.push_back(data.samples[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

void write_dataset_csv(std::ostream& os, const LabeledDataset& data) {
  os << "# fingerprint=" << numfmt::hex64(data.fingerprint) << '\n';
  os << "# label_count=" << data.label_count << '\n';
  for (int b = 1; b <= data.n_bands; ++b) os << "g_" << b << ',';
  os << "label\n";
  for (const auto& s : data.samples) os << numfmt::join(s.g) << ',' << s.label << '\n';
}

LabeledDataset read_dataset_csv(std::istream& is) {
  LabeledDataset out;
  bool have_fp = false;
  bool have_header = false;
  std::string line;
  while (std::getline(is, line)) {
    const auto text = numfmt::trim(line);
    if (text.empty()) continue;
    if (text.starts_with('#')) {
      const auto body = numfmt::trim(text.substr(1));
      if (body.starts_with("fingerprint=")) {
        out.fingerprint = numfmt::parse_hex64(body.substr(12));
        have_fp = true;
      } else if (body.starts_with("label_count=")) {
        out.label_count = static_cast<int>(numfmt::parse_int(body.substr(12)));
      }
      continue;
    }
    const auto cols = numfmt::split(text, ',');
    if (!have_header) {
      if (cols.size() < 2 || numfmt::trim(cols.back()) != "label") throw ParseError("dataset: bad header");
      out.n_bands = static_cast<int>(cols.size()) - 1;
      for (int b = 0; b < out.n_bands; ++b) {
        if (numfmt::trim(cols[static_cast<std::size_t>(b)]) != "g_" + std::to_string(b + 1)) {
          throw ParseError("dataset: bad header column");
        }
      }
      have_header = true;
      continue;
    }
    if (cols.size() != static_cast<std::size_t>(out.n_bands) + 1) throw ParseError("dataset: wrong column count");
    Sample s;
    s.g.reserve(static_cast<std::size_t>(out.n_bands));
    for (int b = 0; b < out.n_bands; ++b) s.g.push_back(numfmt::parse_double(cols[static_cast<std::size_t>(b)]));
    s.label = static_cast<int>(numfmt::parse_int(cols.back()));
    out.samples.push_back(std::move(s));
  }
  if (!have_fp || !have_header) throw ParseError("dataset: missing fingerprint or header");
  try {
    out.validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return out;
}

void save_dataset(const std::filesystem::path& path, const LabeledDataset& data) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write_dataset_csv(os, data);
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

LabeledDataset load_dataset(const std::filesystem::path& path, std::optional<std::uint64_t> expected) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  auto data = read_dataset_csv(is);
  if (expected && *expected != data.fingerprint) {
    throw FingerprintMismatch(path.string() + ": fingerprint " + numfmt::hex64(data.fingerprint) +
                              " does not match configuration " + numfmt::hex64(*expected));
  }
  return data;
}

}  // namespace tocq
