#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "tocq/dataset.hpp"
#include "tocq/model.hpp"

namespace tocq {

// x' = (x - shift) / scale on the way in; y = shift + scale * y' on the way out.
struct Affine {
  double shift = 0.0;
  double scale = 1.0;

  bool operator==(const Affine&) const = default;
};

// One-hidden-layer perceptron: inputs -> sigmoid hidden layer -> one linear output
// that regresses the decision label index.
struct MlpModel {
  static constexpr int kDefaultHidden = 20;

  int n_inputs = 2;
  int n_hidden = kDefaultHidden;
  int label_count = 1;
  std::vector<double> w1;  // n_hidden x n_inputs, row-major
  std::vector<double> b1;  // n_hidden
  std::vector<double> w2;  // 1 x n_hidden
  double b2 = 0.0;
  std::vector<Affine> input_norm;  // one per input
  Affine label_norm;
  std::uint64_t fingerprint = 0;  // of the training data, 0 when unknown

  // All-zero weights, identity normalizations.
  static MlpModel zeros(int n_inputs = 2, int n_hidden = kDefaultHidden, int label_count = 1);

  std::size_t parameter_count() const;
  // Flattened in the order w1, b1, w2, b2.
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> theta);

  void validate() const;
  bool operator==(const MlpModel&) const = default;
};

struct TrainConfig {
  double learning_rate = 0.05;
  int epochs = 500;
  int batch_size = 32;
  std::uint64_t seed = 1;
  double init_scale = 0.5;
  bool normalize_inputs = true;

  void validate() const;
};

struct TrainResult {
  MlpModel model;
  std::vector<double> epoch_mse;  // full training-set MSE in label units after each epoch
};

// Label estimate before decoding.
double forward(const MlpModel& model, std::span<const double> g);

// round(forward) clamped to [1, label_count].
int predict_label(const MlpModel& model, std::span<const double> g);

std::vector<int> predict_labels(const MlpModel& model, std::span<const GainVector> gains);

// Squared error in normalized output units and its gradient w.r.t. parameters().
double sample_loss(const MlpModel& model, std::span<const double> g, double label);
double sample_loss_grad(const MlpModel& model, std::span<const double> g, double label,
                        std::span<double> grad);

// Mini-batch gradient descent on mean squared error against the label index.
// Throws Divergence on a nonfinite epoch loss.
TrainResult train(const LabeledDataset& data, const TrainConfig& cfg, int label_count);

// Max over parameters of |analytic - central difference| / max(|analytic|, |numeric|, floor).
double gradient_check(const MlpModel& model, std::span<const double> g, double label,
                      double step = 1e-5, double floor = 1e-4);

// Plain-text key=value model file; floats carry 17 significant digits.
void write_model(std::ostream& os, const MlpModel& model);
MlpModel read_model(std::istream& is);
void save_model(const std::filesystem::path& path, const MlpModel& model);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace tocq
