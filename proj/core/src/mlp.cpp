#include "tocq/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <string>

#include "parallel.hpp"
#include "tocq/errors.hpp"
#include "tocq/numfmt.hpp"
#include "tocq/rng.hpp"

namespace tocq {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

void check_input(const MlpModel& m, std::span<const double> g) {
  if (g.size() != idx(m.n_inputs)) {
    throw DomainError("mlp: expected " + std::to_string(m.n_inputs) + " inputs, got " +
                      std::to_string(g.size()));
  }
}

// Hidden activations and the raw (normalized-unit) output.
double raw_output(const MlpModel& m, std::span<const double> g, std::span<double> hidden) {
  double out = m.b2;
  for (std::size_t j = 0; j < idx(m.n_hidden); ++j) {
    double a = m.b1[j];
    for (std::size_t i = 0; i < idx(m.n_inputs); ++i) {
      const auto& norm = m.input_norm[i];
      a += m.w1[j * idx(m.n_inputs) + i] * ((g[i] - norm.shift) / norm.scale);
    }
    hidden[j] = sigmoid(a);
    out += m.w2[j] * hidden[j];
  }
  return out;
}

}  // namespace

MlpModel MlpModel::zeros(int n_inputs, int n_hidden, int label_count) {
  MlpModel m;
  m.n_inputs = n_inputs;
  m.n_hidden = n_hidden;
  m.label_count = label_count;
  m.w1.assign(idx(n_hidden) * idx(n_inputs), 0.0);
  m.b1.assign(idx(n_hidden), 0.0);
  m.w2.assign(idx(n_hidden), 0.0);
  m.input_norm.assign(idx(n_inputs), Affine{});
  m.validate();
  return m;
}

std::size_t MlpModel::parameter_count() const { return w1.size() + b1.size() + w2.size() + 1; }

std::vector<double> MlpModel::parameters() const {
  std::vector<double> theta;
  theta.reserve(parameter_count());
  theta.insert(theta.end(), w1.begin(), w1.end());
  theta.insert(theta.end(), b1.begin(), b1.end());
  theta.insert(theta.end(), w2.begin(), w2.end());
  theta.push_back(b2);
  return theta;
}

void MlpModel::set_parameters(std::span<const double> theta) {
  if (theta.size() != parameter_count()) throw DomainError("mlp: parameter vector has wrong length");
  auto it = theta.begin();
  std::copy_n(it, w1.size(), w1.begin());
  it += static_cast<std::ptrdiff_t>(w1.size());
  std::copy_n(it, b1.size(), b1.begin());
  it += static_cast<std::ptrdiff_t>(b1.size());
  std::copy_n(it, w2.size(), w2.begin());
  it += static_cast<std::ptrdiff_t>(w2.size());
  b2 = *it;
}

void MlpModel::validate() const {
  if (n_inputs < 1 || n_hidden < 1) throw DomainError("mlp: layer sizes must be >= 1");
  if (label_count < 1) throw DomainError("mlp: label_count must be >= 1");
  if (w1.size() != idx(n_hidden) * idx(n_inputs) || b1.size() != idx(n_hidden) ||
      w2.size() != idx(n_hidden) || input_norm.size() != idx(n_inputs)) {
    throw DomainError("mlp: weight shapes do not match layer sizes");
  }
  const auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(w1.begin(), w1.end(), finite) || !std::all_of(b1.begin(), b1.end(), finite) ||
      !std::all_of(w2.begin(), w2.end(), finite) || !std::isfinite(b2)) {
    throw DomainError("mlp: weights must be finite");
  }
  for (const auto& a : input_norm) {
    if (!std::isfinite(a.shift) || !(a.scale > 0.0) || !std::isfinite(a.scale)) {
      throw DomainError("mlp: input normalization scales must be finite and > 0");
    }
  }
  if (!std::isfinite(label_norm.shift) || !(label_norm.scale > 0.0)) {
    throw DomainError("mlp: label normalization scale must be > 0");
  }
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw DomainError("train: learning_rate must be > 0");
  if (epochs < 1) throw DomainError("train: epochs must be >= 1");
  if (batch_size < 1) throw DomainError("train: batch_size must be >= 1");
  if (!(init_scale > 0.0)) throw DomainError("train: init_scale must be > 0");
}

double forward(const MlpModel& model, std::span<const double> g) {
  check_input(model, g);
  std::vector<double> hidden(idx(model.n_hidden));
  return model.label_norm.shift + model.label_norm.scale * raw_output(model, g, hidden);
}

int predict_label(const MlpModel& model, std::span<const double> g) {
  const double y = forward(model, g);
  if (std::isnan(y)) return 1;
  const double r = std::clamp(std::round(y), 1.0, static_cast<double>(model.label_count));
  return static_cast<int>(r);
}

std::vector<int> predict_labels(const MlpModel& model, std::span<const GainVector> gains) {
  std::vector<int> out(gains.size());
  detail::parallel_for(gains.size(), [&](std::size_t i) { out[i] = predict_label(model, gains[i]); });
  return out;
}

double sample_loss(const MlpModel& model, std::span<const double> g, double label) {
  check_input(model, g);
  std::vector<double> hidden(idx(model.n_hidden));
  const double target = (label - model.label_norm.shift) / model.label_norm.scale;
  const double err = raw_output(model, g, hidden) - target;
  return err * err;
}

double sample_loss_grad(const MlpModel& model, std::span<const double> g, double label,
                        std::span<double> grad) {
  check_input(model, g);
  if (grad.size() != model.parameter_count()) throw DomainError("mlp: gradient buffer has wrong length");
  const std::size_t ni = idx(model.n_inputs);
  const std::size_t nh = idx(model.n_hidden);
  std::vector<double> hidden(nh);
  const double target = (label - model.label_norm.shift) / model.label_norm.scale;
  const double err = raw_output(model, g, hidden) - target;
  const double d_out = 2.0 * err;

  double* gw1 = grad.data();
  double* gb1 = gw1 + nh * ni;
  double* gw2 = gb1 + nh;
  double* gb2 = gw2 + nh;
  for (std::size_t j = 0; j < nh; ++j) {
    gw2[j] = d_out * hidden[j];
    const double d_hidden = d_out * model.w2[j] * hidden[j] * (1.0 - hidden[j]);
    gb1[j] = d_hidden;
    for (std::size_t i = 0; i < ni; ++i) {
      const auto& norm = model.input_norm[i];
      gw1[j * ni + i] = d_hidden * ((g[i] - norm.shift) / norm.scale);
    }
  }
  *gb2 = d_out;
  return err * err;
}

TrainResult train(const LabeledDataset& data, const TrainConfig& cfg, int label_count) {
  cfg.validate();
  if (data.samples.empty()) throw DomainError("train: empty dataset");
  if (label_count < 1) throw DomainError("train: label_count must be >= 1");
  for (const auto& s : data.samples) {
    if (s.label < 1 || s.label > label_count) throw DomainError("train: label out of range");
  }
  const int n_inputs = static_cast<int>(data.samples.front().g.size());
  if (n_inputs < 1) throw DomainError("train: samples have no features");
  for (const auto& s : data.samples) {
    if (s.g.size() != idx(n_inputs)) throw DomainError("train: ragged gain vectors");
  }

  MlpModel model = MlpModel::zeros(n_inputs, MlpModel::kDefaultHidden, label_count);
  model.fingerprint = data.fingerprint;
  const double n = static_cast<double>(data.size());

  if (cfg.normalize_inputs) {
    for (std::size_t i = 0; i < idx(n_inputs); ++i) {
      double mean = 0.0;
      for (const auto& s : data.samples) mean += s.g[i];
      mean /= n;
      double var = 0.0;
      for (const auto& s : data.samples) var += (s.g[i] - mean) * (s.g[i] - mean);
      const double sd = std::sqrt(var / n);
      model.input_norm[i] = {mean, sd > 0.0 ? sd : 1.0};
    }
  }
  // Targets 1..M map onto [-1, 1].
  model.label_norm = {0.5 * (label_count + 1), std::max(1.0, 0.5 * (label_count - 1))};

  Xoshiro256ss rng(cfg.seed);
  const double lim1 = cfg.init_scale / std::sqrt(static_cast<double>(n_inputs));
  const double lim2 = cfg.init_scale / std::sqrt(static_cast<double>(model.n_hidden));
  for (auto& w : model.w1) w = rng.uniform(-lim1, lim1);
  for (auto& w : model.w2) w = rng.uniform(-lim2, lim2);

  const std::size_t np = model.parameter_count();
  std::vector<double> theta = model.parameters();
  std::vector<double> grad(np);
  std::vector<double> batch_grad(np);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);

  TrainResult result;
  result.epoch_mse.reserve(idx(cfg.epochs));
  const double label_scale2 = model.label_norm.scale * model.label_norm.scale;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    for (std::size_t start = 0; start < order.size(); start += idx(cfg.batch_size)) {
      const std::size_t end = std::min(order.size(), start + idx(cfg.batch_size));
      std::fill(batch_grad.begin(), batch_grad.end(), 0.0);
      for (std::size_t k = start; k < end; ++k) {
        const auto& s = data.samples[order[k]];
        sample_loss_grad(model, s.g, s.label, grad);
        for (std::size_t p = 0; p < np; ++p) batch_grad[p] += grad[p];
      }
      const double step = cfg.learning_rate / static_cast<double>(end - start);
      for (std::size_t p = 0; p < np; ++p) theta[p] -= step * batch_grad[p];
      model.set_parameters(theta);
    }
    double mse = 0.0;
    for (const auto& s : data.samples) mse += sample_loss(model, s.g, s.label);
    mse = mse / n * label_scale2;
    if (!std::isfinite(mse)) {
      throw Divergence("training diverged at epoch " + std::to_string(epoch + 1) +
                       " (nonfinite loss); lower the learning rate");
    }
    result.epoch_mse.push_back(mse);
  }
  result.model = std::move(model);
  return result;
}

double gradient_check(const MlpModel& model, std::span<const double> g, double label, double step,
                      double floor) {
  model.validate();
  std::vector<double> analytic(model.parameter_count());
  sample_loss_grad(model, g, label, analytic);
  MlpModel probe = model;
  std::vector<double> theta = model.parameters();
  double worst = 0.0;
  for (std::size_t p = 0; p < theta.size(); ++p) {
    const double saved = theta[p];
    theta[p] = saved + step;
    probe.set_parameters(theta);
    const double up = sample_loss(probe, g, label);
    theta[p] = saved - step;
    probe.set_parameters(theta);
    const double down = sample_loss(probe, g, label);
    theta[p] = saved;
    const double numeric = (up - down) / (2.0 * step);
    const double denom = std::max({std::abs(analytic[p]), std::abs(numeric), floor});
    worst = std::max(worst, std::abs(analytic[p] - numeric) / denom);
  }
  return worst;
}

namespace {

std::string join17(std::span<const double> xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += numfmt::sig17(xs[i]);
  }
  return out;
}

std::vector<double> parse_list(std::string_view s) {
  std::vector<double> out;
  if (numfmt::trim(s).empty()) return out;
  for (auto v : numfmt::split(s, ',')) out.push_back(numfmt::parse_double(v));
  return out;
}

}  // namespace

void write_model(std::ostream& os, const MlpModel& model) {
  model.validate();
  std::vector<double> shifts, scales;
  for (const auto& a : model.input_norm) {
    shifts.push_back(a.shift);
    scales.push_back(a.scale);
  }
  os << "layers=" << model.n_inputs << ',' << model.n_hidden << ",1\n";
  os << "label_count=" << model.label_count << '\n';
  os << "fingerprint=" << numfmt::hex64(model.fingerprint) << '\n';
  os << "input_shift=" << join17(shifts) << '\n';
  os << "input_scale=" << join17(scales) << '\n';
  os << "label_shift=" << numfmt::sig17(model.label_norm.shift) << '\n';
  os << "label_scale=" << numfmt::sig17(model.label_norm.scale) << '\n';
  os << "w1=" << join17(model.w1) << '\n';
  os << "b1=" << join17(model.b1) << '\n';
  os << "w2=" << join17(model.w2) << '\n';
  os << "b2=" << numfmt::sig17(model.b2) << '\n';
}

MlpModel read_model(std::istream& is) {
  std::map<std::string, std::string, std::less<>> kv;
  std::string line;
  while (std::getline(is, line)) {
    const auto text = numfmt::trim(line);
    if (text.empty() || text.starts_with('#')) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError("model: expected key=value, got '" + line + "'");
    auto [it, fresh] = kv.emplace(std::string(numfmt::trim(text.substr(0, eq))),
                                  std::string(numfmt::trim(text.substr(eq + 1))));
    if (!fresh) throw ParseError("model: duplicate key " + it->first);
  }
  const auto need = [&](std::string_view key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("model: missing key " + std::string(key));
    return it->second;
  };
  const auto layers = numfmt::split(need("layers"), ',');
  if (layers.size() != 3 || numfmt::parse_int(layers[2]) != 1) throw ParseError("model: layers must be <in>,<hidden>,1");
  MlpModel m = MlpModel::zeros(static_cast<int>(numfmt::parse_int(layers[0])),
                               static_cast<int>(numfmt::parse_int(layers[1])),
                               static_cast<int>(numfmt::parse_int(need("label_count"))));
  if (auto it = kv.find("fingerprint"); it != kv.end()) m.fingerprint = numfmt::parse_hex64(it->second);
  const auto shifts = parse_list(need("input_shift"));
  const auto scales = parse_list(need("input_scale"));
  if (shifts.size() != idx(m.n_inputs) || scales.size() != idx(m.n_inputs)) {
    throw ParseError("model: normalization length mismatch");
  }
  for (std::size_t i = 0; i < shifts.size(); ++i) m.input_norm[i] = {shifts[i], scales[i]};
  m.label_norm = {numfmt::parse_double(need("label_shift")), numfmt::parse_double(need("label_scale"))};
  m.w1 = parse_list(need("w1"));
  m.b1 = parse_list(need("b1"));
  m.w2 = parse_list(need("w2"));
  m.b2 = numfmt::parse_double(need("b2"));
  try {
    m.validate();
  } catch (const DomainError& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
  return m;
}

void save_model(const std::filesystem::path& path, const MlpModel& model) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write_model(os, model);
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  return read_model(is);
}

}  // namespace tocq
