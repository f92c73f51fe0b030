#include "cli/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <string_view>

#include "tocq/errors.hpp"
#include "tocq/numfmt.hpp"

namespace tocq::cli {

namespace {

using numfmt::trim;

std::string fmt(double x) { return numfmt::shortest(x); }

template <typename T, typename Fn>
std::string join_with(const std::vector<T>& xs, Fn&& f) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += f(xs[i]);
  }
  return out;
}

template <typename T, typename Fn>
std::vector<T> parse_list(std::string_view s, Fn&& f) {
  std::vector<T> out;
  if (trim(s).empty()) return out;
  for (auto part : numfmt::split(s, ',')) out.push_back(f(trim(part)));
  return out;
}

bool parse_bool(std::string_view s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("expected a boolean, got '" + std::string(s) + "'");
}

std::uint64_t parse_seed(std::string_view s) {
  const auto v = numfmt::parse_int(s);
  if (v < 0) throw ConfigError("seeds must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

int parse_count(std::string_view s) { return static_cast<int>(numfmt::parse_int(s)); }

std::string_view spacing_name(Spacing s) { return s == Spacing::Uniform ? "uniform" : "geometric"; }

Spacing parse_spacing(std::string_view s) {
  if (s == "uniform") return Spacing::Uniform;
  if (s == "geometric") return Spacing::Geometric;
  throw ConfigError("unknown spacing '" + std::string(s) + "'");
}

std::string region_name(const std::optional<FeasibleRegion>& r) {
  if (!r) return "auto";
  return *r == FeasibleRegion::Box ? "box" : "simplex";
}

std::optional<FeasibleRegion> parse_region(std::string_view s) {
  if (s == "auto") return std::nullopt;
  if (s == "box") return FeasibleRegion::Box;
  if (s == "simplex") return FeasibleRegion::Simplex;
  throw ConfigError("unknown oracle region '" + std::string(s) + "'");
}

struct Key {
  std::string_view name;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"scenario.n_bands", [](RunConfig& c, auto v) { c.scenario.n_bands = parse_count(v); },
       [](const RunConfig& c) { return std::to_string(c.scenario.n_bands); }},
      {"scenario.p_max", [](RunConfig& c, auto v) { c.scenario.p_max = numfmt::parse_double(v); },
       [](const RunConfig& c) { return fmt(c.scenario.p_max); }},
      {"scenario.noise_var", [](RunConfig& c, auto v) { c.scenario.noise_var = numfmt::parse_double(v); },
       [](const RunConfig& c) { return fmt(c.scenario.noise_var); }},
      {"scenario.c", [](RunConfig& c, auto v) { c.scenario.c = numfmt::parse_double(v); },
       [](const RunConfig& c) { return fmt(c.scenario.c); }},
      {"scenario.utility", [](RunConfig& c, auto v) { c.scenario.utility = parse_utility(v); },
       [](const RunConfig& c) { return std::string(to_string(c.scenario.utility)); }},
      {"decisions.m", [](RunConfig& c, auto v) { c.decisions_m = parse_count(v); },
       [](const RunConfig& c) { return std::to_string(c.decisions_m); }},
      {"design.m", [](RunConfig& c, auto v) { c.design_m = parse_count(v); },
       [](const RunConfig& c) { return std::to_string(c.design_m); }},
      {"design.spacing", [](RunConfig& c, auto v) { c.design_spacing = parse_spacing(v); },
       [](const RunConfig& c) { return std::string(spacing_name(c.design_spacing)); }},
      {"design.ratio", [](RunConfig& c, auto v) { c.design_ratio = numfmt::parse_double(v); },
       [](const RunConfig& c) { return fmt(c.design_ratio); }},
      {"data.n_samples",
       [](RunConfig& c, auto v) {
         const auto n = numfmt::parse_int(v);
         if (n < 2) throw ConfigError("data.n_samples must be >= 2");
         c.n_samples = static_cast<std::size_t>(n);
       },
       [](const RunConfig& c) { return std::to_string(c.n_samples); }},
      {"data.train_fraction", [](RunConfig& c, auto v) { c.train_fraction = numfmt::parse_double(v); },
       [](const RunConfig& c) { return fmt(c.train_fraction); }},
      {"data.seed", [](RunConfig& c, auto v) { c.data_seed = parse_seed(v); },
       [](const RunConfig& c) { return std::to_string(c.data_seed); }},
      {"data.split_seed", [](RunConfig& c, auto v) { c.split_seed = parse_seed(v); },
       [](const RunConfig& c) { return std::to_string(c.split_seed); }},
      {"sweep.utilities",
       [](RunConfig& c, auto v) { c.sweep_utilities = parse_list<Utility>(v, parse_utility); },
       [](const RunConfig& c) {
         return join_with(c.sweep_utilities, [](Utility u) { return std::string(to_string(u)); });
       }},
      {"sweep.labelers",
       [](RunConfig& c, auto v) { c.sweep_labelers = parse_list<LabelerKind>(v, parse_labeler); },
       [](const RunConfig& c) {
         return join_with(c.sweep_labelers, [](LabelerKind k) { return std::string(to_string(k)); });
       }},
      {"sweep.m_list", [](RunConfig& c, auto v) { c.m_list = parse_list<int>(v, parse_count); },
       [](const RunConfig& c) { return join_with(c.m_list, [](int m) { return std::to_string(m); }); }},
      {"sweep.sigmas",
       [](RunConfig& c, auto v) {
         c.sigmas = parse_list<double>(v, [](std::string_view s) { return numfmt::parse_double(s); });
       },
       [](const RunConfig& c) { return join_with(c.sigmas, fmt); }},
      {"sweep.reference_sigma", [](RunConfig& c, auto v) { c.reference_sigma = numfmt::parse_double(v); },
       [](const RunConfig& c) { return fmt(c.reference_sigma); }},
      {"sweep.gamma_labeler", [](RunConfig& c, auto v) { c.gamma_labeler = parse_labeler(v); },
       [](const RunConfig& c) { return std::string(to_string(c.gamma_labeler)); }},
      {"train.learning_rate", [](RunConfig& c, auto v) { c.train.learning_rate = numfmt::parse_double(v); },
       [](const RunConfig& c) { return fmt(c.train.learning_rate); }},
      {"train.epochs", [](RunConfig& c, auto v) { c.train.epochs = parse_count(v); },
       [](const RunConfig& c) { return std::to_string(c.train.epochs); }},
      {"train.batch_size", [](RunConfig& c, auto v) { c.train.batch_size = parse_count(v); },
       [](const RunConfig& c) { return std::to_string(c.train.batch_size); }},
      {"train.seed", [](RunConfig& c, auto v) { c.train.seed = parse_seed(v); },
       [](const RunConfig& c) { return std::to_string(c.train.seed); }},
      {"train.init_scale", [](RunConfig& c, auto v) { c.train.init_scale = numfmt::parse_double(v); },
       [](const RunConfig& c) { return fmt(c.train.init_scale); }},
      {"train.normalize_inputs", [](RunConfig& c, auto v) { c.train.normalize_inputs = parse_bool(v); },
       [](const RunConfig& c) { return std::string(c.train.normalize_inputs ? "true" : "false"); }},
      {"oracle.grid_points", [](RunConfig& c, auto v) { c.oracle_grid_points = parse_count(v); },
       [](const RunConfig& c) { return std::to_string(c.oracle_grid_points); }},
      {"oracle.region", [](RunConfig& c, auto v) { c.oracle_region = parse_region(v); },
       [](const RunConfig& c) { return region_name(c.oracle_region); }},
      {"oracle.baseline", [](RunConfig& c, auto v) { c.baseline = parse_baseline(v); },
       [](const RunConfig& c) { return std::string(to_string(c.baseline)); }},
      {"eval.labeler", [](RunConfig& c, auto v) { c.eval_labeler = parse_labeler(v); },
       [](const RunConfig& c) { return std::string(to_string(c.eval_labeler)); }},
      {"output.dir", [](RunConfig& c, auto v) { c.output_dir = std::string(v); },
       [](const RunConfig& c) { return c.output_dir.string(); }},
  };
  return table;
}

}  // namespace

OracleConfig RunConfig::oracle_for(Utility u) const {
  return {oracle_grid_points, oracle_region.value_or(default_region(u))};
}

Scenario RunConfig::scenario_for(Utility u) const {
  Scenario s = scenario;
  s.utility = u;
  return s;
}

SweepConfig RunConfig::sweep_config(Utility u) const {
  SweepConfig s;
  s.n_samples = n_samples;
  s.train_fraction = train_fraction;
  s.data_seed = data_seed;
  s.split_seed = split_seed;
  s.train = train;
  s.oracle = oracle_for(u);
  s.baseline = baseline;
  return s;
}

void RunConfig::validate() const {
  try {
    scenario.validate();
    train.validate();
    OracleConfig{oracle_grid_points, FeasibleRegion::Box}.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (decisions_m < 1) throw ConfigError("decisions.m must be >= 1");
  if (design_m < 1) throw ConfigError("design.m must be >= 1");
  if (!(design_ratio > 0.0 && design_ratio < 1.0)) throw ConfigError("design.ratio must lie in (0, 1)");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ConfigError("data.train_fraction must lie in (0, 1)");
  if (n_samples < 2) throw ConfigError("data.n_samples must be >= 2");
  if (sweep_utilities.empty()) throw ConfigError("sweep.utilities must not be empty");
  if (sweep_labelers.empty()) throw ConfigError("sweep.labelers must not be empty");
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    if (m_list[i] < 1) throw ConfigError("sweep.m_list entries must be >= 1");
    if (i > 0 && m_list[i] <= m_list[i - 1]) throw ConfigError("sweep.m_list must be strictly increasing");
  }
  for (double s : sigmas) {
    if (!(s > 0.0)) throw ConfigError("sweep.sigmas must be > 0");
  }
  if (!(reference_sigma > 0.0)) throw ConfigError("sweep.reference_sigma must be > 0");
}

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto& k : keys()) {
    if (k.name == "output.dir") continue;
    out += std::string(k.name) + " = " + k.get(*this) + "\n";
  }
  return out;
}

std::uint64_t RunConfig::hash() const { return numfmt::fnv1a(canonical()); }

void RunConfig::apply_seed(std::uint64_t s) {
  data_seed = s;
  split_seed = s + 1;
  train.seed = s + 2;
}

RunConfig parse_config(std::istream& is) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto text = line;
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    const auto body = trim(text);
    if (body.empty()) continue;
    const auto where = "line " + std::to_string(lineno) + ": ";
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected key = value");
    const auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    const auto& table = keys();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Key& k) { return k.name == key; });
    if (it == table.end()) throw ConfigError(where + "unknown key '" + std::string(key) + "'");
    if (!seen.emplace(key).second) throw ConfigError(where + "duplicate key '" + std::string(key) + "'");
    try {
      it->set(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    } catch (const std::exception& e) {
      throw ConfigError(where + std::string(key) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file " + path.string());
  return parse_config(is);
}

}  // namespace tocq::cli
