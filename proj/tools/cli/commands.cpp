#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <ostream>

#include "tocq/analytic_quantizer.hpp"
#include "tocq/dataset.hpp"
#include "tocq/errors.hpp"
#include "tocq/numfmt.hpp"

namespace tocq::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const RunConfig& cfg, const char* name) {
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  const auto path = cfg.output_dir / name;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  os << "# config=" << numfmt::hex64(cfg.hash()) << '\n';
  return os;
}

void close_out(std::ofstream& os, const fs::path& path) {
  os.flush();
  if (!os) throw ConfigError("write failed: " + path.string());
}

std::uint64_t expected_fingerprint(const RunConfig& cfg) {
  return fingerprint(cfg.scenario, experiment_grid(cfg.scenario, cfg.decisions_m));
}

}  // namespace

void cmd_gen_data(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto ds = experiment_grid(cfg.scenario, cfg.decisions_m);
  const auto gains = sample_gains(cfg.n_samples, cfg.scenario.n_bands, cfg.data_seed);
  const auto full = build_dataset(gains, ds, cfg.scenario);
  const auto [train_set, test_set] = split(full, cfg.train_fraction, cfg.split_seed);

  auto os = open_out(cfg, kTrainCsv);
  write_dataset_csv(os, train_set);
  close_out(os, cfg.output_dir / kTrainCsv);
  os = open_out(cfg, kTestCsv);
  write_dataset_csv(os, test_set);
  close_out(os, cfg.output_dir / kTestCsv);
  os = open_out(cfg, kDecisionsCsv);
  write_decisions_csv(os, ds);
  close_out(os, cfg.output_dir / kDecisionsCsv);

  log << "gen-data: " << train_set.size() << " train rows, " << test_set.size() << " test rows, M="
      << ds.size() << ", fingerprint=" << numfmt::hex64(full.fingerprint) << '\n';
}

void cmd_design(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (cfg.scenario.n_bands != 1 || cfg.scenario.utility != Utility::EnergyEfficiency) {
    throw UnsupportedCase(
        "design: the closed-form quantizer covers only a single band (scenario.n_bands = 1) with the "
        "energy-efficiency utility; use gen-data/train for other cases");
  }
  const auto levels = single_channel_grid(cfg.design_m, cfg.scenario.p_max, cfg.design_spacing, cfg.design_ratio);
  const auto part = build_partition(levels, cfg.scenario);
  auto os = open_out(cfg, kPartitionCsv);
  write_partition_csv(os, part, cfg.scenario);
  close_out(os, cfg.output_dir / kPartitionCsv);
  log << "design: " << part.levels().size() << " levels, " << part.thresholds().size() << " thresholds\n";
}

void cmd_train(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto data = load_dataset(cfg.output_dir / kTrainCsv, expected_fingerprint(cfg));
  const auto result = train(data, cfg.train, data.label_count);
  save_model(cfg.output_dir / kModelFile, result.model);
  auto os = open_out(cfg, kCurveCsv);
  os << "epoch,train_mse\n";
  for (std::size_t e = 0; e < result.epoch_mse.size(); ++e) {
    os << (e + 1) << ',' << numfmt::shortest(result.epoch_mse[e]) << '\n';
  }
  close_out(os, cfg.output_dir / kCurveCsv);
  log << "train: " << data.size() << " samples, final mse " << numfmt::shortest(result.epoch_mse.back()) << '\n';
}

void cmd_eval(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto fp = expected_fingerprint(cfg);
  const auto test = load_dataset(cfg.output_dir / kTestCsv, fp);
  const auto ds = experiment_grid(cfg.scenario, cfg.decisions_m);
  const auto gains = test.gains();

  std::vector<int> labels;
  switch (cfg.eval_labeler) {
    case LabelerKind::Oracle:
      labels = oracle_labels(gains, ds, cfg.scenario);
      break;
    case LabelerKind::Analytic: {
      const auto part = build_partition(ds, cfg.scenario);
      for (const auto& g : gains) labels.push_back(part.quantize(g[0]));
      break;
    }
    case LabelerKind::Neural: {
      const auto model = load_model(cfg.output_dir / kModelFile);
      if (model.fingerprint != fp) {
        throw FingerprintMismatch("model was trained for fingerprint " + numfmt::hex64(model.fingerprint) +
                                  ", configuration expects " + numfmt::hex64(fp));
      }
      labels = predict_labels(model, gains);
      break;
    }
  }
  const auto oracle = cfg.oracle_for(cfg.scenario.utility);
  const auto reference = cfg.baseline == Baseline::Continuous ? continuous_opts(gains, cfg.scenario, oracle)
                                                              : discrete_best(gains, ds, cfg.scenario);
  const auto stats = loss_from_labels(labels, gains, ds, cfg.scenario, reference);

  SweepRecord r;
  r.utility = cfg.scenario.utility;
  r.m = static_cast<int>(ds.size());
  r.labeler = cfg.eval_labeler;
  r.baseline = cfg.baseline;
  r.mean_loss_pct = stats.mean_pct;
  r.stderr_pct = stats.stderr_pct;
  r.n_test = stats.n;
  r.data_seed = cfg.data_seed;
  auto os = open_out(cfg, kEvalCsv);
  write_results_header(os);
  write_results_row(os, r);
  close_out(os, cfg.output_dir / kEvalCsv);
  log << "eval: " << to_string(r.labeler) << " loss " << numfmt::shortest(stats.mean_pct) << "% +/- "
      << numfmt::shortest(stats.stderr_pct) << " over " << stats.n << " samples\n";
}

void cmd_sweep(const RunConfig& cfg, std::ostream& log, const std::function<bool()>& stop) {
  cfg.validate();
  auto results = open_out(cfg, kResultsCsv);
  auto gamma = open_out(cfg, kGammaCsv);
  write_results_header(results);
  write_gamma_header(gamma);
  const auto mark_partial = [&] {
    results << "# partial=true\n";
    gamma << "# partial=true\n";
    results.flush();
    gamma.flush();
  };

  try {
    for (const Utility u : cfg.sweep_utilities) {
      const auto scn = cfg.scenario_for(u);
      const auto sweep_cfg = cfg.sweep_config(u);
      std::optional<EvalReport> gamma_series;
      for (const LabelerKind k : cfg.sweep_labelers) {
        if (stop && stop()) throw Interrupted("sweep interrupted");
        const auto report = sweep(cfg.m_list, k, scn, sweep_cfg);
        for (const auto& r : report.records) write_results_row(results, r);
        results.flush();
        log << "sweep: " << to_string(u) << '/' << to_string(k) << " done (" << report.records.size()
            << " M values)\n";
        if (k == cfg.gamma_labeler || !gamma_series) gamma_series = report;
      }
      for (double sigma : cfg.sigmas) {
        write_gamma_row(gamma, u, compression_rate(*gamma_series, sigma, cfg.reference_sigma));
      }
      gamma.flush();
    }
  } catch (...) {
    mark_partial();
    throw;
  }
  close_out(results, cfg.output_dir / kResultsCsv);
  close_out(gamma, cfg.output_dir / kGammaCsv);
}

int report_error(std::ostream& err) {
  try {
    throw;
  } catch (const UnsupportedCase& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const FingerprintMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitFingerprint;
  } catch (const Divergence& e) {
    err << "error: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const Interrupted& e) {
    err << "error: " << e.what() << " (partial results kept)\n";
    return kExitInterrupted;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::function<bool()>& stop) {
  CLI::App app{"Task-oriented CSI quantizer design and evaluation", "tocq"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;

  struct Command {
    const char* name;
    const char* help;
    std::function<void(const RunConfig&)> fn;
  };
  const std::vector<Command> commands = {
      {"gen-data", "Sample gains, label them with the oracle and write train/test CSVs",
       [&](const RunConfig& c) { cmd_gen_data(c, out); }},
      {"design", "Write the closed-form single-band EE partition", [&](const RunConfig& c) { cmd_design(c, out); }},
      {"train", "Train the neural quantizer on train.csv", [&](const RunConfig& c) { cmd_train(c, out); }},
      {"eval", "Measure the optimality loss of a labeler on test.csv", [&](const RunConfig& c) { cmd_eval(c, out); }},
      {"sweep", "Run the M sweep and write loss and compression-rate tables",
       [&](const RunConfig& c) { cmd_sweep(c, out, stop); }},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "Run configuration file (key = value)");
    sub->add_option("--out", out_dir, "Output directory (overrides output.dir)");
    sub->add_option("--seed", seed, "Base seed: data = s, split = s + 1, init = s + 2");
    subs.push_back(sub);
  }

  std::vector<std::string> argv_store{"tocq"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (seed) cfg.apply_seed(*seed);
    cfg.validate();
    for (std::size_t i = 0; i < commands.size(); ++i) {
      if (subs[i]->parsed()) commands[i].fn(cfg);
    }
  } catch (...) {
    return report_error(err);
  }
  return kExitOk;
}

}  // namespace tocq::cli
