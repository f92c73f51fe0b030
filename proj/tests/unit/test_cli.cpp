#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/run_config.hpp"
#include "tocq/analytic_quantizer.hpp"
#include "tocq/dataset.hpp"
#include "tocq/mlp.hpp"
#include "tocq/numfmt.hpp"

using namespace tocq;
using namespace tocq::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("tocq_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream os(p);
  os << text;
}

int run_args(std::vector<std::string> args, std::string* err_text = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  const int rc = run(args, out, err);
  if (err_text) *err_text = err.str();
  return rc;
}

std::size_t data_rows(const fs::path& p) {
  std::ifstream is(p);
  return read_dataset_csv(is).size();
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("defaults mirror the two-band experiment") {
    RunConfig c;
    CHECK(c.scenario.p_max == 5.0);
    CHECK(c.scenario.noise_var == 1.0);
    CHECK(c.scenario.c == 1.0);
    CHECK(c.scenario.n_bands == 2);
    CHECK(c.n_samples == 10000);
    CHECK(c.train_fraction == 0.9);
    CHECK(c.m_list == std::vector<int>{2, 4, 8, 16, 32, 64});
  }
  SUBCASE("values and comments") {
    std::istringstream is(
        "# comment\n"
        "scenario.p_max = 2.5   # trailing\n"
        "scenario.utility = sum_rate\n"
        "sweep.m_list = 2, 4, 8\n"
        "train.normalize_inputs = false\n"
        "oracle.region = simplex\n");
    const auto c = parse_config(is);
    CHECK(c.scenario.p_max == 2.5);
    CHECK(c.scenario.utility == Utility::SumRate);
    CHECK(c.m_list == std::vector<int>{2, 4, 8});
    CHECK_FALSE(c.train.normalize_inputs);
    CHECK(c.oracle_for(Utility::EnergyEfficiency).region == FeasibleRegion::Simplex);
  }
  SUBCASE("canonical text round-trips") {
    std::istringstream is("scenario.c = 0.25\nsweep.sigmas = 0.5,2\ndata.seed = 9\n");
    const auto c = parse_config(is);
    std::istringstream again(c.canonical());
    const auto back = parse_config(again);
    CHECK(back.canonical() == c.canonical());
    CHECK(back.hash() == c.hash());
  }
  SUBCASE("rejections") {
    std::istringstream unknown("scenario.pmax = 5\n");
    CHECK_THROWS_AS(parse_config(unknown), ConfigError);
    std::istringstream dup("scenario.c = 1\nscenario.c = 2\n");
    CHECK_THROWS_AS(parse_config(dup), ConfigError);
    std::istringstream bad("scenario.noise_var = -1\n");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
    std::istringstream order("sweep.m_list = 4,2\n");
    CHECK_THROWS_AS(parse_config(order), ConfigError);
    std::istringstream syntax("scenario.c\n");
    CHECK_THROWS_AS(parse_config(syntax), ConfigError);
  }
  SUBCASE("seed override") {
    RunConfig c;
    c.apply_seed(10);
    CHECK(c.data_seed == 10);
    CHECK(c.split_seed == 11);
    CHECK(c.train.seed == 12);
  }
}

TEST_CASE("gen-data") {
  TempDir dir("gen");
  const auto out = dir.path / "run";
  REQUIRE(run_args({"gen-data", "--out", out.string()}) == kExitOk);
  CHECK(data_rows(out / kTrainCsv) == 9000);
  CHECK(data_rows(out / kTestCsv) == 1000);
  const auto first = slurp(out / kTrainCsv);
  CHECK(first.starts_with("# config="));

  REQUIRE(run_args({"gen-data", "--out", out.string()}) == kExitOk);
  CHECK(slurp(out / kTrainCsv) == first);

  write(dir.path / "small.cfg", "data.n_samples = 10\n");
  REQUIRE(run_args({"gen-data", "--config", (dir.path / "small.cfg").string(), "--out", out.string()}) == kExitOk);
  CHECK(data_rows(out / kTrainCsv) == 9);
  CHECK(data_rows(out / kTestCsv) == 1);
}

TEST_CASE("design") {
  TempDir dir("design");
  write(dir.path / "ee1.cfg", "scenario.n_bands = 1\ndesign.m = 5\n");
  REQUIRE(run_args({"design", "--config", (dir.path / "ee1.cfg").string(), "--out", dir.path.string()}) == kExitOk);
  std::ifstream is(dir.path / kPartitionCsv);
  const auto part = read_partition_csv(is);
  CHECK(part.levels() == std::vector<double>{1, 2, 3, 4, 5});
  REQUIRE(part.thresholds().size() == 4);
  for (std::size_t i = 1; i < 4; ++i) CHECK(part.thresholds()[i] < part.thresholds()[i - 1]);

  write(dir.path / "m1.cfg", "scenario.n_bands = 1\ndesign.m = 1\n");
  REQUIRE(run_args({"design", "--config", (dir.path / "m1.cfg").string(), "--out", dir.path.string()}) == kExitOk);
  CHECK(slurp(dir.path / kPartitionCsv).ends_with("threshold_index,gain_threshold\n"));

  write(dir.path / "sr.cfg", "scenario.n_bands = 1\nscenario.utility = sum_rate\n");
  std::string err;
  CHECK(run_args({"design", "--config", (dir.path / "sr.cfg").string(), "--out", dir.path.string()}, &err) ==
        kExitUnsupported);
  CHECK(err.find("energy-efficiency") != std::string::npos);
  CHECK(run_args({"design", "--out", dir.path.string()}) == kExitUnsupported);
}

TEST_CASE("train and eval") {
  TempDir dir("train");
  const auto cfg = dir.path / "run.cfg";
  write(cfg, "data.n_samples = 1000\ntrain.epochs = 20\n");
  const auto out = dir.path.string();
  REQUIRE(run_args({"gen-data", "--config", cfg.string(), "--out", out}) == kExitOk);
  REQUIRE(run_args({"train", "--config", cfg.string(), "--out", out}) == kExitOk);

  const auto model = load_model(dir.path / kModelFile);
  std::stringstream ss;
  write_model(ss, model);
  CHECK(read_model(ss) == model);
  CHECK(slurp(dir.path / kCurveCsv).find("\nepoch,train_mse\n1,") != std::string::npos);
  const auto first_model = slurp(dir.path / kModelFile);

  REQUIRE(run_args({"train", "--config", cfg.string(), "--out", out, "--seed", "5"}) == kExitOk);
  // --seed also moves the data seed, but the fingerprint only covers the scenario
  // and decision set, so training proceeds on the existing files.
  CHECK(slurp(dir.path / kModelFile) != first_model);

  REQUIRE(run_args({"eval", "--config", cfg.string(), "--out", out}) == kExitOk);
  CHECK(slurp(dir.path / kEvalCsv).find("\nee,4,nn,continuous,") != std::string::npos);

  write(dir.path / "oracle.cfg", "data.n_samples = 1000\neval.labeler = oracle\noracle.baseline = discrete_best\n");
  REQUIRE(run_args({"eval", "--config", (dir.path / "oracle.cfg").string(), "--out", out}) == kExitOk);
  CHECK(slurp(dir.path / kEvalCsv).find("\nee,4,oracle,discrete_best,0,0,100,") != std::string::npos);

  SUBCASE("fingerprint mismatch") {
    write(dir.path / "other.cfg", "scenario.c = 2\n");
    CHECK(run_args({"train", "--config", (dir.path / "other.cfg").string(), "--out", out}) == kExitFingerprint);
    write(dir.path / "m8.cfg", "decisions.m = 8\n");
    CHECK(run_args({"eval", "--config", (dir.path / "m8.cfg").string(), "--out", out}) == kExitFingerprint);
  }
  SUBCASE("divergence") {
    write(dir.path / "hot.cfg", "data.n_samples = 1000\ntrain.epochs = 50\ntrain.learning_rate = 1e6\n");
    CHECK(run_args({"train", "--config", (dir.path / "hot.cfg").string(), "--out", out}) == kExitDivergence);
  }
  SUBCASE("missing inputs and bad flags") {
    CHECK(run_args({"train", "--out", (dir.path / "nowhere").string()}) == kExitConfig);
    CHECK(run_args({"frobnicate"}) == kExitConfig);
    CHECK(run_args({}) == kExitConfig);
  }
}

TEST_CASE("sweep") {
  TempDir dir("sweep");
  const auto cfg = dir.path / "sweep.cfg";
  write(cfg,
        "data.n_samples = 600\n"
        "sweep.m_list = 2,4,8\n"
        "sweep.sigmas = 1,10,50\n"
        "train.epochs = 10\n"
        "oracle.grid_points = 101\n"
        "oracle.baseline = discrete_best\n");
  const auto a = dir.path / "a";
  const auto b = dir.path / "b";
  REQUIRE(run_args({"sweep", "--config", cfg.string(), "--out", a.string()}) == kExitOk);
  REQUIRE(run_args({"sweep", "--config", cfg.string(), "--out", b.string()}) == kExitOk);
  CHECK(slurp(a / kResultsCsv) == slurp(b / kResultsCsv));
  CHECK(slurp(a / kGammaCsv) == slurp(b / kGammaCsv));

  const auto results = slurp(a / kResultsCsv);
  CHECK(results.find("\nee,2,oracle,discrete_best,0,0,60,1\n") != std::string::npos);
  CHECK(results.find("\nsum_rate,8,oracle,discrete_best,0,0,60,1\n") != std::string::npos);
  CHECK(results.find("\nsum_rate,8,nn,") != std::string::npos);
  const auto gamma = slurp(a / kGammaCsv);
  CHECK(gamma.find("\nee,1,") != std::string::npos);
  CHECK(gamma.find("\nsum_rate,50,") != std::string::npos);
  CHECK(gamma.find("partial") == std::string::npos);

  SUBCASE("interruption keeps partial results") {
    int polls = 0;
    std::ostringstream out, err;
    const auto c = dir.path / "c";
    const int rc = run({"sweep", "--config", cfg.string(), "--out", c.string()}, out, err,
                       [&] { return ++polls > 1; });
    CHECK(rc == kExitInterrupted);
    const auto partial = slurp(c / kResultsCsv);
    CHECK(partial.find("\nee,2,oracle,") != std::string::npos);
    CHECK(partial.ends_with("# partial=true\n"));
    CHECK(slurp(c / kGammaCsv).ends_with("# partial=true\n"));
  }
}
