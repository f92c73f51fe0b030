#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "cli/run_config.hpp"

namespace tocq::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitUnsupported = 2,
  kExitFingerprint = 3,
  kExitDivergence = 4,
  kExitInterrupted = 130,
};

class Interrupted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Output file names inside the run directory.
inline constexpr const char* kTrainCsv = "train.csv";
inline constexpr const char* kTestCsv = "test.csv";
inline constexpr const char* kDecisionsCsv = "decisions.csv";
inline constexpr const char* kPartitionCsv = "partition.csv";
inline constexpr const char* kModelFile = "model.txt";
inline constexpr const char* kCurveCsv = "training_curve.csv";
inline constexpr const char* kEvalCsv = "eval.csv";
inline constexpr const char* kResultsCsv = "results.csv";
inline constexpr const char* kGammaCsv = "gamma.csv";

void cmd_gen_data(const RunConfig& cfg, std::ostream& log);
void cmd_design(const RunConfig& cfg, std::ostream& log);
void cmd_train(const RunConfig& cfg, std::ostream& log);
void cmd_eval(const RunConfig& cfg, std::ostream& log);
// `stop` is polled between sweep series; when it returns true the CSVs are
// closed with a `# partial=true` line and Interrupted is thrown.
void cmd_sweep(const RunConfig& cfg, std::ostream& log, const std::function<bool()>& stop = {});

// Maps the exception currently being handled to an exit code and prints it.
int report_error(std::ostream& err);

// Full command-line entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::function<bool()>& stop = {});

}  // namespace tocq::cli
