#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ergodlab/json_io.hpp"
#include "ergodlab/report.hpp"

namespace ergodlab::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3 };

/// Command-line flags shared by every subcommand.
struct RunOptions {
  std::string config_path;
  std::string out_path;
  std::string format;  // empty: take the config value, else csv
  int threads = 0;     // 0: ERGODLAB_THREADS, else 1
  std::optional<std::uint64_t> n;
};

struct ExperimentConfig {
  std::optional<FlowSpec> flow;
  std::optional<JoinSpec> join;
  Observable observable = Character{{1}};
  bool has_observable = false;
  std::uint64_t n = 1000;
  bool n_overridden = false;  // --n was given
  std::vector<TorusPoint> starts;
  std::vector<std::uint64_t> checkpoints;  // prefix lengths, ascending, last == n
  std::vector<Frac> thetas;
  double threshold = 0.5;
  std::uint64_t grid = 10;
  std::string format = "csv";
  std::string out_path;
  unsigned threads = 1;
  Json raw = Json::object();
};

/// Reads the config file (if any) and folds in the flag overrides.
ExperimentConfig load_config(const RunOptions& opts, bool require_config);

/// Writes to out_path, or to stdout when it is empty. Throws DomainError if the file cannot be opened.
void emit(const ExperimentConfig& cfg, const std::string& text);

/// Renders a report in the configured format.
std::string render(const ExperimentConfig& cfg, const DiagnosticReport& report);

int cmd_orbit(const ExperimentConfig& cfg);
int cmd_diag(const std::string& statistic, const ExperimentConfig& cfg);
int cmd_demo(const std::string& name, const ExperimentConfig& cfg, std::ostream& log);

extern const std::vector<std::string> kDiagStatistics;
extern const std::vector<std::string> kDemoNames;

}  // namespace ergodlab::cli
