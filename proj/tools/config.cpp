#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "ergodlab/parallel.hpp"

namespace ergodlab::cli {
namespace {

namespace fs = std::filesystem;

Json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError("cannot open config file '" + path.string() + "'");
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

// A spec may be given inline or as a path relative to the config file.
Json inline_or_file(const Json& j, const fs::path& base) {
  if (j.is_string()) {
    return read_json_file(base / j.get<std::string>());
  }
  return j;
}

std::uint64_t positive_count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 1) {
    throw DomainError(std::string(what) + " must be a positive integer");
  }
  return j.get<std::uint64_t>();
}

std::vector<std::uint64_t> checkpoint_lengths(const std::vector<double>& fractions, std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (double f : fractions) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw DomainError("checkpoint fractions must lie in (0, 1]");
    }
    const auto len = f == 1.0 ? n : static_cast<std::uint64_t>(std::floor(f * static_cast<double>(n)));
    out.push_back(std::max<std::uint64_t>(1, len));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.back() != n) out.push_back(n);
  return out;
}

}  // namespace

const std::vector<std::string> kDiagStatistics = {"birkhoff", "deviation", "discrepancy", "eigenscan"};
const std::vector<std::string> kDemoNames = {"fur-seq", "coboundary", "conjugacy", "theta", "joining-anzai", "joining-m"};

ExperimentConfig load_config(const RunOptions& opts, bool require_config) {
  ExperimentConfig cfg;
  fs::path base = ".";
  if (!opts.config_path.empty()) {
    cfg.raw = read_json_file(opts.config_path);
    if (!cfg.raw.is_object()) {
      throw DomainError("config must be a JSON object");
    }
    base = fs::path(opts.config_path).parent_path();
  } else if (require_config) {
    throw DomainError("--config is required for this subcommand");
  }
  const Json& j = cfg.raw;

  if (j.contains("flow")) cfg.flow = flow_from_json(inline_or_file(j.at("flow"), base));
  if (j.contains("join")) cfg.join = join_from_json(inline_or_file(j.at("join"), base));
  if (cfg.flow && cfg.join) {
    throw DomainError("config holds both 'flow' and 'join'");
  }
  if (j.contains("observable")) {
    cfg.observable = observable_from_json(j.at("observable"));
    cfg.has_observable = true;
  }
  if (j.contains("N")) cfg.n = positive_count(j.at("N"), "N");
  if (opts.n) {
    if (*opts.n < 1) throw DomainError("--n must be >= 1");
    cfg.n = *opts.n;
    cfg.n_overridden = true;
  }
  if (j.contains("start")) cfg.starts.push_back(point_from_json(j.at("start")));
  if (j.contains("starts")) {
    if (!j.at("starts").is_array()) throw DomainError("'starts' must be an array of points");
    for (const auto& p : j.at("starts")) cfg.starts.push_back(point_from_json(p));
  }
  std::vector<double> fractions = {0.25, 0.5, 1.0};
  if (j.contains("checkpoints")) {
    fractions.clear();
    for (const auto& f : j.at("checkpoints")) fractions.push_back(real_from_json(f));
    if (fractions.empty()) throw DomainError("'checkpoints' must not be empty");
  }
  cfg.checkpoints = checkpoint_lengths(fractions, cfg.n);
  if (j.contains("thetas")) {
    for (const auto& t : j.at("thetas")) cfg.thetas.push_back(frac_from_json(t));
  }
  if (j.contains("threshold")) cfg.threshold = real_from_json(j.at("threshold"));
  if (j.contains("grid")) cfg.grid = positive_count(j.at("grid"), "grid");

  if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
  if (!opts.format.empty()) cfg.format = opts.format;
  if (cfg.format != "csv" && cfg.format != "json") {
    throw DomainError("format must be csv or json");
  }
  if (j.contains("output")) cfg.out_path = (base / j.at("output").get<std::string>()).string();
  if (!opts.out_path.empty()) cfg.out_path = opts.out_path;
  cfg.threads = resolve_threads(opts.threads);
  return cfg;
}

void emit(const ExperimentConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) {
    throw DomainError("cannot open output file '" + cfg.out_path + "'");
  }
  out << text;
  if (!out) {
    throw DomainError("failed writing '" + cfg.out_path + "'");
  }
}

std::string render(const ExperimentConfig& cfg, const DiagnosticReport& report) {
  if (cfg.format == "json") {
    return to_json(report).dump(2) + "\n";
  }
  return to_csv(report);
}

}  // namespace ergodlab::cli
