#include <iostream>
#include <new>

#include "CLI11.hpp"
#include "cli.hpp"

using namespace ergodlab;
using namespace ergodlab::cli;

namespace {

void add_common(CLI::App* cmd, RunOptions& opts) {
  cmd->add_option("--config", opts.config_path, "experiment config (JSON)");
  cmd->add_option("--out", opts.out_path, "output file (default: stdout)");
  cmd->add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", opts.threads, "worker threads (default: ERGODLAB_THREADS, else 1)")
      ->check(CLI::Range(1, 1024));
  cmd->add_option("--n", opts.n, "sample length N, overrides the config");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact orbit iteration and ergodic diagnostics on tori and nilmanifolds", "ergodlab"};
  app.require_subcommand(1);

  RunOptions opts;
  auto* orbit_cmd = app.add_subcommand("orbit", "write orbit coordinates of a flow or joining");
  add_common(orbit_cmd, opts);

  std::string statistic;
  auto* diag_cmd = app.add_subcommand("diag", "run a diagnostic and write a report");
  diag_cmd->add_option("statistic", statistic, "birkhoff | deviation | discrepancy | eigenscan")
      ->required()
      ->check(CLI::IsMember(kDiagStatistics));
  add_common(diag_cmd, opts);

  std::string demo;
  auto* demo_cmd = app.add_subcommand("demo", "run a named verification, printing PASS/FAIL per identity");
  demo_cmd->add_option("name", demo, "fur-seq | coboundary | conjugacy | theta | joining-anzai | joining-m")
      ->required()
      ->check(CLI::IsMember(kDemoNames));
  add_common(demo_cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (orbit_cmd->parsed()) {
      return cmd_orbit(load_config(opts, true));
    }
    if (diag_cmd->parsed()) {
      return cmd_diag(statistic, load_config(opts, true));
    }
    return cmd_demo(demo, load_config(opts, false), std::cout);
  } catch (const ResourceLimit& e) {
    std::cerr << "ergodlab: resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "ergodlab: resource limit: out of memory\n";
    return kResource;
  } catch (const DomainError& e) {
    std::cerr << "ergodlab: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "ergodlab: config error: " << e.what() << '\n';
    return kUsage;
  }
}
