#include <sstream>

#include "cli.hpp"
#include "ergodlab/parallel.hpp"

namespace ergodlab::cli {
namespace {

// Orbit files beyond this many coordinate values are refused rather than streamed.
constexpr std::uint64_t kMaxOrbitValues = 200'000'000;

const FlowSpec& require_flow(const ExperimentConfig& cfg) {
  if (!cfg.flow) {
    throw DomainError("this subcommand needs a 'flow' in the config");
  }
  return *cfg.flow;
}

TorusPoint first_start(const ExperimentConfig& cfg, std::size_t dim) {
  return cfg.starts.empty() ? TorusPoint(dim) : cfg.starts.front();
}

void append_row(std::ostringstream& out, std::uint64_t n, std::span<const Frac> a, std::span<const Frac> b) {
  out << n;
  for (Frac f : a) out << ',' << format_real(f.to_real());
  for (Frac f : b) out << ',' << format_real(f.to_real());
  out << '\n';
}

std::string flow_label(const FlowSpec& spec) { return flow_to_json(spec).dump(); }

}  // namespace

int cmd_orbit(const ExperimentConfig& cfg) {
  const std::size_t dim = cfg.join ? cfg.join->left.dim() + cfg.join->right.dim() : require_flow(cfg).dim();
  if (cfg.n > kMaxOrbitValues / std::max<std::size_t>(dim, 1)) {
    throw ResourceLimit("orbit output of N x dim values exceeds 2e8");
  }
  std::ostringstream out;
  Json rows = Json::array();
  const bool json = cfg.format == "json";

  auto header = [&](std::size_t left_dim, std::size_t right_dim) {
    if (json) return;
    out << 'n';
    for (std::size_t i = 1; i <= left_dim; ++i) out << ",x" << i;
    for (std::size_t i = 1; i <= right_dim; ++i) out << ",y" << i;
    out << '\n';
  };
  auto json_row = [&](std::uint64_t n, std::span<const Frac> a, std::span<const Frac> b) {
    Json coords = Json::array();
    for (Frac f : a) coords.push_back(f.to_real());
    for (Frac f : b) coords.push_back(f.to_real());
    rows.push_back({{"n", n}, {"coords", coords}});
  };

  if (cfg.join) {
    header(cfg.join->left.dim(), cfg.join->right.dim());
    join_orbit(*cfg.join, cfg.n, [&](const PairOrbitPoint& p) {
      if (json) {
        json_row(p.n, p.left.coords(), p.right.coords());
      } else {
        append_row(out, p.n, p.left.coords(), p.right.coords());
      }
    });
  } else {
    const FlowSpec& spec = *cfg.flow;
    header(spec.dim(), 0);
    std::uint64_t n = 0;
    for (const auto& p : orbit(spec, first_start(cfg, spec.dim()), cfg.n)) {
      if (json) {
        json_row(n, p.coords(), {});
      } else {
        append_row(out, n, p.coords(), {});
      }
      ++n;
    }
  }
  if (json) {
    Json doc;
    doc["spec"] = cfg.join ? join_to_json(*cfg.join) : flow_to_json(*cfg.flow);
    doc["N"] = cfg.n;
    doc["rows"] = std::move(rows);
    emit(cfg, doc.dump(2) + "\n");
  } else {
    emit(cfg, out.str());
  }
  return kOk;
}

int cmd_diag(const std::string& statistic, const ExperimentConfig& cfg) {
  const FlowSpec& spec = require_flow(cfg);
  DiagnosticReport report;
  report.flow = flow_label(spec);
  report.observable = cfg.observable.describe();
  report.n = cfg.n;

  if (statistic == "birkhoff") {
    cfg.observable.check_dim(spec.dim());
    std::vector<TorusPoint> starts = cfg.starts;
    if (starts.empty()) starts.emplace_back(spec.dim());
    std::vector<std::vector<std::complex<double>>> averages(starts.size());
    parallel_for(starts.size(), cfg.threads, [&](std::size_t i) {
      averages[i] = birkhoff_prefixes(spec, starts[i], cfg.observable, cfg.checkpoints);
    });
    for (std::size_t i = 0; i < starts.size(); ++i) {
      for (std::size_t c = 0; c < cfg.checkpoints.size(); ++c) {
        report.add("birkhoff", cfg.checkpoints[c], averages[i][c], "start=" + std::to_string(i));
      }
    }
  } else if (statistic == "deviation") {
    const std::vector<TorusPoint> starts = cfg.starts.empty() ? default_deviation_starts(spec.dim()) : cfg.starts;
    const auto dev = uniform_deviation(spec, starts, cfg.observable, cfg.checkpoints, cfg.threads);
    for (const auto& c : dev.checkpoints) {
      report.add("deviation", c.n, {c.deviation, 0.0}, "starts=" + std::to_string(starts.size()));
    }
  } else if (statistic == "discrepancy") {
    const std::size_t dim = spec.dim();
    BoxCounter boxes(dim, cfg.grid);
    std::vector<Frac> line;
    if (dim == 1) line.reserve(cfg.n);
    std::size_t next = 0;
    std::uint64_t seen = 0;
    for (const auto& p : orbit(spec, first_start(cfg, dim), cfg.n)) {
      boxes.add(p);
      if (dim == 1) line.push_back(p[0]);
      ++seen;
      if (next < cfg.checkpoints.size() && cfg.checkpoints[next] == seen) {
        if (dim == 1) report.add("star_discrepancy", seen, {star_discrepancy_1d(line), 0.0});
        report.add("box_discrepancy", seen, {boxes.discrepancy(), 0.0}, "grid=" + std::to_string(cfg.grid));
        ++next;
      }
    }
  } else if (statistic == "eigenscan") {
    if (cfg.thetas.empty()) {
      throw DomainError("eigenscan needs a nonempty 'thetas' list");
    }
    report = eigen_scan(spec, first_start(cfg, spec.dim()), cfg.observable, cfg.thetas, cfg.n, cfg.threshold,
                        cfg.threads);
    report.flow = flow_label(spec);
  } else {
    throw DomainError("unknown diagnostic '" + statistic + "'");
  }
  emit(cfg, render(cfg, report));
  return kOk;
}

}  // namespace ergodlab::cli
