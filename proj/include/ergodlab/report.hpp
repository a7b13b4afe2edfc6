#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace ergodlab {

struct ReportRow {
  std::string statistic;
  std::uint64_t n = 0;
  std::complex<double> value;
  std::string meta;
};

/// Result of a diagnostic run. Every row carries the sample length it was computed at.
struct DiagnosticReport {
  std::string flow;
  std::string observable;
  std::uint64_t n = 0;
  std::vector<ReportRow> rows;
  std::vector<std::string> caveats;
  double elapsed_seconds = 0.0;  // not serialized; output files stay deterministic

  void add(std::string statistic, std::uint64_t at, std::complex<double> value, std::string meta = {}) {
    rows.push_back({std::move(statistic), at, value, std::move(meta)});
  }
};

/// printf %.17g; round-trips every double.
std::string format_real(double v);

/// Header "statistic,N,value_re,value_im,meta" then one line per row.
std::string to_csv(const DiagnosticReport& report);
nlohmann::json to_json(const DiagnosticReport& report);

}  // namespace ergodlab
