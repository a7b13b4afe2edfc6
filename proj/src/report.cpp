#include "ergodlab/report.hpp"

#include <cstdio>

namespace ergodlab {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const DiagnosticReport& report) {
  std::string out = "statistic,N,value_re,value_im,meta\n";
  for (const auto& row : report.rows) {
    out += csv_field(row.statistic) + ',' + std::to_string(row.n) + ',' + format_real(row.value.real()) + ',' +
           format_real(row.value.imag()) + ',' + csv_field(row.meta) + '\n';
  }
  return out;
}

nlohmann::json to_json(const DiagnosticReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"statistic", row.statistic},
                    {"N", row.n},
                    {"value_re", format_real(row.value.real())},
                    {"value_im", format_real(row.value.imag())},
                    {"meta", row.meta}});
  }
  return {{"flow", report.flow},
          {"observable", report.observable},
          {"N", report.n},
          {"rows", rows},
          {"caveats", report.caveats}};
}

}  // namespace ergodlab
