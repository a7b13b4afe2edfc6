#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ergodlab/flows.hpp"
#include "ergodlab/report.hpp"

namespace ergodlab {

/// point -> e^{2 pi i <coeffs, point>}.
struct Character {
  std::vector<std::int64_t> coeffs;
};

/// The Theta function F read off three consecutive coordinates starting at `offset`.
struct ThetaObservable {
  double tol = 1e-12;
  std::size_t offset = 0;
};

/// point -> value.
struct Constant {
  std::complex<double> value{1.0, 0.0};
};

class Observable {
 public:
  using Variant = std::variant<Character, ThetaObservable, Constant>;

  template <typename T>
  Observable(T kind) : v_(std::move(kind)) {}  // NOLINT(google-explicit-constructor)

  const Variant& variant() const { return v_; }

  /// Throws DomainError if the observable cannot be evaluated on flows of dimension dim.
  void check_dim(std::size_t dim) const;

  std::complex<double> operator()(const TorusPoint& p) const;
  /// obs(p) * e^{-2 pi i twist}; for characters the phase is combined exactly before rounding.
  std::complex<double> twisted(const TorusPoint& p, Frac twist) const;

  /// sup |obs| over the torus.
  double bound() const;
  std::string describe() const;

 private:
  Variant v_;
};

/// e^{2 pi i u} with u reduced to (-1/2, 1/2] from its exact bits.
std::complex<double> unit_phase(Frac u);

/// Neumaier-compensated complex sum.
class CompensatedSum {
 public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  std::complex<double> total() const { return {re_.total(), im_.total()}; }
  /// total / n with a residual correction so identical summands average to themselves.
  std::complex<double> mean(std::uint64_t n) const { return {re_.mean(n), im_.mean(n)}; }

 private:
  struct Real {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v);
    double total() const { return sum + comp; }
    double mean(std::uint64_t n) const;
  };
  Real re_;
  Real im_;
};

/// (1/N) sum_{n<N} obs(T^n start).
std::complex<double> birkhoff_average(const FlowSpec& spec, const TorusPoint& start, const Observable& obs,
                                      std::uint64_t count);

/// Birkhoff averages at each requested prefix length (ascending, each in [1, count]).
std::vector<std::complex<double>> birkhoff_prefixes(const FlowSpec& spec, const TorusPoint& start,
                                                    const Observable& obs, std::span<const std::uint64_t> lengths);

/// Prefix lengths max(1, N/4), max(1, N/2), N.
std::vector<std::uint64_t> quarter_checkpoints(std::uint64_t count);

struct DeviationCheckpoint {
  std::uint64_t n = 0;
  double deviation = 0.0;
};

struct DeviationResult {
  std::vector<DeviationCheckpoint> checkpoints;
  double value() const { return checkpoints.back().deviation; }
};

/// max over start pairs of |A_N(x) - A_N(x')|, reported at N/4, N/2 and N.
DeviationResult uniform_deviation(const FlowSpec& spec, std::span<const TorusPoint> starts, const Observable& obs,
                                  std::uint64_t count, unsigned threads = 1);
/// Same statistic at explicit ascending prefix lengths.
DeviationResult uniform_deviation(const FlowSpec& spec, std::span<const TorusPoint> starts, const Observable& obs,
                                  std::span<const std::uint64_t> lengths, unsigned threads = 1);

/// 100 points of the rank-1 lattice (k/101, k*12/101, k*12^2/101, ...) mod 1, k = 1..100.
std::vector<TorusPoint> default_deviation_starts(std::size_t dim);

/// Exact 1-D star discrepancy of the sample via the sorted formula.
double star_discrepancy_1d(std::span<const Frac> points);

/// Histogram of points over grid^d congruent cells.
class BoxCounter {
 public:
  BoxCounter(std::size_t dim, std::uint64_t grid);
  void add(const TorusPoint& p);
  std::uint64_t count() const { return total_; }
  std::uint64_t visited() const;
  std::uint64_t cells() const { return counts_.size(); }
  /// max over cells of |mass - volume|.
  double discrepancy() const;

 private:
  std::size_t dim_;
  std::uint64_t grid_;
  std::uint64_t total_ = 0;
  std::vector<std::uint32_t> counts_;
};

double box_discrepancy(std::span<const TorusPoint> points, std::uint64_t grid);
double box_discrepancy_orbit(const FlowSpec& spec, const TorusPoint& start, std::uint64_t count, std::uint64_t grid);

/// |(1/N) sum obs(T^n x) e^{-2 pi i n theta}|.
double eigen_correlation(const FlowSpec& spec, const TorusPoint& start, const Observable& obs, Frac theta,
                         std::uint64_t count);

struct EigenScanRow {
  Frac theta;
  double correlation = 0.0;
  bool peak = false;
};

std::vector<EigenScanRow> eigen_scan_rows(const FlowSpec& spec, const TorusPoint& start, const Observable& obs,
                                          std::span<const Frac> thetas, std::uint64_t count, double threshold,
                                          unsigned threads = 1);

/// Scan as a report: one "eigen_correlation" row per theta, meta carries theta and the peak flag.
DiagnosticReport eigen_scan(const FlowSpec& spec, const TorusPoint& start, const Observable& obs,
                            std::span<const Frac> thetas, std::uint64_t count, double threshold,
                            unsigned threads = 1);

}  // namespace ergodlab
