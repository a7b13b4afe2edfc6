#include "ergodlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ergodlab/parallel.hpp"

namespace ergodlab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr std::uint64_t kMaxCells = 100'000'000;

std::uint64_t checked_cells(std::size_t dim, std::uint64_t grid, std::size_t max_dim) {
  if (grid < 1) {
    throw DomainError("grid must have at least one cell per axis");
  }
  if (dim < 1 || dim > max_dim) {
    throw ResourceLimit("grid probes support dimension 1.." + std::to_string(max_dim) + ", got " +
                        std::to_string(dim));
  }
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (__builtin_mul_overflow(cells, grid, &cells) || cells > kMaxCells) {
      throw ResourceLimit("grid^dim exceeds 1e8 cells");
    }
  }
  return cells;
}

}  // namespace

std::complex<double> unit_phase(Frac u) {
  const bool upper = (u.bits() >> 127) != 0;
  const double r = upper ? -(-u).to_real() : u.to_real();
  const double angle = 2.0 * std::numbers::pi * r;
  return {std::cos(angle), std::sin(angle)};
}

void Observable::check_dim(std::size_t dim) const {
  std::visit(overloaded{
                 [&](const Character& c) {
                   if (c.coeffs.size() != dim) {
                     throw DomainError("character has " + std::to_string(c.coeffs.size()) +
                                       " coefficients, flow dimension is " + std::to_string(dim));
                   }
                 },
                 [&](const ThetaObservable& t) {
                   if (t.offset + 3 > dim) {
                     throw DomainError("theta observable needs three coordinates starting at its offset");
                   }
                   if (!(t.tol > 0.0 && t.tol <= 1e-3)) {
                     throw DomainError("theta tolerance must lie in (0, 1e-3]");
                   }
                 },
                 [](const Constant&) {},
             },
             v_);
}

std::complex<double> Observable::operator()(const TorusPoint& p) const {
  return std::visit(overloaded{
                        [&](const Character& c) {
                          Frac phase;
                          for (std::size_t i = 0; i < c.coeffs.size(); ++i) phase += int_mul(p[i], c.coeffs[i]);
                          return unit_phase(phase);
                        },
                        [&](const ThetaObservable& t) {
                          const HeisPoint g{p[t.offset].to_real(), p[t.offset + 1].to_real(),
                                            p[t.offset + 2].to_real()};
                          return theta_eval(g, t.tol);
                        },
                        [](const Constant& c) { return c.value; },
                    },
                    v_);
}

std::complex<double> Observable::twisted(const TorusPoint& p, Frac twist) const {
  if (const auto* c = std::get_if<Character>(&v_)) {
    Frac phase = -twist;
    for (std::size_t i = 0; i < c->coeffs.size(); ++i) phase += int_mul(p[i], c->coeffs[i]);
    return unit_phase(phase);
  }
  return (*this)(p)*unit_phase(-twist);
}

double Observable::bound() const {
  return std::visit(overloaded{
                        [](const Character&) { return 1.0; },
                        // sup over y of sum_m e^{-pi (m+y)^2} is attained at y = 0
                        [](const ThetaObservable& t) { return theta_modulus_bound(0.0, t.tol); },
                        [](const Constant& c) { return std::abs(c.value); },
                    },
                    v_);
}

std::string Observable::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Character& c) {
                   os << "character[";
                   for (std::size_t i = 0; i < c.coeffs.size(); ++i) os << (i ? "," : "") << c.coeffs[i];
                   os << "]";
                 },
                 [&](const ThetaObservable& t) { os << "theta(tol=" << format_real(t.tol) << ",offset=" << t.offset << ")"; },
                 [&](const Constant& c) {
                   os << "constant(" << format_real(c.value.real()) << "," << format_real(c.value.imag()) << ")";
                 },
             },
             v_);
  return os.str();
}

void CompensatedSum::Real::add(double v) {
  const double t = sum + v;
  if (std::fabs(sum) >= std::fabs(v)) {
    comp += (sum - t) + v;
  } else {
    comp += (v - t) + sum;
  }
  sum = t;
}

double CompensatedSum::Real::mean(std::uint64_t n) const {
  const auto count = static_cast<double>(n);
  const double m = (sum + comp) / count;
  const double residual = std::fma(-m, count, sum) + comp;
  return m + residual / count;
}

std::vector<std::complex<double>> birkhoff_prefixes(const FlowSpec& spec, const TorusPoint& start,
                                                    const Observable& obs, std::span<const std::uint64_t> lengths) {
  obs.check_dim(spec.dim());
  if (lengths.empty()) {
    return {};
  }
  if (lengths.front() < 1 || !std::is_sorted(lengths.begin(), lengths.end())) {
    throw DomainError("prefix lengths must be ascending and >= 1");
  }
  std::vector<std::complex<double>> out;
  out.reserve(lengths.size());
  CompensatedSum acc;
  std::size_t next = 0;
  std::uint64_t n = 0;
  for (const auto& p : orbit(spec, start, lengths.back())) {
    acc.add(obs(p));
    ++n;
    while (next < lengths.size() && lengths[next] == n) {
      out.push_back(acc.mean(n));
      ++next;
    }
  }
  return out;
}

std::complex<double> birkhoff_average(const FlowSpec& spec, const TorusPoint& start, const Observable& obs,
                                      std::uint64_t count) {
  if (count < 1) {
    throw DomainError("birkhoff_average needs N >= 1");
  }
  const std::uint64_t len[] = {count};
  return birkhoff_prefixes(spec, start, obs, len).front();
}

std::vector<std::uint64_t> quarter_checkpoints(std::uint64_t count) {
  return {std::max<std::uint64_t>(1, count / 4), std::max<std::uint64_t>(1, count / 2), count};
}

DeviationResult uniform_deviation(const FlowSpec& spec, std::span<const TorusPoint> starts, const Observable& obs,
                                  std::uint64_t count, unsigned threads) {
  if (count < 1) {
    throw DomainError("uniform_deviation needs N >= 1");
  }
  const auto lengths = quarter_checkpoints(count);
  return uniform_deviation(spec, starts, obs, std::span<const std::uint64_t>(lengths), threads);
}

DeviationResult uniform_deviation(const FlowSpec& spec, std::span<const TorusPoint> starts, const Observable& obs,
                                  std::span<const std::uint64_t> lengths, unsigned threads) {
  if (starts.size() < 2) {
    throw DomainError("uniform_deviation needs at least two starts");
  }
  if (lengths.empty()) {
    throw DomainError("uniform_deviation needs at least one checkpoint");
  }
  std::vector<std::vector<std::complex<double>>> averages(starts.size());
  parallel_for(starts.size(), threads,
               [&](std::size_t i) { averages[i] = birkhoff_prefixes(spec, starts[i], obs, lengths); });
  DeviationResult result;
  for (std::size_t c = 0; c < lengths.size(); ++c) {
    double worst = 0.0;
    for (std::size_t i = 0; i < starts.size(); ++i) {
      for (std::size_t j = i + 1; j < starts.size(); ++j) {
        worst = std::max(worst, std::abs(averages[i][c] - averages[j][c]));
      }
    }
    result.checkpoints.push_back({lengths[c], worst});
  }
  return result;
}

std::vector<TorusPoint> default_deviation_starts(std::size_t dim) {
  std::vector<TorusPoint> starts;
  for (std::int64_t k = 1; k <= 100; ++k) {
    TorusPoint p(dim);
    std::int64_t g = 1;
    for (std::size_t j = 0; j < dim; ++j) {
      p[j] = Frac::from_rational((k * g) % 101, 101);
      g = (g * 12) % 101;
    }
    starts.push_back(std::move(p));
  }
  return starts;
}

double star_discrepancy_1d(std::span<const Frac> points) {
  if (points.empty()) {
    throw DomainError("star discrepancy of an empty sample");
  }
  if (points.size() > 10'000'000) {
    throw ResourceLimit("star discrepancy limited to 1e7 points");
  }
  std::vector<Frac> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<long double>(sorted.size());
  long double worst = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const long double u = sorted[i].to_long_double();
    const long double above = static_cast<long double>(i + 1) / n - u;
    const long double below = u - static_cast<long double>(i) / n;
    worst = std::max({worst, above, below});
  }
  return static_cast<double>(worst);
}

BoxCounter::BoxCounter(std::size_t dim, std::uint64_t grid)
    : dim_(dim), grid_(grid), counts_(checked_cells(dim, grid, 6), 0) {}

void BoxCounter::add(const TorusPoint& p) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    idx = idx * grid_ + cell_index(p[i], grid_);
  }
  ++counts_[idx];
  ++total_;
}

std::uint64_t BoxCounter::visited() const {
  return static_cast<std::uint64_t>(std::count_if(counts_.begin(), counts_.end(), [](std::uint32_t c) { return c > 0; }));
}

double BoxCounter::discrepancy() const {
  const double volume = 1.0 / static_cast<double>(counts_.size());
  const auto total = static_cast<double>(total_);
  double worst = 0.0;
  for (const auto c : counts_) {
    worst = std::max(worst, std::fabs(static_cast<double>(c) / total - volume));
  }
  return worst;
}

double box_discrepancy(std::span<const TorusPoint> points, std::uint64_t grid) {
  if (points.empty()) {
    throw DomainError("box discrepancy of an empty sample");
  }
  const std::size_t dim = points.front().dim();
  checked_cells(dim, grid, 4);
  BoxCounter counter(dim, grid);
  for (const auto& p : points) counter.add(p);
  return counter.discrepancy();
}

double box_discrepancy_orbit(const FlowSpec& spec, const TorusPoint& start, std::uint64_t count, std::uint64_t grid) {
  checked_cells(spec.dim(), grid, 4);
  BoxCounter counter(spec.dim(), grid);
  for (const auto& p : orbit(spec, start, count)) counter.add(p);
  return counter.discrepancy();
}

double eigen_correlation(const FlowSpec& spec, const TorusPoint& start, const Observable& obs, Frac theta,
                         std::uint64_t count) {
  if (count < 1) {
    throw DomainError("eigen_correlation needs N >= 1");
  }
  obs.check_dim(spec.dim());
  CompensatedSum acc;
  Frac twist;
  for (const auto& p : orbit(spec, start, count)) {
    acc.add(obs.twisted(p, twist));
    twist += theta;
  }
  return std::abs(acc.mean(count));
}

std::vector<EigenScanRow> eigen_scan_rows(const FlowSpec& spec, const TorusPoint& start, const Observable& obs,
                                          std::span<const Frac> thetas, std::uint64_t count, double threshold,
                                          unsigned threads) {
  if (thetas.empty()) {
    throw DomainError("eigen_scan needs a nonempty theta grid");
  }
  std::vector<EigenScanRow> rows(thetas.size());
  parallel_for(thetas.size(), threads, [&](std::size_t i) {
    rows[i].theta = thetas[i];
    rows[i].correlation = eigen_correlation(spec, start, obs, thetas[i], count);
    rows[i].peak = rows[i].correlation > threshold;
  });
  return rows;
}

DiagnosticReport eigen_scan(const FlowSpec& spec, const TorusPoint& start, const Observable& obs,
                            std::span<const Frac> thetas, std::uint64_t count, double threshold, unsigned threads) {
  DiagnosticReport report;
  report.flow = spec.name();
  report.observable = obs.describe();
  report.n = count;
  for (const auto& row : eigen_scan_rows(spec, start, obs, thetas, count, threshold, threads)) {
    report.add("eigen_correlation", count, {row.correlation, 0.0},
               "theta=" + format_real(row.theta.to_real()) + (row.peak ? ";peak" : ""));
  }
  return report;
}

}  // namespace ergodlab
