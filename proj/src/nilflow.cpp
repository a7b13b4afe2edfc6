#include "ergodlab/nilflow.hpp"

#include <cmath>
#include <numbers>

namespace ergodlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// fractional part in [0,1); a result that rounds up to 1 folds back to 0
double wrap_unit(double v) {
  const double r = v - std::floor(v);
  return r >= 1.0 ? 0.0 : r;
}

std::complex<double> unit_phase(double turns) {
  const double r = turns - std::round(turns);
  return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

}  // namespace

void validate(const NilParams& params) {
  if (!(params.theta_tol > 0.0 && params.theta_tol <= 1e-3)) {
    throw DomainError("theta_tol must lie in (0, 1e-3]");
  }
}

HeisPoint heis_mul(const HeisPoint& g, const HeisPoint& h) {
  return {g.x + h.x, g.y + h.y, g.z + h.z + g.x * h.y};
}

HeisPoint heis_inv(const HeisPoint& g) { return {-g.x, -g.y, g.x * g.y - g.z}; }

HeisPoint reduce_mod_lattice(const HeisPoint& g) {
  const double q = -std::floor(g.y);
  const double p = -std::floor(g.x);
  const double z_shifted = g.z + g.x * q;
  HeisPoint out;
  out.y = wrap_unit(g.y + q);
  out.x = wrap_unit(g.x + p);
  out.z = wrap_unit(z_shifted);
  return out;
}

Frac translation_z(const NilParams& params) {
  const Frac half_ab = Frac::from_bits(mul(params.alpha, params.beta).bits() >> 1);
  return params.gamma + half_ab;
}

HeisPoint nil_step(const HeisPoint& g, const NilParams& params) {
  const HeisPoint t{params.alpha.to_real(), params.beta.to_real(), translation_z(params).to_real()};
  return reduce_mod_lattice(heis_mul(t, g));
}

int theta_radius(double tol) {
  const double arg = std::log(2.0 / tol / (1.0 - std::exp(-std::numbers::pi)));
  return static_cast<int>(std::ceil(std::sqrt(arg / std::numbers::pi))) + 1;
}

std::complex<double> theta_eval(const HeisPoint& g, double tol) {
  const int radius = theta_radius(tol);
  const auto m_lo = static_cast<long long>(std::ceil(-g.y - radius));
  const auto m_hi = static_cast<long long>(std::floor(-g.y + radius));
  std::complex<double> sum{0.0, 0.0};
  for (long long m = m_lo; m <= m_hi; ++m) {
    const double shifted = static_cast<double>(m) + g.y;
    sum += std::exp(-std::numbers::pi * shifted * shifted) * unit_phase(static_cast<double>(m) * g.x);
  }
  return unit_phase(g.z) * sum;
}

double theta_modulus_bound(double y, double tol) {
  const int radius = theta_radius(tol);
  const auto m_lo = static_cast<long long>(std::ceil(-y - radius));
  const auto m_hi = static_cast<long long>(std::floor(-y + radius));
  double sum = 0.0;
  for (long long m = m_lo; m <= m_hi; ++m) {
    const double shifted = static_cast<double>(m) + y;
    sum += std::exp(-std::numbers::pi * shifted * shifted);
  }
  return sum + tol;
}

namespace {

void check_index(std::int64_t n) {
  if (n > 1'000'000'000 || n < -1'000'000'000) {
    throw DomainError("nil_function index must satisfy |n| <= 1e9");
  }
}

// floor(n * a) for the real number a in [0, 1)
std::int64_t floor_mul(Frac a, std::int64_t n) {
  const BigInt prod = BigInt(n) * BigInt(a.bits());
  BigInt q = prod >> 128;  // arithmetic shift floors for negative values too
  return static_cast<std::int64_t>(q);
}

// F at the group element (n alpha, n beta, z). The point handed to theta has its
// first two coordinates reduced mod 1, which is right multiplication by
// (-floor(n alpha), -floor(n beta), 0) and moves z by -n alpha floor(n beta).
std::complex<double> theta_at(std::int64_t n, Frac z, const NilParams& params) {
  const std::int64_t b = floor_mul(params.beta, n);
  const Frac zr = z - int_mul(params.alpha, n * b);
  const HeisPoint g{int_mul(params.alpha, n).to_real(), int_mul(params.beta, n).to_real(), zr.to_real()};
  return theta_eval(g, params.theta_tol);
}

}  // namespace

std::complex<double> nil_function(std::int64_t n, const NilParams& params) {
  check_index(n);
  const Frac half_ab = Frac::from_bits(mul(params.alpha, params.beta).bits() >> 1);
  return theta_at(n, int_mul(params.gamma, n) + int_mul(half_ab, n * n), params);
}

std::complex<double> nil_function_displayed(std::int64_t n, const NilParams& params) {
  check_index(n);
  const Frac half_ab = Frac::from_bits(mul(params.alpha, params.beta).bits() >> 1);
  return theta_at(n, half_ab + int_mul(params.gamma, n), params);
}

}  // namespace ergodlab
