#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ergodlab {

using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for malformed input or violated preconditions (CLI exit code 2).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a request exceeds a stated size limit (CLI exit code 3).
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * A point of the circle R/Z stored as the 128-bit fraction bits / 2^128.
 *
 * Addition wraps modulo 2^128, which is exactly addition mod 1 on the
 * represented values, so affine orbits built from additions and integer
 * multiples never drift.
 */
class Frac {
 public:
  static constexpr int kBits = 128;

  constexpr Frac() = default;
  static constexpr Frac from_bits(u128 bits) { return Frac(bits); }

  /// Nearest fraction to a decimal in [0,1) with at most 50 fractional digits; ties to even.
  static Frac from_decimal(std::string_view text);
  /// Nearest fraction to p/q, 0 <= p < q; ties to even.
  static Frac from_rational(const BigInt& p, const BigInt& q);
  static Frac from_rational(std::int64_t p, std::int64_t q) {
    return from_rational(BigInt(p), BigInt(q));
  }
  /// Nearest fraction to r mod 1 for any finite r (negative values wrap).
  static Frac from_real(double r);

  constexpr u128 bits() const { return bits_; }
  std::uint64_t hi() const { return static_cast<std::uint64_t>(bits_ >> 64); }
  std::uint64_t lo() const { return static_cast<std::uint64_t>(bits_); }

  double to_real() const;
  long double to_long_double() const;
  __float128 to_quad() const;
  /// Exact value bits / 2^128.
  Rational to_rational() const;
  /// The numerator as a base-10 string (denominator is 2^128).
  std::string bits_decimal() const;

  constexpr Frac& operator+=(Frac o) {
    bits_ += o.bits_;
    return *this;
  }
  constexpr Frac& operator-=(Frac o) {
    bits_ -= o.bits_;
    return *this;
  }

  friend constexpr Frac operator+(Frac a, Frac b) { return Frac(a.bits_ + b.bits_); }
  friend constexpr Frac operator-(Frac a, Frac b) { return Frac(a.bits_ - b.bits_); }
  friend constexpr Frac operator-(Frac a) { return Frac(u128{0} - a.bits_); }
  friend constexpr bool operator==(Frac a, Frac b) = default;
  friend constexpr std::strong_ordering operator<=>(Frac a, Frac b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  constexpr explicit Frac(u128 bits) : bits_(bits) {}
  u128 bits_ = 0;
};

/// Exact n * a mod 1. Signed n wraps two's-complement, so int_mul(a, -1) == -a.
constexpr Frac int_mul(Frac a, std::int64_t n) {
  return Frac::from_bits(static_cast<u128>(static_cast<__int128>(n)) * a.bits());
}

constexpr Frac add(Frac a, Frac b) { return a + b; }
constexpr Frac neg(Frac a) { return -a; }

/// Product of the two represented fractions, rounded to nearest (ties to even).
Frac mul(Frac a, Frac b);

/// Circle distance min(|a-b|, 1-|a-b|) in [0, 1/2].
double dist(Frac a, Frac b);

inline double to_real(Frac a) { return a.to_real(); }
inline Frac frac_from_decimal(std::string_view s) { return Frac::from_decimal(s); }
inline Frac frac_from_rational(std::int64_t p, std::int64_t q) { return Frac::from_rational(p, q); }

/// floor(a * cells) computed exactly; cells must be below 2^63.
std::uint64_t cell_index(Frac a, std::uint64_t cells);

std::ostream& operator<<(std::ostream& os, Frac a);

}  // namespace ergodlab
