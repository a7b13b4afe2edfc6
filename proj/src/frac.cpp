#include "ergodlab/frac.hpp"

#include <cmath>
#include <ostream>
#include <quadmath.h>

namespace ergodlab {
namespace {

const BigInt& two_pow_128() {
  static const BigInt value = BigInt(1) << 128;
  return value;
}

BigInt round_div_half_even(const BigInt& num, const BigInt& den) {
  BigInt quot = num / den;
  BigInt rem = num - quot * den;
  BigInt twice = rem * 2;
  if (twice > den || (twice == den && (quot & 1) != 0)) {
    ++quot;
  }
  return quot;
}

u128 to_u128(const BigInt& v) {
  // v is in [0, 2^128]; 2^128 wraps to 0
  const BigInt reduced = v & (two_pow_128() - 1);
  const auto hi = static_cast<std::uint64_t>(reduced >> 64);
  const auto lo = static_cast<std::uint64_t>(reduced & BigInt(0xFFFFFFFFFFFFFFFFull));
  return (static_cast<u128>(hi) << 64) | lo;
}

BigInt to_bigint(u128 v) {
  BigInt out = static_cast<std::uint64_t>(v >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(v);
  return out;
}

}  // namespace

Frac Frac::from_decimal(std::string_view text) {
  if (text.empty()) {
    throw DomainError("empty decimal string");
  }
  std::size_t pos = 0;
  std::string int_part;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    int_part.push_back(text[pos++]);
  }
  std::string frac_part;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      frac_part.push_back(text[pos++]);
    }
  }
  if (pos != text.size() || (int_part.empty() && frac_part.empty())) {
    throw DomainError("malformed decimal '" + std::string(text) + "'");
  }
  if (int_part.find_first_not_of('0') != std::string::npos) {
    throw DomainError("decimal '" + std::string(text) + "' outside [0,1)");
  }
  if (frac_part.size() > 50) {
    throw DomainError("decimal '" + std::string(text) + "' has more than 50 fractional digits");
  }
  if (frac_part.empty()) {
    return Frac{};
  }
  const BigInt digits(frac_part);
  const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_part.size()));
  return Frac(to_u128(round_div_half_even(digits << 128, scale)));
}

Frac Frac::from_rational(const BigInt& p, const BigInt& q) {
  if (q <= 0) {
    throw DomainError("rational denominator must be positive");
  }
  if (p < 0 || p >= q) {
    throw DomainError("rational numerator must satisfy 0 <= p < q");
  }
  return Frac(to_u128(round_div_half_even(p << 128, q)));
}

Frac Frac::from_real(double r) {
  if (!std::isfinite(r)) {
    throw DomainError("non-finite real cannot be mapped to the circle");
  }
  if (r == 0.0) {
    return Frac{};
  }
  int exp = 0;
  const double mant = std::frexp(std::fabs(r), &exp);
  const auto m = static_cast<std::uint64_t>(std::ldexp(mant, 53));  // r = m * 2^(exp-53)
  const int shift = exp - 53 + kBits;
  u128 bits = 0;
  if (shift >= 0) {
    bits = shift >= kBits ? u128{0} : static_cast<u128>(m) << shift;
  } else if (-shift < 64) {
    const int s = -shift;
    const std::uint64_t q = m >> s;
    const std::uint64_t rem = m & ((std::uint64_t{1} << s) - 1);
    const std::uint64_t half = std::uint64_t{1} << (s - 1);
    bits = q;
    if (rem > half || (rem == half && (q & 1) != 0)) {
      ++bits;
    }
  }
  return r < 0 ? Frac(u128{0} - bits) : Frac(bits);
}

double Frac::to_real() const {
  // u128 -> double conversion rounds to nearest; scaling by 2^-128 is exact
  return std::ldexp(static_cast<double>(bits_), -kBits);
}

long double Frac::to_long_double() const {
  return std::ldexp(static_cast<long double>(bits_), -kBits);
}

__float128 Frac::to_quad() const {
  return ldexpq(static_cast<__float128>(bits_), -kBits);
}

Rational Frac::to_rational() const { return Rational(to_bigint(bits_), two_pow_128()); }

std::string Frac::bits_decimal() const { return to_bigint(bits_).str(); }

Frac mul(Frac a, Frac b) {
  const BigInt prod = to_bigint(a.bits()) * to_bigint(b.bits());
  return Frac::from_bits(to_u128(round_div_half_even(prod, two_pow_128())));
}

double dist(Frac a, Frac b) {
  const u128 d = (a - b).bits();
  const u128 e = u128{0} - d;
  return Frac::from_bits(d < e ? d : e).to_real();
}

std::uint64_t cell_index(Frac a, std::uint64_t cells) {
  const u128 c = cells;
  const u128 lo_part = (static_cast<u128>(a.lo()) * c) >> 64;
  return static_cast<std::uint64_t>((static_cast<u128>(a.hi()) * c + lo_part) >> 64);
}

std::ostream& operator<<(std::ostream& os, Frac a) {
  return os << "Frac(" << a.bits_decimal() << "/2^128)";
}

}  // namespace ergodlab
