#include "ergodlab/lacunary.hpp"

#include <cmath>
#include <quadmath.h>

namespace ergodlab {
namespace {

const __float128 kTwoPi = 2 * M_PIq;

struct QSum {
  __float128 re = 0;
  __float128 im = 0;
};

void unit_phase(Frac u, __float128& re, __float128& im) {
  sincosq(kTwoPi * u.to_quad(), &im, &re);
}

}  // namespace

LacunarySeq furstenberg_sequence(int K) {
  if (K < 1) {
    throw DomainError("lacunary truncation level must be >= 1");
  }
  if (K > kMaxLacunaryLevel) {
    throw DomainError("lacunary truncation level " + std::to_string(K) +
                      " exceeds 3: n_4 = 2^(2^21 + 22) is not representable");
  }
  LacunarySeq seq;
  seq.K = K;
  std::int64_t v = 1;
  for (int k = 1; k <= K; ++k) {
    seq.v.push_back(v);
    seq.n.push_back(std::int64_t{1} << v);
    seq.alpha_exact += Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(v));
    if (k < K) {
      v = (std::int64_t{1} << v) + v + 1;
    }
  }
  seq.alpha = Frac::from_rational(boost::multiprecision::numerator(seq.alpha_exact),
                                  boost::multiprecision::denominator(seq.alpha_exact));
  return seq;
}

Rational small_divisor_gap(const LacunarySeq& seq, int k) {
  if (k < 1 || k >= seq.K) {
    throw DomainError("small_divisor_gap needs 1 <= k < K (at least one tail term)");
  }
  const Rational prod = seq.alpha_exact * seq.n[static_cast<std::size_t>(k - 1)];
  const BigInt whole = boost::multiprecision::numerator(prod) / boost::multiprecision::denominator(prod);
  return prod - Rational(whole);
}

bool small_divisor_bound_holds(const LacunarySeq& seq, int k) {
  const auto nk = static_cast<unsigned>(seq.n[static_cast<std::size_t>(k - 1)]);
  return small_divisor_gap(seq, k) < Rational(BigInt(1), BigInt(1) << nk);
}

std::string to_string(Weights w) {
  switch (w) {
    case Weights::unit:
      return "unit";
    case Weights::one_plus_inv:
      return "one_plus_inv";
    case Weights::inv:
      return "inv";
  }
  return "inv";
}

Weights weights_from_string(const std::string& name) {
  if (name == "unit") return Weights::unit;
  if (name == "one_plus_inv") return Weights::one_plus_inv;
  if (name == "inv") return Weights::inv;
  throw DomainError("unknown weight family '" + name + "'");
}

LacunaryParams make_lacunary_params(int K, Weights weights, double t, Frac beta) {
  if (!std::isfinite(t)) {
    throw DomainError("t must be finite");
  }
  LacunaryParams p;
  p.seq = furstenberg_sequence(K);
  p.weights = weights;
  p.t = t;
  p.beta = beta;
  for (int sign : {1, -1}) {
    for (int k = 1; k <= K; ++k) {
      const std::int64_t nk = sign * p.seq.n[static_cast<std::size_t>(k - 1)];
      __float128 c = 1;
      if (weights == Weights::one_plus_inv) {
        c = 1 + static_cast<__float128>(1) / k;
      } else if (weights == Weights::inv) {
        c = static_cast<__float128>(1) / k;
      }
      __float128 re = 0;
      __float128 im = 0;
      unit_phase(int_mul(p.seq.alpha, nk), re, im);
      p.freq.push_back(nk);
      p.coeff.push_back(c);
      p.shift_re.push_back(re - 1);
      p.shift_im.push_back(im);
    }
  }
  return p;
}

std::complex<double> H_complex(Frac x, const LacunaryParams& params) {
  QSum s;
  for (std::size_t i = 0; i < params.freq.size(); ++i) {
    __float128 re = 0;
    __float128 im = 0;
    unit_phase(int_mul(x, params.freq[i]), re, im);
    s.re += params.coeff[i] * re;
    s.im += params.coeff[i] * im;
  }
  return {static_cast<double>(s.re), static_cast<double>(s.im)};
}

std::complex<double> h_complex(Frac x, const LacunaryParams& params) {
  QSum s;
  for (std::size_t i = 0; i < params.freq.size(); ++i) {
    __float128 re = 0;
    __float128 im = 0;
    unit_phase(int_mul(x, params.freq[i]), re, im);
    const __float128 ar = params.shift_re[i];
    const __float128 ai = params.shift_im[i];
    s.re += params.coeff[i] * (ar * re - ai * im);
    s.im += params.coeff[i] * (ar * im + ai * re);
  }
  return {static_cast<double>(s.re), static_cast<double>(s.im)};
}

double h_eval(Frac x, const LacunaryParams& params) { return h_complex(x, params).real(); }

double H_eval(Frac x, const LacunaryParams& params) { return H_complex(x, params).real(); }

double phi_eval(Frac x, const LacunaryParams& params) {
  const double v = params.t * h_eval(x, params) + params.beta.to_real();
  double r = v - std::floor(v);
  return r >= 1.0 ? 0.0 : r;
}

Frac phi_increment(Frac x, const LacunaryParams& params) {
  return params.beta + Frac::from_real(params.t * h_eval(x, params));
}

TorusPoint j_map(const TorusPoint& p, const LacunaryParams& params) {
  if (p.dim() != 2) {
    throw DomainError("j_map expects a point of T^2");
  }
  return TorusPoint{p[0], p[1] + Frac::from_real(params.t * H_eval(p[0], params))};
}

}  // namespace ergodlab
