#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ergodlab/frac.hpp"
#include "ergodlab/torus.hpp"

namespace ergodlab {

/// Highest truncation level whose frequency n_K fits a machine word.
inline constexpr int kMaxLacunaryLevel = 3;

/**
 * The doubly exponential frequencies v_1 = 1, v_{k+1} = 2^{v_k} + v_k + 1,
 * n_k = 2^{v_k}, truncated at level K, with alpha_K = sum_{k<=K} 1/n_k held
 * both exactly and as a circle point.
 */
struct LacunarySeq {
  int K = 0;
  std::vector<std::int64_t> v;  // v_1 .. v_K
  std::vector<std::int64_t> n;  // n_1 .. n_K
  Rational alpha_exact;
  Frac alpha;
};

LacunarySeq furstenberg_sequence(int K);

/// Exact fractional part of n_k * alpha_K (k is 1-based, k < K).
Rational small_divisor_gap(const LacunarySeq& seq, int k);

/// True when small_divisor_gap(seq, k) < 2^{-n_k}, decided in exact arithmetic.
bool small_divisor_bound_holds(const LacunarySeq& seq, int k);

/// Coefficient families c_k: unit = 1, one_plus_inv = 1 + 1/|k|, inv = 1/|k|.
enum class Weights { unit, one_plus_inv, inv };

std::string to_string(Weights w);
Weights weights_from_string(const std::string& name);

/// Everything that determines h, H, phi and J. Build with make_lacunary_params.
struct LacunaryParams {
  LacunarySeq seq;
  Weights weights = Weights::inv;
  double t = 1.0;
  Frac beta;

  // one entry per k in (1..K, -1..-K): n_k, c_k and e^{2 pi i n_k alpha} - 1
  std::vector<std::int64_t> freq;
  std::vector<__float128> coeff;
  std::vector<__float128> shift_re;
  std::vector<__float128> shift_im;
};

LacunaryParams make_lacunary_params(int K, Weights weights, double t, Frac beta);

/// Symmetric sums over 1 <= |k| <= K before taking the real part.
std::complex<double> h_complex(Frac x, const LacunaryParams& params);
std::complex<double> H_complex(Frac x, const LacunaryParams& params);

/// h(x) = sum c_k (e^{2 pi i n_k alpha} - 1) e^{2 pi i n_k x}, real part.
double h_eval(Frac x, const LacunaryParams& params);
/// H(x) = sum c_k e^{2 pi i n_k x}, real part.
double H_eval(Frac x, const LacunaryParams& params);

/// phi(x) = t h(x) + beta reduced to [0,1).
double phi_eval(Frac x, const LacunaryParams& params);

/// The fiber increment used by the skew products: beta + round(t h(x)).
Frac phi_increment(Frac x, const LacunaryParams& params);

/// J(x, y) = (x, y + round(t H(x))).
TorusPoint j_map(const TorusPoint& p, const LacunaryParams& params);

}  // namespace ergodlab
