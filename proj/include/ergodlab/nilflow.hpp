#pragma once

#include <complex>
#include <cstdint>

#include "ergodlab/frac.hpp"

namespace ergodlab {

/// The Heisenberg matrix (1 x z; 0 1 y; 0 0 1).
struct HeisPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const HeisPoint&, const HeisPoint&) = default;
};

struct NilParams {
  Frac alpha;
  Frac beta;
  Frac gamma;
  double theta_tol = 1e-12;
};

/// Throws DomainError unless theta_tol is in (0, 1e-3].
void validate(const NilParams& params);

HeisPoint heis_mul(const HeisPoint& g, const HeisPoint& h);
HeisPoint heis_inv(const HeisPoint& g);

/**
 * Coset representative in [0,1)^3 of g * Gamma, Gamma the integer matrices.
 * Right multiplication by (p, q, r) maps (x, y, z) to (x+p, y+q, z+r+x*q);
 * q is chosen from y, then p from x, then r from the shifted z.
 */
HeisPoint reduce_mod_lattice(const HeisPoint& g);

/// z-entry of the translation matrix, gamma + alpha*beta/2 mod 1.
Frac translation_z(const NilParams& params);

/// One step g Gamma -> T g Gamma with T = (alpha, beta, gamma + alpha*beta/2).
HeisPoint nil_step(const HeisPoint& g, const NilParams& params);

/// Number of lattice shifts on each side of -y kept by theta_eval at tolerance tol.
int theta_radius(double tol);

/// F(x,y,z) = e^{2 pi i z} sum_m e^{2 pi i m x} e^{-pi (m+y)^2}, truncated to |m+y| <= M.
std::complex<double> theta_eval(const HeisPoint& g, double tol);

/// Sum over all m of e^{-pi (m+y)^2}; bounds |F| uniformly.
double theta_modulus_bound(double y, double tol);

/**
 * F evaluated at T^n applied to the identity coset, in closed form:
 * T^n = (n alpha, n beta, n gamma + n^2 alpha beta / 2), brought into the
 * unit cube by an exact right lattice multiplication before conversion to double.
 */
std::complex<double> nil_function(std::int64_t n, const NilParams& params);

/// F(n alpha, n beta, alpha beta / 2 + n gamma), the displayed form of the Theta sequence.
/// Differs from nil_function by the unimodular factor e^{pi i alpha beta (n^2 - 1)}.
std::complex<double> nil_function_displayed(std::int64_t n, const NilParams& params);

}  // namespace ergodlab
