#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ergodlab/flows.hpp"
#include "ergodlab/lacunary.hpp"
#include "test_util.hpp"

using namespace ergodlab;
using ergodlab::testing::random_frac;

namespace {

const Frac kBeta = Frac::from_decimal("0.41421356237309504880168872420969807856967187537694");

double fiber_gap(Frac a, Frac b) { return dist(a, b); }

}  // namespace

TEST_CASE("Furstenberg sequence") {
  const auto seq = furstenberg_sequence(3);
  CHECK(seq.v == std::vector<std::int64_t>{1, 4, 21});
  CHECK(seq.n == std::vector<std::int64_t>{2, 16, 2097152});
  CHECK(seq.alpha_exact == Rational(1179649, 2097152));
  CHECK(seq.alpha == Frac::from_rational(1179649, 2097152));
  for (std::size_t k = 0; k + 1 < seq.v.size(); ++k) {
    CHECK(seq.v[k + 1] == (std::int64_t{1} << seq.v[k]) + seq.v[k] + 1);
  }
  CHECK(furstenberg_sequence(1).alpha_exact == Rational(1, 2));
  CHECK(furstenberg_sequence(2).alpha_exact == Rational(9, 16));
  CHECK_THROWS_AS(furstenberg_sequence(4), DomainError);
  CHECK_THROWS_AS(furstenberg_sequence(0), DomainError);
}

TEST_CASE("small divisor gaps") {
  const auto seq = furstenberg_sequence(3);
  CHECK(small_divisor_gap(seq, 1) == Rational(131073, 1048576));
  CHECK(small_divisor_gap(seq, 2) == Rational(1, 131072));
  CHECK(small_divisor_bound_holds(seq, 1));
  CHECK(small_divisor_bound_holds(seq, 2));
  CHECK_THROWS_AS(small_divisor_gap(furstenberg_sequence(1), 1), DomainError);
  CHECK_THROWS_AS(small_divisor_gap(seq, 3), DomainError);
}

TEST_CASE("H at zero sums the weights") {
  const auto p = make_lacunary_params(3, Weights::inv, 1.0, kBeta);
  CHECK(H_eval(Frac{}, p) == doctest::Approx(11.0 / 3.0).epsilon(1e-15));
  CHECK(H_eval(Frac{}, make_lacunary_params(3, Weights::unit, 1.0, kBeta)) == doctest::Approx(6.0));
}

TEST_CASE("single-pair h at zero") {
  const auto p = make_lacunary_params(1, Weights::inv, 1.0, kBeta);
  const double a = p.seq.alpha.to_real();
  CHECK(h_eval(Frac{}, p) == doctest::Approx(2.0 * (std::cos(4.0 * std::numbers::pi * a) - 1.0)).epsilon(1e-15));
  // the pair formula at a generic point
  const Frac x = Frac::from_decimal("0.3");
  const double xr = x.to_real();
  const double pair = 2.0 * (std::cos(2.0 * std::numbers::pi * (2 * a + 2 * xr)) - std::cos(2.0 * std::numbers::pi * 2 * xr));
  CHECK(h_eval(x, p) == doctest::Approx(pair).epsilon(1e-13));
}

TEST_CASE("lacunary sums against high-precision direct summation") {
  // mpmath at 50 digits with x the nearest 128-bit fraction to 3/10 and 1/7
  struct Case {
    Frac x;
    Weights w;
    double h;
    double H;
  };
  const Frac x1 = Frac::from_rational(3, 10);
  const Frac x2 = Frac::from_rational(1, 7);
  const Case cases[] = {
      {x1, Weights::unit, 1.3052680760456325, -2.6180339887498948},
      {x1, Weights::one_plus_inv, 2.6104905617455787, -4.4663956460414739},
      {x1, Weights::inv, 1.3052224856999462, -1.848361657291579},
      {x2, Weights::unit, -1.2485063760371511, 0.35689586789220944},
      {x2, Weights::one_plus_inv, -2.4969660173085264, 0.10499293392908858},
      {x2, Weights::inv, -1.2484596412713752, -0.25190293396312086},
  };
  for (const auto& c : cases) {
    const auto p = make_lacunary_params(3, c.w, 1.0, kBeta);
    CHECK(std::fabs(h_eval(c.x, p) - c.h) <= 1e-14);
    CHECK(std::fabs(H_eval(c.x, p) - c.H) <= 1e-14);
  }
}

TEST_CASE("conjugate pairs cancel the imaginary part") {
  std::mt19937_64 rng(31);
  for (Weights w : {Weights::unit, Weights::one_plus_inv, Weights::inv}) {
    const auto p = make_lacunary_params(3, w, 1.0, kBeta);
    for (int i = 0; i < 10000; ++i) {
      const Frac x = random_frac(rng);
      REQUIRE(std::fabs(h_complex(x, p).imag()) <= 1e-15);
      REQUIRE(std::fabs(H_complex(x, p).imag()) <= 1e-15);
    }
  }
}

TEST_CASE("coboundary identity h(x) = H(x + alpha) - H(x)") {
  std::mt19937_64 rng(32);
  for (int K = 1; K <= 3; ++K) {
    for (Weights w : {Weights::unit, Weights::one_plus_inv, Weights::inv}) {
      const auto p = make_lacunary_params(K, w, 1.0, kBeta);
      double worst = 0.0;
      for (int i = 0; i < 10000; ++i) {
        const Frac x = random_frac(rng);
        worst = std::max(worst, std::fabs(h_eval(x, p) - (H_eval(x + p.seq.alpha, p) - H_eval(x, p))));
      }
      CHECK(worst <= 1e-12);
    }
  }
}

TEST_CASE("H is even") {
  std::mt19937_64 rng(33);
  const auto p = make_lacunary_params(3, Weights::inv, 1.0, kBeta);
  for (int i = 0; i < 1000; ++i) {
    const Frac x = random_frac(rng);
    REQUIRE(std::fabs(H_eval(x, p) - H_eval(neg(x), p)) <= 1e-14);
  }
}

TEST_CASE("weight families are linear in the coefficients") {
  std::mt19937_64 rng(34);
  const auto unit = make_lacunary_params(3, Weights::unit, 1.0, kBeta);
  const auto opi = make_lacunary_params(3, Weights::one_plus_inv, 1.0, kBeta);
  const auto inv = make_lacunary_params(3, Weights::inv, 1.0, kBeta);
  for (int i = 0; i < 10000; ++i) {
    const Frac x = random_frac(rng);
    REQUIRE(std::fabs((h_eval(x, opi) - h_eval(x, unit)) - h_eval(x, inv)) <= 1e-12);
  }
}

TEST_CASE("phi") {
  std::mt19937_64 rng(35);
  const auto zero = make_lacunary_params(3, Weights::inv, 0.0, kBeta);
  const auto one = make_lacunary_params(3, Weights::inv, 1.0, kBeta);
  for (int i = 0; i < 1000; ++i) {
    const Frac x = random_frac(rng);
    REQUIRE(phi_eval(x, zero) == kBeta.to_real());
    REQUIRE(phi_increment(x, zero) == kBeta);
    const double v = phi_eval(x, one);
    REQUIRE(v >= 0.0);
    REQUIRE(v < 1.0);
    REQUIRE(dist(Frac::from_real(v), phi_increment(x, one)) <= 1e-15);
  }
}

TEST_CASE("J map") {
  std::mt19937_64 rng(36);
  const auto zero = make_lacunary_params(3, Weights::inv, 0.0, kBeta);
  const auto plus = make_lacunary_params(3, Weights::inv, 1.0, kBeta);
  const auto minus = make_lacunary_params(3, Weights::inv, -1.0, kBeta);
  for (int i = 0; i < 1000; ++i) {
    const TorusPoint p{random_frac(rng), random_frac(rng)};
    REQUIRE(j_map(p, zero) == p);
    const TorusPoint back = j_map(j_map(p, plus), minus);
    REQUIRE(back[0] == p[0]);
    REQUIRE(fiber_gap(back[1], p[1]) <= 1e-12);
  }
  CHECK_THROWS_AS(j_map(TorusPoint(3), plus), DomainError);
}

TEST_CASE("J conjugates the rotation pair to the cocycle skew") {
  const auto params = std::make_shared<const LacunaryParams>(make_lacunary_params(3, Weights::inv, 1.0, kBeta));
  const Frac alpha = params->seq.alpha;
  const FlowSpec rotation = Rotation{TorusPoint{alpha, kBeta}};
  const FlowSpec skew = CocycleSkew{alpha, params};
  std::mt19937_64 rng(37);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const TorusPoint p{random_frac(rng), random_frac(rng)};
    OrbitState r = make_flow(rotation, p);
    OrbitState s = make_flow(skew, j_map(p, *params));
    for (int n = 0; n < 200; ++n) {
      r.advance();
      s.advance();
      const TorusPoint lhs = j_map(r.point(), *params);
      REQUIRE(lhs[0] == s.point()[0]);
      worst = std::max(worst, fiber_gap(lhs[1], s.point()[1]));
    }
  }
  CHECK(worst <= 1e-10);
}
