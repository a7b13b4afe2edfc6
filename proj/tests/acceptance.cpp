// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "ergodlab/diagnostics.hpp"
#include "ergodlab/joinings.hpp"
#include "ergodlab/lacunary.hpp"
#include "ergodlab/nilflow.hpp"
#include "ergodlab/parallel.hpp"

using namespace ergodlab;

namespace {

const Frac kBeta = Frac::from_decimal("0.41421356237309504880168872420969807856967187537694");
const Frac kGolden = Frac::from_decimal("0.61803398874989484820458683436563811772030917980576");
const Frac kGamma = Frac::from_decimal("0.71828182845904523536028747135266249775724709369996");

// Pinned at the first verified run, which measured 0.00434 at N = 1e6.
constexpr double kDeviationRegressionBound = 0.005;

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

Frac random_frac(std::mt19937_64& rng) {
  const u128 hi = rng();
  return Frac::from_bits((hi << 64) | rng());
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs <= limit_seconds;
  const bool pass = out.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %2d %s: %s; %.3f s (limit %g s)%s\n", pass ? "PASS" : "FAIL", id, title, out.detail.c_str(), secs,
              limit_seconds, in_time ? "" : " TIME LIMIT EXCEEDED");
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome closed_form_equality() {
  std::mt19937_64 rng(1001);
  struct Case {
    int degree;
    Frac beta;
  };
  std::vector<Case> cases;
  for (int degree : {1, 2, 3, 5}) {
    for (int i = 0; i < 5; ++i) cases.push_back({degree, random_frac(rng)});
  }
  const std::uint64_t count = 1'000'001;  // n = 0 .. 10^6
  std::vector<std::uint64_t> mismatches(cases.size(), 0);
  parallel_for(cases.size(), workers(), [&](std::size_t c) {
    std::int64_t n = 0;
    for (const auto& p : orbit(WeylSystem{cases[c].beta, cases[c].degree},
                               TorusPoint(static_cast<std::size_t>(cases[c].degree)), count)) {
      if (p != weyl_closed_form(cases[c].beta, cases[c].degree, n)) ++mismatches[c];
      ++n;
    }
  });
  std::uint64_t total = 0;
  for (auto m : mismatches) total += m;
  return {total == 0, std::to_string(cases.size()) + " orbits x 1e6+1 points, mismatches " + std::to_string(total)};
}

Outcome affine_map_agreement() {
  std::mt19937_64 rng(1002);
  std::uint64_t bad = 0;
  for (int i = 0; i < 10'000; ++i) {
    const Frac beta = random_frac(rng);
    const TorusPoint p{random_frac(rng), random_frac(rng), random_frac(rng)};
    const TorusPoint expected{p[0] + beta, p[1] + int_mul(p[0], 2) + beta, p[2] + int_mul(p[0], 3) + int_mul(p[1], 3) + beta};
    if (step(make_flow(WeylSystem{beta, 3}, p)).point() != expected) ++bad;
  }
  return {bad == 0, "1e4 random points, mismatches " + std::to_string(bad)};
}

Outcome coboundary_identity() {
  std::mt19937_64 rng(1003);
  std::vector<Frac> xs(10'000);
  for (auto& x : xs) x = random_frac(rng);
  double worst = 0.0;
  for (int K = 1; K <= 3; ++K) {
    for (Weights w : {Weights::unit, Weights::one_plus_inv, Weights::inv}) {
      const auto p = make_lacunary_params(K, w, 1.0, kBeta);
      std::vector<double> local(xs.size());
      parallel_for(xs.size(), workers(), [&](std::size_t i) {
        local[i] = std::fabs(h_eval(xs[i], p) - (H_eval(xs[i] + p.seq.alpha, p) - H_eval(xs[i], p)));
      });
      worst = std::max(worst, *std::max_element(local.begin(), local.end()));
    }
  }
  return {worst <= 1e-12, "9 (K, weights) cases x 1e4 points, max residual " + fmt(worst) + " <= 1e-12"};
}

Outcome small_divisor_inequality() {
  const auto seq = furstenberg_sequence(3);
  const bool values = small_divisor_gap(seq, 1) == Rational(131073, 1048576) && small_divisor_gap(seq, 2) == Rational(1, 131072);
  const bool bounds = small_divisor_gap(seq, 1) < Rational(1, 4) && small_divisor_gap(seq, 2) < Rational(1, 65536) &&
                      small_divisor_bound_holds(seq, 1) && small_divisor_bound_holds(seq, 2);
  return {values && bounds, "131073/1048576 < 1/4 and 1/131072 < 1/65536, exact"};
}

Outcome conjugacy() {
  const auto params = std::make_shared<const LacunaryParams>(make_lacunary_params(3, Weights::inv, 1.0, kBeta));
  const Frac alpha = params->seq.alpha;
  const FlowSpec rotation = Rotation{TorusPoint{alpha, kBeta}};
  const FlowSpec skew = CocycleSkew{alpha, params};
  std::mt19937_64 rng(1005);
  std::vector<TorusPoint> starts;
  for (int i = 0; i < 1000; ++i) starts.push_back(TorusPoint{random_frac(rng), random_frac(rng)});
  std::vector<double> worst(starts.size(), 0.0);
  std::vector<std::uint64_t> base_bad(starts.size(), 0);
  parallel_for(starts.size(), workers(), [&](std::size_t i) {
    OrbitState r = make_flow(rotation, starts[i]);
    OrbitState s = make_flow(skew, j_map(starts[i], *params));
    for (int n = 0; n < 1000; ++n) {
      r.advance();
      s.advance();
      const TorusPoint lhs = j_map(r.point(), *params);
      if (lhs[0] != s.point()[0]) ++base_bad[i];
      worst[i] = std::max(worst[i], dist(lhs[1], s.point()[1]));
    }
  });
  const double w = *std::max_element(worst.begin(), worst.end());
  std::uint64_t bad = 0;
  for (auto b : base_bad) bad += b;
  return {w <= 1e-10 && bad == 0,
          "1e3 points x 1e3 steps, fiber residual " + fmt(w) + " <= 1e-10, base mismatches " + std::to_string(bad)};
}

Outcome theta_function() {
  NilParams np;
  np.alpha = kGolden;
  np.beta = kBeta;
  np.gamma = kGamma;
  const double tol = np.theta_tol;

  double oracle = 0.0;
  for (int m = 20; m >= 1; --m) oracle += 2.0 * std::exp(-std::numbers::pi * m * m);
  oracle += 1.0;
  const double origin = std::abs(theta_eval({}, tol) - oracle);

  std::mt19937_64 rng(1006);
  std::vector<HeisPoint> pts(1000);
  for (auto& g : pts) g = {random_frac(rng).to_real(), random_frac(rng).to_real(), random_frac(rng).to_real()};
  const HeisPoint generators[] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  double autom = 0.0;
  for (const auto& g : pts) {
    const auto v = theta_eval(g, tol);
    for (const auto& gamma : generators) autom = std::max(autom, std::abs(theta_eval(heis_mul(g, gamma), tol) - v));
  }

  double ratio = 0.0;
  HeisPoint g{};
  for (std::int64_t n = 0; n <= 10'000; ++n) {
    const double diff = std::abs(nil_function(n, np) - theta_eval(g, tol));
    ratio = std::max(ratio, diff / (10 * tol + 1e-8 * static_cast<double>(n)));
    g = nil_step(g, np);
  }
  const bool pass = origin <= 1e-10 && autom <= 2 * tol && ratio <= 1.0;
  return {pass, "F(0,0,0) error " + fmt(origin) + " <= 1e-10, automorphy " + fmt(autom) + " <= " + fmt(2 * tol) +
                    ", two-path worst/budget " + fmt(ratio) + " <= 1"};
}

Outcome anzai_joining() {
  const JoinSpec spec{Anzai{kGolden}, Anzai{kGolden}, FullProduct{}, TorusPoint(2), TorusPoint{kBeta, Frac{}}};
  const auto diffs = anzai_joining_factor(spec, 1'000'001);
  std::uint64_t bad = 0;
  for (std::size_t n = 0; n < diffs.size(); ++n) {
    if (diffs[n] != int_mul(kBeta, static_cast<std::int64_t>(n))) ++bad;
  }
  const auto params = make_lacunary_params(3, Weights::inv, 1.0, kBeta);
  const auto m = m_joining_demo(params, params.seq.alpha, 100'000);
  const bool identities = m.rows.at(0).statistic == "x_offset_identity" && m.rows.at(0).value.real() == 1.0 &&
                          m.rows.at(1).statistic == "z_offset_identity" && m.rows.at(1).value.real() == 1.0;
  return {bad == 0 && identities, "n <= 1e6 mismatches " + std::to_string(bad) + ", m-joining offset identities " +
                                      (identities ? "exact" : "violated") + " over 1e5 steps"};
}

Outcome equidistribution() {
  double worst_excess = -1.0;
  for (std::uint64_t n : {1000u, 10'000u, 100'000u, 1'000'000u}) {
    const double avg = std::abs(birkhoff_average(Rotation{TorusPoint{kGolden}}, TorusPoint(1), Character{{1}}, n));
    const double oracle = 1.0 / (static_cast<double>(n) * std::fabs(std::sin(std::numbers::pi * kGolden.to_real())));
    worst_excess = std::max(worst_excess, avg - (oracle + static_cast<double>(n) * 1e-15));
  }
  const FlowSpec weyl = WeylSystem{kBeta, 3};
  const Observable chi = Character{{1, 0, 0}};
  const double on = eigen_correlation(weyl, TorusPoint(3), chi, kBeta, 100'000);
  const double off = eigen_correlation(weyl, TorusPoint(3), chi, kBeta + Frac::from_rational(1, 100), 100'000);
  const bool pass = worst_excess <= 0.0 && on >= 1.0 - 1e-6 && off <= 0.05;
  return {pass, "rotation average within geometric bound (worst excess " + fmt(worst_excess) +
                    "), correlation at beta " + fmt(on) + " >= 1-1e-6, at beta+1/100 " + fmt(off) + " <= 0.05"};
}

Outcome deviation_regression() {
  const auto starts = default_deviation_starts(3);
  const auto dev = uniform_deviation(WeylSystem{kBeta, 3}, starts, Character{{0, 0, 1}}, 1'000'000, workers());
  const auto& c = dev.checkpoints;
  const bool decreasing = c.size() == 3 && c[0].deviation > c[1].deviation && c[1].deviation > c[2].deviation;
  const bool bounded = dev.value() <= kDeviationRegressionBound;
  return {decreasing && bounded, "deviation at N/4, N/2, N = " + fmt(c[0].deviation) + ", " + fmt(c[1].deviation) +
                                     ", " + fmt(c[2].deviation) + "; pinned bound " + fmt(kDeviationRegressionBound)};
}

#ifdef ERGODLAB_CLI_PATH
namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / ("ergodlab_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string weyl = R"({"variant": "weyl", "params": {"beta": "0.41421356237309504880168872420969807856967187537694", "L": 3}})";
  struct Run {
    std::string name;
    std::string args;
    std::string config;
  };
  const std::vector<Run> runs = {
      {"deviation", "diag deviation --n 20000",
       R"({"flow": )" + weyl + R"(, "observable": {"kind": "character", "coeffs": [0, 0, 1]}})"},
      {"birkhoff", "diag birkhoff --n 5000",
       R"({"flow": )" + weyl + R"(, "observable": {"kind": "character", "coeffs": [1, 1, 0]},
          "starts": [["0", "0", "0"], ["0.5", "0.25", "0.125"], [{"p": 1, "q": 3}, "0.7", "0.9"]],
          "checkpoints": ["0.1", "0.5", "1"]})"},
      {"eigenscan", "diag eigenscan --n 20000",
       R"({"flow": )" + weyl + R"(, "observable": {"kind": "character", "coeffs": [1, 0, 0]},
          "thetas": ["0.38", "0.39", "0.4", "0.41421356237309504880168872420969807856967187537694", "0.42", "0.43"]})"},
      {"discrepancy", "diag discrepancy --n 20000", R"({"flow": )" + weyl + R"(, "grid": 8})"},
      {"orbit", "orbit --n 200 --format json", R"({"flow": )" + weyl + R"(})"},
      {"coboundary", "demo coboundary --n 2000", "{}"},
      {"conjugacy", "demo conjugacy --n 50", R"({"points": 64})"},
      {"theta", "demo theta --n 2000", R"({"points": 200})"},
  };
  std::string mismatched;
  int compared = 0;
  for (const auto& r : runs) {
    const fs::path cfg = dir / (r.name + ".json");
    std::ofstream(cfg) << r.config;
    std::string first;
    for (int threads : {1, 8, 1, 8}) {
      const fs::path out = dir / (r.name + "_" + std::to_string(threads) + ".out");
      const std::string cmd = std::string(ERGODLAB_CLI_PATH) + " " + r.args + " --config " + cfg.string() +
                              " --threads " + std::to_string(threads) + " --out " + out.string() + " > /dev/null";
      if (std::system(cmd.c_str()) != 0) {
        return {false, "command failed: " + cmd};
      }
      const std::string text = slurp(out);
      if (first.empty()) {
        first = text;
      } else if (text != first) {
        mismatched += " " + r.name;
      }
      ++compared;
    }
  }
  fs::remove_all(dir);
  return {mismatched.empty() && compared == 4 * static_cast<int>(runs.size()),
          std::to_string(runs.size()) + " configs x runs at --threads 1, 8, 1, 8; byte mismatches:" +
              (mismatched.empty() ? std::string(" none") : mismatched)};
}
#else
Outcome cli_determinism() { return {false, "CLI not built (ERGODLAB_BUILD_TOOLS=OFF)"}; }
#endif

}  // namespace

int main() {
  std::printf("acceptance suite, %u worker threads\n", workers());
  run(1, "closed-form orbit equality", 10, closed_form_equality);
  run(2, "affine-map agreement", 1, affine_map_agreement);
  run(3, "coboundary identity", 5, coboundary_identity);
  run(4, "small-divisor inequality", 1e-3, small_divisor_inequality);
  run(5, "conjugacy", 30, conjugacy);
  run(6, "theta function", 60, theta_function);
  run(7, "Anzai joining factor", 10, anzai_joining);
  run(8, "equidistribution probes", 30, equidistribution);
  run(9, "unique-ergodicity regression", 120, deviation_regression);
  run(10, "CLI determinism", 600, cli_determinism);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
