#include "ergodlab/joinings.hpp"

#include <string>

namespace ergodlab {
namespace {

double signed_real(Frac f) {
  return (f.bits() >> 127) != 0 ? -(-f).to_real() : f.to_real();
}

bool checkpoint_hit(std::uint64_t n, std::uint64_t count) {
  return n == count / 4 || n == count / 2 || n + 1 == count;
}

}  // namespace

bool fiber_constraint_holds(const JoinSpec& spec, const TorusPoint& left, const TorusPoint& right) {
  const auto* fiber = std::get_if<FiberMode>(&spec.mode);
  if (fiber == nullptr) {
    return true;
  }
  for (std::size_t i = 0; i < fiber->left_factor.size(); ++i) {
    if (left[fiber->left_factor[i]] != right[fiber->right_factor[i]]) {
      return false;
    }
  }
  return true;
}

void validate(const JoinSpec& spec) {
  if (spec.left_start.dim() != spec.left.dim() || spec.right_start.dim() != spec.right.dim()) {
    throw DomainError("join starts do not match the flow dimensions");
  }
  if (const auto* fiber = std::get_if<FiberMode>(&spec.mode)) {
    if (fiber->left_factor.size() != fiber->right_factor.size() || fiber->left_factor.empty()) {
      throw DomainError("fiber mode needs equally many (and at least one) factor coordinates per side");
    }
    for (std::size_t i = 0; i < fiber->left_factor.size(); ++i) {
      if (fiber->left_factor[i] >= spec.left.dim() || fiber->right_factor[i] >= spec.right.dim()) {
        throw DomainError("fiber factor coordinate out of range");
      }
    }
    if (!fiber_constraint_holds(spec, spec.left_start, spec.right_start)) {
      throw DomainError("fiber-mode starts disagree on the common factor");
    }
  }
}

void join_orbit(const JoinSpec& spec, std::uint64_t count, const std::function<void(const PairOrbitPoint&)>& visit) {
  validate(spec);
  if (count < 1) {
    throw DomainError("join_orbit needs N >= 1");
  }
  OrbitState left = make_flow(spec.left, spec.left_start);
  OrbitState right = make_flow(spec.right, spec.right_start);
  const bool fiber = std::holds_alternative<FiberMode>(spec.mode);
  PairOrbitPoint pair;
  for (std::uint64_t n = 0; n < count; ++n) {
    if (n > 0) {
      left.advance();
      right.advance();
    }
    if (fiber && checkpoint_hit(n, count) && !fiber_constraint_holds(spec, left.point(), right.point())) {
      throw DomainError("fiber constraint violated at n = " + std::to_string(n));
    }
    pair.left = left.point();
    pair.right = right.point();
    pair.n = n;
    visit(pair);
  }
}

std::vector<PairOrbitPoint> collect_join_orbit(const JoinSpec& spec, std::uint64_t count) {
  std::vector<PairOrbitPoint> out;
  out.reserve(count);
  join_orbit(spec, count, [&](const PairOrbitPoint& p) { out.push_back(p); });
  return out;
}

std::vector<Frac> anzai_joining_factor(const JoinSpec& spec, std::uint64_t count) {
  const auto* left = spec.left.get_if<Anzai>();
  const auto* right = spec.right.get_if<Anzai>();
  if (left == nullptr || right == nullptr || left->alpha != right->alpha) {
    throw DomainError("anzai_joining_factor needs two Anzai flows with the same alpha");
  }
  validate(spec);
  if (spec.left_start[1] != spec.right_start[1]) {
    throw DomainError("Anzai joining starts must differ only in the first coordinate");
  }
  std::vector<Frac> out;
  out.reserve(count);
  join_orbit(spec, count, [&](const PairOrbitPoint& p) { out.push_back(p.right[1] - p.left[1]); });
  return out;
}

DiagnosticReport m_joining_demo(const LacunaryParams& params, Frac alpha, std::uint64_t count) {
  if (count < 1) {
    throw DomainError("m_joining_demo needs N >= 1");
  }
  const auto cocycle = std::make_shared<const LacunaryParams>(params);
  const FlowSpec s_flow = SFlow{alpha, cocycle};
  const Frac beta = params.beta;
  const JoinSpec spec{s_flow, s_flow, FullProduct{}, TorusPoint{Frac{}, Frac{}, Frac{}}, TorusPoint{beta, Frac{}, Frac{}}};

  const std::vector<std::vector<std::int64_t>> grid = {{0, 1, 0}, {0, 0, 1}, {0, 1, 1}, {0, 1, -1}};
  std::vector<Observable> observables;
  for (const auto& c : grid) observables.emplace_back(Character{c});
  std::vector<CompensatedSum> left_sums(grid.size());
  std::vector<CompensatedSum> right_sums(grid.size());

  const auto checkpoints = quarter_checkpoints(count);
  DiagnosticReport report;
  report.flow = "s_flow pair from (0,0,0) and (beta,0,0)";
  report.observable = "characters on (y,z)";
  report.n = count;

  std::uint64_t x_violations = 0;
  std::uint64_t z_violations = 0;
  std::vector<ReportRow> series;
  join_orbit(spec, count, [&](const PairOrbitPoint& p) {
    const auto n = static_cast<std::int64_t>(p.n);
    if (p.right[0] - p.left[0] != beta) ++x_violations;
    if (p.right[2] - p.left[2] != int_mul(beta, n)) ++z_violations;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      left_sums[k].add(observables[k](p.left));
      right_sums[k].add(observables[k](p.right));
    }
    const std::uint64_t seen = p.n + 1;
    for (std::uint64_t c : checkpoints) {
      if (c != seen) continue;
      series.push_back({"y_offset", seen, {signed_real(p.right[1] - p.left[1]), 0.0}, "y'_n - y_n at n = N-1"});
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto a = left_sums[k].mean(seen);
        const auto b = right_sums[k].mean(seen);
        const std::string tag = observables[k].describe();
        series.push_back({"birkhoff_left", seen, a, tag});
        series.push_back({"birkhoff_right", seen, b, tag});
        series.push_back({"deviation", seen, {std::abs(a - b), 0.0}, tag});
      }
    }
  });
  report.add("x_offset_identity", count, {x_violations == 0 ? 1.0 : 0.0, 0.0},
             "violations=" + std::to_string(x_violations));
  report.add("z_offset_identity", count, {z_violations == 0 ? 1.0 : 0.0, 0.0},
             "violations=" + std::to_string(z_violations));
  report.rows.insert(report.rows.end(), series.begin(), series.end());
  report.caveats.push_back(
      "lacunary series truncated at K = " + std::to_string(params.seq.K) +
      ": the truncated cocycle is a coboundary with a smooth transfer function, so this joining is conjugate to a "
      "rotation and its averages converge; failure of strict ergodicity is not numerically demonstrable here");
  return report;
}

double minimality_probe(const FlowSpec& spec, const TorusPoint& start, std::uint64_t count, std::uint64_t cells) {
  BoxCounter counter(spec.dim(), cells);
  for (const auto& p : orbit(spec, start, count)) counter.add(p);
  return static_cast<double>(counter.visited()) / static_cast<double>(counter.cells());
}

double minimality_probe(const JoinSpec& spec, std::uint64_t count, std::uint64_t cells) {
  BoxCounter counter(spec.left.dim() + spec.right.dim(), cells);
  join_orbit(spec, count, [&](const PairOrbitPoint& p) {
    TorusPoint joint = p.left;
    joint.append(p.right.coords());
    counter.add(joint);
  });
  return static_cast<double>(counter.visited()) / static_cast<double>(counter.cells());
}

}  // namespace ergodlab
