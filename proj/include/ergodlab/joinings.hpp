#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "ergodlab/diagnostics.hpp"
#include "ergodlab/flows.hpp"

namespace ergodlab {

struct FullProduct {};

/// Pairs whose selected factor coordinates agree: X x_Y Z as a constrained product.
struct FiberMode {
  std::vector<std::size_t> left_factor;
  std::vector<std::size_t> right_factor;
};

using JoinMode = std::variant<FullProduct, FiberMode>;

struct JoinSpec {
  FlowSpec left;
  FlowSpec right;
  JoinMode mode;
  TorusPoint left_start;
  TorusPoint right_start;
};

struct PairOrbitPoint {
  TorusPoint left;
  TorusPoint right;
  std::uint64_t n = 0;
};

/// Throws DomainError on dimension mismatch or when fiber-mode starts disagree on the factor.
void validate(const JoinSpec& spec);

/// True when every selected factor coordinate pair is bit-equal (always true in full-product mode).
bool fiber_constraint_holds(const JoinSpec& spec, const TorusPoint& left, const TorusPoint& right);

/**
 * Synchronized orbit of both flows for n = 0 .. count-1. In fiber mode the
 * factor constraint is re-checked at n = count/4, count/2 and count-1 and a
 * violation throws DomainError.
 */
void join_orbit(const JoinSpec& spec, std::uint64_t count, const std::function<void(const PairOrbitPoint&)>& visit);

std::vector<PairOrbitPoint> collect_join_orbit(const JoinSpec& spec, std::uint64_t count);

/// z'_n - z_n for a pair of Anzai flows started at (x, z) and (x + beta, z).
std::vector<Frac> anzai_joining_factor(const JoinSpec& spec, std::uint64_t count);

/**
 * Runs the S-flow pair from (0,0,0) and (beta,0,0) (beta taken from the
 * cocycle parameters) and reports the x- and z-offset identities, the
 * y-offset series at checkpoints and Birkhoff averages of a small grid of
 * characters on each component.
 */
DiagnosticReport m_joining_demo(const LacunaryParams& params, Frac alpha, std::uint64_t count);

/// Fraction of the cells^dim grid cells visited by the first `count` orbit points.
double minimality_probe(const FlowSpec& spec, const TorusPoint& start, std::uint64_t count, std::uint64_t cells);
double minimality_probe(const JoinSpec& spec, std::uint64_t count, std::uint64_t cells);

}  // namespace ergodlab
