#pragma once

#include <cstdint>
#include <iterator>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ergodlab/frac.hpp"
#include "ergodlab/lacunary.hpp"
#include "ergodlab/nilflow.hpp"
#include "ergodlab/torus.hpp"

namespace ergodlab {

inline constexpr int kMaxWeylDegree = 8;

using CocycleRef = std::shared_ptr<const LacunaryParams>;

/// x -> x + delta on T^d.
struct Rotation {
  TorusPoint delta;
};

/// Orbit-closure model of n -> e^{2 pi i beta (n + ... + n^L)} on T^L:
/// coordinate j maps to x_j + sum_{0<i<j} C(j,i) x_i + beta.
struct WeylSystem {
  Frac beta;
  int degree = 1;
};

/// (x, z) -> (x + alpha, z + x).
struct Anzai {
  Frac alpha;
};

/// (x, y) -> (x + alpha, y + phi(x)) with phi = t h + beta.
struct CocycleSkew {
  Frac alpha;
  CocycleRef cocycle;
};

/// (x, y, z) -> (x + alpha, y + phi(x), z + x).
struct SFlow {
  Frac alpha;
  CocycleRef cocycle;
};

/// Left translation on the Heisenberg nilmanifold; points are (x, y, z) cosets.
struct Heisenberg {
  NilParams params;
};

class FlowSpec;

struct Product {
  std::vector<FlowSpec> parts;
};

class FlowSpec {
 public:
  using Variant = std::variant<Rotation, WeylSystem, Anzai, CocycleSkew, SFlow, Heisenberg, Product>;

  template <typename T>
  FlowSpec(T flow) : v_(std::move(flow)) {}  // NOLINT(google-explicit-constructor)

  const Variant& variant() const { return v_; }
  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  std::size_t dim() const;
  /// Variant tag as used in the JSON form.
  std::string name() const;

 private:
  Variant v_;
};

/**
 * Current point of an orbit plus whatever auxiliary state its flow needs
 * (forward-difference tables for Weyl components, double-precision group
 * elements for Heisenberg components). Copyable value; owned by one caller.
 */
class OrbitState {
 public:
  const TorusPoint& point() const { return point_; }
  std::int64_t index() const { return index_; }
  const FlowSpec& spec() const { return *spec_; }

  /// Heisenberg group elements for each Heisenberg component, in order.
  const std::vector<HeisPoint>& heis() const { return heis_; }

  /// Apply the flow map once in place.
  void advance();

 private:
  friend OrbitState make_flow(const FlowSpec& spec, const TorusPoint& start);

  struct WeylSlot {
    std::size_t offset;
    int degree;
    std::size_t table_offset;
  };
  struct Slot {
    const FlowSpec* flow;
    std::size_t offset;
    std::size_t aux;  // index into weyl_ or heis_
  };

  std::shared_ptr<const FlowSpec> spec_;
  TorusPoint point_;
  std::int64_t index_ = 0;
  std::vector<Slot> slots_;
  std::vector<WeylSlot> weyl_;
  std::vector<Frac> table_;
  std::vector<HeisPoint> heis_;
};

/// State at n = 0. Throws DomainError on dimension mismatch or invalid parameters.
OrbitState make_flow(const FlowSpec& spec, const TorusPoint& start);

/// Functional form of OrbitState::advance.
OrbitState step(OrbitState state);

/// Lazy orbit n = 0 .. count-1 with constant memory.
class OrbitRange {
 public:
  OrbitRange(const FlowSpec& spec, const TorusPoint& start, std::uint64_t count)
      : state_(make_flow(spec, start)), count_(count) {}

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = TorusPoint;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(OrbitState* state, std::uint64_t remaining) : state_(state), remaining_(remaining) {}

    const TorusPoint& operator*() const { return state_->point(); }
    const TorusPoint* operator->() const { return &state_->point(); }
    iterator& operator++() {
      if (--remaining_ > 0) {
        state_->advance();
      }
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.remaining_ == 0; }

   private:
    OrbitState* state_ = nullptr;
    std::uint64_t remaining_ = 0;
  };

  iterator begin() { return {&state_, count_}; }
  std::default_sentinel_t end() const { return {}; }

 private:
  OrbitState state_;
  std::uint64_t count_;
};

inline OrbitRange orbit(const FlowSpec& spec, const TorusPoint& start, std::uint64_t count) {
  if (count < 1) {
    throw DomainError("orbit length must be >= 1");
  }
  return {spec, start, count};
}

/// Materialized orbit, for small N.
std::vector<TorusPoint> collect_orbit(const FlowSpec& spec, const TorusPoint& start, std::uint64_t count);

/// (n beta, n^2 beta, ..., n^L beta), exact for every 64-bit n.
TorusPoint weyl_closed_form(Frac beta, int degree, std::int64_t n);

/// Orbit of an arbitrary start: x_j(n) = n^j beta + sum_{i=1..j} C(j,i) n^{j-i} p_i.
TorusPoint weyl_closed_form_from(Frac beta, const TorusPoint& start, std::int64_t n);

/// The explicit affine Weyl map applied once.
TorusPoint weyl_affine_map(Frac beta, const TorusPoint& p);

/// (n alpha, n(n-1)/2 alpha), the Anzai orbit of (0, 0).
TorusPoint anzai_closed_form(Frac alpha, std::int64_t n);

/// Number of distinct points among the first count orbit points.
std::uint64_t observed_orbit_cardinality(const FlowSpec& spec, const TorusPoint& start, std::uint64_t count);

}  // namespace ergodlab
