#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "ergodlab/frac.hpp"

namespace ergodlab {

/// A point of the torus T^d; equality is componentwise bit equality.
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(std::size_t dim) : coords_(dim) {}
  explicit TorusPoint(std::vector<Frac> coords) : coords_(std::move(coords)) {}
  TorusPoint(std::initializer_list<Frac> coords) : coords_(coords) {}

  std::size_t dim() const { return coords_.size(); }
  Frac& operator[](std::size_t i) { return coords_[i]; }
  Frac operator[](std::size_t i) const { return coords_[i]; }

  std::span<const Frac> coords() const { return coords_; }
  std::span<Frac> coords() { return coords_; }

  void append(std::span<const Frac> more) { coords_.insert(coords_.end(), more.begin(), more.end()); }

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

 private:
  std::vector<Frac> coords_;
};

}  // namespace ergodlab
