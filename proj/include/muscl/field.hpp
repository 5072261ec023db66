#pragma once

#include "muscl/mesh/mesh.hpp"
#include "muscl/physics/state.hpp"

#include <span>
#include <vector>

namespace muscl {

/// Piecewise-constant field: one state of `components` values per cell.
/// Extended fields hold mesh.num_slots() cells (elements, then ghosts).
class CellField {
 public:
  CellField() = default;
  CellField(int cells, int components, double fill = 0.0)
      : cells_(cells), components_(components), data_(static_cast<std::size_t>(cells) * components, fill) {}

  int num_cells() const { return cells_; }
  int num_components() const { return components_; }

  double& operator()(int cell, int k) { return data_[index(cell, k)]; }
  double operator()(int cell, int k) const { return data_[index(cell, k)]; }

  State state(int cell) const {
    return Eigen::Map<const State>(data_.data() + index(cell, 0), components_);
  }
  void set_state(int cell, const State& s) {
    for (int k = 0; k < components_; ++k) data_[index(cell, k)] = s[k];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  /// Copy of the first n cells.
  CellField head(int n) const;

 private:
  std::size_t index(int cell, int k) const { return static_cast<std::size_t>(cell) * components_ + k; }

  int cells_ = 0;
  int components_ = 0;
  std::vector<double> data_;
};

/// Piecewise-linear field: per element and component the centroid value and a
/// gradient; w(x) = value + gradient . (x - x_E).
class LinearField {
 public:
  LinearField() = default;
  LinearField(const Mesh& mesh, const CellField& cell_values);

  int num_cells() const { return values_.num_cells(); }
  int num_components() const { return values_.num_components(); }

  double value(int e, int k) const { return values_(e, k); }
  const Point& gradient(int e, int k) const { return gradients_[index(e, k)]; }
  Point& gradient(int e, int k) { return gradients_[index(e, k)]; }

  double evaluate(int e, int k, const Point& x) const {
    return values_(e, k) + gradients_[index(e, k)].dot(x - centroids_[e]);
  }
  State evaluate(int e, const Point& x) const;

  const CellField& values() const { return values_; }

 private:
  std::size_t index(int e, int k) const { return static_cast<std::size_t>(e) * values_.num_components() + k; }

  CellField values_;
  std::vector<Point> centroids_;
  std::vector<Point> gradients_;
};

}  // namespace muscl
