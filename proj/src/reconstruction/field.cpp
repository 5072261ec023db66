#include "muscl/field.hpp"

#include <algorithm>

namespace muscl {

CellField CellField::head(int n) const {
  CellField out(n, components_);
  std::copy(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(n) * components_, out.data_.begin());
  return out;
}

LinearField::LinearField(const Mesh& mesh, const CellField& cell_values)
    : values_(cell_values.head(mesh.num_elements())),
      gradients_(static_cast<std::size_t>(mesh.num_elements()) * cell_values.num_components(), Point::Zero()) {
  centroids_.reserve(mesh.num_elements());
  for (int e = 0; e < mesh.num_elements(); ++e) centroids_.push_back(mesh.centroid(e));
}

State LinearField::evaluate(int e, const Point& x) const {
  State s(num_components());
  for (int k = 0; k < num_components(); ++k) s[k] = evaluate(e, k, x);
  return s;
}

}  // namespace muscl
