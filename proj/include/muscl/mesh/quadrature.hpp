#pragma once

#include "muscl/mesh/mesh.hpp"

#include <vector>

namespace muscl {

struct QuadraturePoint {
  Point x = Point::Zero();
  double weight = 0.0;
};

/// Measure of a simplex given by its d + 1 vertices (d = 1, 2, 3).
double simplex_measure(const std::vector<Point>& simplex);

/// Degree-2 rule on every simplex of the decomposition of element e.
/// Weights sum to the element measure.
std::vector<QuadraturePoint> element_quadrature(const Mesh& mesh, int e);

/// Centroids of the sub-simplices after `levels` rounds of midpoint
/// subdivision (2^d children per round), weighted by their measure. Meant for
/// discontinuous integrands; exact for linear ones.
std::vector<QuadraturePoint> element_subsamples(const Mesh& mesh, int e, int levels = 2);

}  // namespace muscl
