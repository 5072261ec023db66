#pragma once

#include <Eigen/Core>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace muscl {

/// Points and vectors are stored in three components; coordinates beyond the
/// mesh dimension are kept at zero so dot products work for any d.
using Point = Eigen::Vector3d;

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ElementKind { segment, triangle, quadrilateral, polygon, tetrahedron, hexahedron };

std::string to_string(ElementKind kind);

/// Vertex lists follow Gmsh ordering. Polygons are counter-clockwise and may
/// contain hanging nodes lying on straight edges.
struct Element {
  ElementKind kind;
  std::vector<int> vertices;
};

struct Face {
  double measure = 0.0;
  Point centroid = Point::Zero();
  /// Unit normal pointing out of `inner`.
  Point normal = Point::Zero();
  int inner = -1;
  /// -1 on the domain boundary.
  int outer = -1;
  int boundary_tag = 0;
  std::vector<int> vertices;

  bool on_boundary() const { return outer < 0; }
};

enum class BoundaryKind { dirichlet, periodic, slip_wall };

BoundaryKind boundary_kind_from_string(const std::string& name);
std::string to_string(BoundaryKind kind);

/// Exterior ghost cell attached to one boundary face.
struct Ghost {
  int face = -1;
  int element = -1;
  int tag = 0;
  BoundaryKind kind = BoundaryKind::dirichlet;
  Point centroid = Point::Zero();
  /// Periodic only: wrap-around partner element, its matching face and the
  /// translation taking the partner face onto this one.
  int partner = -1;
  int partner_face = -1;
  Point shift = Point::Zero();
};

/// One entry of the neighbor set of an element.
///
/// `slot` indexes the extended value array (elements first, then ghosts).
/// Periodic ghosts alias their partner element, so their slot is the partner's
/// element index. `trace_face` is the face on which the neighbor's
/// reconstruction is evaluated; it is -1 for ghosts carrying constant values.
struct Neighbor {
  int face = -1;
  int slot = -1;
  int trace_face = -1;
  /// +1 if the face normal points out of this element.
  double orientation = 1.0;
  Point centroid = Point::Zero();
  int ghost = -1;

  bool is_ghost() const { return ghost >= 0; }
};

enum class GhostPlacement { reflect, face_centroid };

using FaceTags = std::map<std::vector<int>, int>;

/// Immutable polytopal mesh with derived faces, adjacency and ghost cells.
class Mesh {
 public:
  /// Derives geometry, faces and adjacency from raw connectivity. Boundary
  /// faces are tagged through `tags`, keyed by the sorted face vertex list;
  /// untagged boundary faces get tag 0.
  static Mesh from_elements(int dim, std::vector<Point> vertices, std::vector<Element> elements,
                            const FaceTags& tags = {});

  int dim() const { return dim_; }
  int num_elements() const { return static_cast<int>(elements_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_ghosts() const { return static_cast<int>(ghosts_.size()); }
  /// Size of the extended value array: elements followed by ghosts.
  int num_slots() const { return num_elements() + num_ghosts(); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Element>& elements() const { return elements_; }
  const Element& element(int e) const { return elements_[e]; }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int f) const { return faces_[f]; }
  const std::vector<Ghost>& ghosts() const { return ghosts_; }
  const Ghost& ghost(int g) const { return ghosts_[g]; }

  double measure(int e) const { return measures_[e]; }
  const Point& centroid(int e) const { return centroids_[e]; }
  double diameter(int e) const { return diameters_[e]; }
  /// Maximum element diameter.
  double width() const;
  double total_measure() const;

  /// Faces of element e, in construction order.
  const std::vector<int>& element_faces(int e) const { return element_faces_[e]; }
  /// Neighbor set of element e; includes ghosts after attach_ghosts.
  const std::vector<Neighbor>& neighbors(int e) const { return neighbors_[e]; }

  /// Outward unit normal of face f as seen from element e.
  Point outward_normal(int e, int f) const;

  bool has_ghosts() const { return ghosts_attached_; }

  std::vector<int> boundary_tags() const;

  friend Mesh attach_ghosts(const Mesh&, const std::map<int, BoundaryKind>&, GhostPlacement);

 private:
  int dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Element> elements_;
  std::vector<Face> faces_;
  std::vector<double> measures_;
  std::vector<Point> centroids_;
  std::vector<double> diameters_;
  std::vector<std::vector<int>> element_faces_;
  std::vector<std::vector<Neighbor>> neighbors_;
  std::vector<Ghost> ghosts_;
  bool ghosts_attached_ = false;
};

/// Tensor-product grid on [lower, upper]; counts.size() is the dimension.
/// Box sides are tagged 2i+1 (lower) and 2i+2 (upper) for axis i.
Mesh build_cartesian(const std::vector<double>& lower, const std::vector<double>& upper,
                     const std::vector<int>& counts);

/// Red refinement of triangles, bisection of quadrilaterals and segments.
Mesh uniform_refine(const Mesh& mesh);

/// Splits every quadrilateral whose grid color is odd into four and keeps the
/// remaining cells as polygons with hanging nodes. The input must be a
/// conforming quadrilateral mesh whose dual graph is bipartite.
Mesh checkerboard_refine(const Mesh& mesh);

/// Attaches one ghost per boundary face. Every boundary tag must be covered.
Mesh attach_ghosts(const Mesh& mesh, const std::map<int, BoundaryKind>& spec,
                   GhostPlacement placement = GhostPlacement::reflect);

/// Same as attach_ghosts with one kind on every boundary tag.
Mesh attach_ghosts_uniform(const Mesh& mesh, BoundaryKind kind,
                           GhostPlacement placement = GhostPlacement::reflect);

/// Vertices lying in the interior of a straight edge of some polygon.
int count_hanging_nodes(const Mesh& mesh);

/// Decomposes element e into simplices (as vertex coordinate lists). Fans from
/// the vertex average; used for centroids and quadrature.
std::vector<std::vector<Point>> simplex_decomposition(const Mesh& mesh, int e);

}  // namespace muscl
