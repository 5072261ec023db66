#include "muscl/mesh/mesh.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <tuple>

namespace muscl {

std::string to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::segment: return "segment";
    case ElementKind::triangle: return "triangle";
    case ElementKind::quadrilateral: return "quadrilateral";
    case ElementKind::polygon: return "polygon";
    case ElementKind::tetrahedron: return "tetrahedron";
    case ElementKind::hexahedron: return "hexahedron";
  }
  return "unknown";
}

BoundaryKind boundary_kind_from_string(const std::string& name) {
  if (name == "dirichlet") return BoundaryKind::dirichlet;
  if (name == "periodic") return BoundaryKind::periodic;
  if (name == "slip_wall" || name == "slip-wall" || name == "slip") return BoundaryKind::slip_wall;
  throw MeshError("unknown boundary kind '" + name + "'");
}

std::string to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::dirichlet: return "dirichlet";
    case BoundaryKind::periodic: return "periodic";
    case BoundaryKind::slip_wall: return "slip_wall";
  }
  return "unknown";
}

namespace {

int element_dim(ElementKind kind) {
  switch (kind) {
    case ElementKind::segment: return 1;
    case ElementKind::triangle:
    case ElementKind::quadrilateral:
    case ElementKind::polygon: return 2;
    case ElementKind::tetrahedron:
    case ElementKind::hexahedron: return 3;
  }
  return 0;
}

std::size_t expected_vertex_count(ElementKind kind) {
  switch (kind) {
    case ElementKind::segment: return 2;
    case ElementKind::triangle: return 3;
    case ElementKind::quadrilateral: return 4;
    case ElementKind::polygon: return 0;
    case ElementKind::tetrahedron: return 4;
    case ElementKind::hexahedron: return 8;
  }
  return 0;
}

/// Local faces as cyclic vertex lists.
std::vector<std::vector<int>> local_faces(const Element& el) {
  const auto& v = el.vertices;
  switch (el.kind) {
    case ElementKind::segment: return {{v[0]}, {v[1]}};
    case ElementKind::triangle:
    case ElementKind::quadrilateral:
    case ElementKind::polygon: {
      std::vector<std::vector<int>> edges;
      for (std::size_t i = 0; i < v.size(); ++i) edges.push_back({v[i], v[(i + 1) % v.size()]});
      return edges;
    }
    case ElementKind::tetrahedron:
      return {{v[0], v[1], v[2]}, {v[0], v[1], v[3]}, {v[0], v[2], v[3]}, {v[1], v[2], v[3]}};
    case ElementKind::hexahedron:
      return {{v[0], v[3], v[2], v[1]}, {v[4], v[5], v[6], v[7]}, {v[0], v[1], v[5], v[4]},
              {v[1], v[2], v[6], v[5]}, {v[2], v[3], v[7], v[6]}, {v[3], v[0], v[4], v[7]}};
  }
  return {};
}

std::vector<int> sorted_key(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  return ids;
}

Point average(const std::vector<Point>& pts) {
  Point c = Point::Zero();
  for (const auto& p : pts) c += p;
  return c / static_cast<double>(pts.size());
}

double simplex_measure(const std::vector<Point>& s) {
  switch (s.size()) {
    case 2: return (s[1] - s[0]).norm();
    case 3: return 0.5 * (s[1] - s[0]).cross(s[2] - s[0]).norm();
    case 4: return std::abs((s[1] - s[0]).dot((s[2] - s[0]).cross(s[3] - s[0]))) / 6.0;
    default: return 0.0;
  }
}

struct FaceGeometry {
  double measure;
  Point centroid;
  Point normal;  // unoriented
};

FaceGeometry face_geometry(int dim, const std::vector<Point>& pts) {
  if (dim == 1) return {1.0, pts[0], Point::UnitX()};
  if (dim == 2) {
    const Point t = pts[1] - pts[0];
    const double len = t.norm();
    return {len, 0.5 * (pts[0] + pts[1]), Point(t.y(), -t.x(), 0.0) / len};
  }
  const Point c = average(pts);
  Point area = Point::Zero();
  Point moment = Point::Zero();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& a = pts[i];
    const Point& b = pts[(i + 1) % pts.size()];
    const Point tri = 0.5 * (a - c).cross(b - c);
    area += tri;
    moment += tri.norm() * (a + b + c) / 3.0;
  }
  const double m = area.norm();
  double msum = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    msum += 0.5 * (pts[i] - c).cross(pts[(i + 1) % pts.size()] - c).norm();
  return {m, moment / msum, area / m};
}

std::vector<Point> coords(const std::vector<Point>& vertices, const std::vector<int>& ids) {
  std::vector<Point> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(vertices[id]);
  return out;
}

std::vector<std::vector<Point>> decompose(const std::vector<Point>& vertices, const Element& el) {
  const auto pts = coords(vertices, el.vertices);
  switch (el.kind) {
    case ElementKind::segment:
    case ElementKind::tetrahedron: return {pts};
    case ElementKind::triangle:
    case ElementKind::quadrilateral:
    case ElementKind::polygon: {
      if (el.kind == ElementKind::triangle) return {pts};
      const Point c = average(pts);
      std::vector<std::vector<Point>> out;
      for (std::size_t i = 0; i < pts.size(); ++i) out.push_back({c, pts[i], pts[(i + 1) % pts.size()]});
      return out;
    }
    case ElementKind::hexahedron: {
      const Point c = average(pts);
      std::vector<std::vector<Point>> out;
      for (const auto& f : local_faces(el)) {
        const auto fp = coords(vertices, f);
        const Point fc = average(fp);
        for (std::size_t i = 0; i < fp.size(); ++i) out.push_back({c, fc, fp[i], fp[(i + 1) % fp.size()]});
      }
      return out;
    }
  }
  return {};
}

}  // namespace

std::vector<std::vector<Point>> simplex_decomposition(const Mesh& mesh, int e) {
  return decompose(mesh.vertices(), mesh.element(e));
}

Mesh Mesh::from_elements(int dim, std::vector<Point> vertices, std::vector<Element> elements,
                         const FaceTags& tags) {
  if (dim < 1 || dim > 3) throw MeshError("mesh dimension must be 1, 2 or 3");
  if (elements.empty()) throw MeshError("mesh has no elements");
  Mesh m;
  m.dim_ = dim;
  m.vertices_ = std::move(vertices);
  m.elements_ = std::move(elements);
  const int nv = m.num_vertices();
  const int ne = m.num_elements();

  m.measures_.resize(ne);
  m.centroids_.resize(ne);
  m.diameters_.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const Element& el = m.elements_[e];
    if (element_dim(el.kind) != dim)
      throw MeshError("element " + std::to_string(e) + " of kind " + to_string(el.kind) +
                      " does not match mesh dimension " + std::to_string(dim));
    const auto expected = expected_vertex_count(el.kind);
    if ((expected && el.vertices.size() != expected) || el.vertices.size() < 2)
      throw MeshError("element " + std::to_string(e) + " has a wrong vertex count");
    for (int v : el.vertices)
      if (v < 0 || v >= nv) throw MeshError("element " + std::to_string(e) + " references missing vertex " + std::to_string(v));

    double vol = 0.0;
    Point mom = Point::Zero();
    for (const auto& s : decompose(m.vertices_, el)) {
      const double ms = simplex_measure(s);
      vol += ms;
      mom += ms * average(s);
    }
    if (!(vol > 0.0)) throw MeshError("element " + std::to_string(e) + " has non-positive measure");
    m.measures_[e] = vol;
    m.centroids_[e] = mom / vol;
    double diam = 0.0;
    for (std::size_t i = 0; i < el.vertices.size(); ++i)
      for (std::size_t j = i + 1; j < el.vertices.size(); ++j)
        diam = std::max(diam, (m.vertices_[el.vertices[i]] - m.vertices_[el.vertices[j]]).norm());
    m.diameters_[e] = diam;
  }

  std::map<std::vector<int>, int> face_index;
  m.element_faces_.assign(ne, {});
  for (int e = 0; e < ne; ++e) {
    for (auto& fv : local_faces(m.elements_[e])) {
      auto key = sorted_key(fv);
      auto [it, inserted] = face_index.try_emplace(key, m.num_faces());
      if (inserted) {
        const auto geo = face_geometry(dim, coords(m.vertices_, fv));
        if (!(geo.measure > 0.0)) throw MeshError("degenerate face on element " + std::to_string(e));
        Face f;
        f.measure = geo.measure;
        f.centroid = geo.centroid;
        f.normal = geo.normal;
        if ((f.centroid - m.centroids_[e]).dot(f.normal) < 0.0) f.normal = -f.normal;
        f.inner = e;
        f.vertices = std::move(fv);
        m.faces_.push_back(std::move(f));
      } else {
        Face& f = m.faces_[it->second];
        if (f.outer >= 0 || f.inner == e)
          throw MeshError("face shared by more than two elements at element " + std::to_string(e));
        f.outer = e;
      }
      m.element_faces_[e].push_back(it->second);
    }
  }
  for (auto& f : m.faces_) {
    if (!f.on_boundary()) continue;
    auto it = tags.find(sorted_key(f.vertices));
    f.boundary_tag = it == tags.end() ? 0 : it->second;
  }

  m.neighbors_.assign(ne, {});
  for (int e = 0; e < ne; ++e) {
    for (int fi : m.element_faces_[e]) {
      const Face& f = m.faces_[fi];
      if (f.on_boundary()) continue;
      const int other = f.inner == e ? f.outer : f.inner;
      Neighbor nb;
      nb.face = fi;
      nb.slot = other;
      nb.trace_face = fi;
      nb.orientation = f.inner == e ? 1.0 : -1.0;
      nb.centroid = m.centroids_[other];
      m.neighbors_[e].push_back(nb);
    }
  }
  return m;
}

double Mesh::width() const { return *std::max_element(diameters_.begin(), diameters_.end()); }

double Mesh::total_measure() const {
  double s = 0.0;
  for (double v : measures_) s += v;
  return s;
}

Point Mesh::outward_normal(int e, int f) const {
  const Face& face = faces_[f];
  return face.inner == e ? face.normal : Point(-face.normal);
}

std::vector<int> Mesh::boundary_tags() const {
  std::vector<int> out;
  for (const auto& f : faces_)
    if (f.on_boundary()) out.push_back(f.boundary_tag);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Mesh build_cartesian(const std::vector<double>& lower, const std::vector<double>& upper,
                     const std::vector<int>& counts) {
  const int dim = static_cast<int>(counts.size());
  if (dim < 1 || dim > 3 || lower.size() != counts.size() || upper.size() != counts.size())
    throw MeshError("cartesian grid needs matching lower/upper/counts of size 1..3");
  for (int i = 0; i < dim; ++i) {
    if (counts[i] < 1) throw MeshError("cartesian grid needs at least one cell per axis");
    if (!(upper[i] > lower[i])) throw MeshError("cartesian grid needs upper > lower on every axis");
  }
  std::array<int, 3> n{1, 1, 1};
  std::array<int, 3> nv{1, 1, 1};
  for (int i = 0; i < dim; ++i) {
    n[i] = counts[i];
    nv[i] = counts[i] + 1;
  }
  auto coord = [&](int axis, int idx) {
    // Pin the last node to `upper` so the box is closed exactly.
    if (idx == n[axis]) return upper[axis];
    return lower[axis] + (upper[axis] - lower[axis]) * idx / n[axis];
  };
  std::vector<Point> vertices;
  for (int k = 0; k < nv[2]; ++k)
    for (int j = 0; j < nv[1]; ++j)
      for (int i = 0; i < nv[0]; ++i) {
        Point p = Point::Zero();
        p[0] = coord(0, i);
        if (dim > 1) p[1] = coord(1, j);
        if (dim > 2) p[2] = coord(2, k);
        vertices.push_back(p);
      }
  auto vid = [&](int i, int j, int k) { return i + nv[0] * (j + nv[1] * k); };

  std::vector<Element> elements;
  for (int k = 0; k < n[2]; ++k)
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) {
        if (dim == 1) {
          elements.push_back({ElementKind::segment, {vid(i, 0, 0), vid(i + 1, 0, 0)}});
        } else if (dim == 2) {
          elements.push_back({ElementKind::quadrilateral,
                              {vid(i, j, 0), vid(i + 1, j, 0), vid(i + 1, j + 1, 0), vid(i, j + 1, 0)}});
        } else {
          elements.push_back({ElementKind::hexahedron,
                              {vid(i, j, k), vid(i + 1, j, k), vid(i + 1, j + 1, k), vid(i, j + 1, k),
                               vid(i, j, k + 1), vid(i + 1, j, k + 1), vid(i + 1, j + 1, k + 1),
                               vid(i, j + 1, k + 1)}});
        }
      }

  // Tag box sides by checking which side every face vertex sits on.
  FaceTags tags;
  for (const auto& el : elements) {
    for (const auto& fv : local_faces(el)) {
      for (int axis = 0; axis < dim; ++axis) {
        for (int side = 0; side < 2; ++side) {
          const double target = side == 0 ? lower[axis] : upper[axis];
          const bool on = std::all_of(fv.begin(), fv.end(),
                                      [&](int v) { return vertices[v][axis] == target; });
          if (on) tags[sorted_key(fv)] = 2 * axis + 1 + side;
        }
      }
    }
  }
  return Mesh::from_elements(dim, std::move(vertices), std::move(elements), tags);
}

namespace {

FaceTags boundary_face_tags(const Mesh& mesh) {
  FaceTags tags;
  for (const auto& f : mesh.faces())
    if (f.on_boundary()) tags[sorted_key(f.vertices)] = f.boundary_tag;
  return tags;
}

/// Creates (once) the midpoint vertex of an edge.
class MidpointCache {
 public:
  explicit MidpointCache(std::vector<Point>& vertices) : vertices_(vertices) {}

  int operator()(int a, int b) {
    const auto key = std::minmax(a, b);
    auto [it, inserted] = cache_.try_emplace({key.first, key.second}, 0);
    if (inserted) {
      it->second = static_cast<int>(vertices_.size());
      vertices_.push_back(0.5 * (vertices_[a] + vertices_[b]));
    }
    return it->second;
  }

 private:
  std::vector<Point>& vertices_;
  std::map<std::pair<int, int>, int> cache_;
};

/// Propagates the tag of a split boundary edge (a, b) with midpoint m.
void split_edge_tag(const FaceTags& parent, FaceTags& child, int a, int b, int m) {
  auto it = parent.find(sorted_key({a, b}));
  if (it == parent.end()) return;
  child[sorted_key({a, m})] = it->second;
  child[sorted_key({m, b})] = it->second;
}

std::array<std::vector<int>, 4> split_quad(const std::vector<int>& q, MidpointCache& mid, std::vector<Point>& vertices,
                                           const FaceTags& parent_tags, FaceTags& tags) {
  const int m01 = mid(q[0], q[1]);
  const int m12 = mid(q[1], q[2]);
  const int m23 = mid(q[2], q[3]);
  const int m30 = mid(q[3], q[0]);
  const int c = static_cast<int>(vertices.size());
  vertices.push_back(0.25 * (vertices[q[0]] + vertices[q[1]] + vertices[q[2]] + vertices[q[3]]));
  split_edge_tag(parent_tags, tags, q[0], q[1], m01);
  split_edge_tag(parent_tags, tags, q[1], q[2], m12);
  split_edge_tag(parent_tags, tags, q[2], q[3], m23);
  split_edge_tag(parent_tags, tags, q[3], q[0], m30);
  return {std::vector<int>{q[0], m01, c, m30}, std::vector<int>{m01, q[1], m12, c},
          std::vector<int>{c, m12, q[2], m23}, std::vector<int>{m30, c, m23, q[3]}};
}

}  // namespace

Mesh uniform_refine(const Mesh& mesh) {
  if (mesh.has_ghosts()) throw MeshError("refine the mesh before attaching ghosts");
  std::vector<Point> vertices = mesh.vertices();
  MidpointCache mid(vertices);
  const FaceTags parent_tags = boundary_face_tags(mesh);
  FaceTags tags;
  std::vector<Element> elements;
  for (const auto& el : mesh.elements()) {
    const auto& v = el.vertices;
    switch (el.kind) {
      case ElementKind::segment: {
        const int m = mid(v[0], v[1]);
        elements.push_back({ElementKind::segment, {v[0], m}});
        elements.push_back({ElementKind::segment, {m, v[1]}});
        for (int end : {v[0], v[1]}) {
          auto it = parent_tags.find({end});
          if (it != parent_tags.end()) tags[{end}] = it->second;
        }
        break;
      }
      case ElementKind::triangle: {
        const int m01 = mid(v[0], v[1]);
        const int m12 = mid(v[1], v[2]);
        const int m20 = mid(v[2], v[0]);
        split_edge_tag(parent_tags, tags, v[0], v[1], m01);
        split_edge_tag(parent_tags, tags, v[1], v[2], m12);
        split_edge_tag(parent_tags, tags, v[2], v[0], m20);
        elements.push_back({ElementKind::triangle, {v[0], m01, m20}});
        elements.push_back({ElementKind::triangle, {m01, v[1], m12}});
        elements.push_back({ElementKind::triangle, {m20, m12, v[2]}});
        elements.push_back({ElementKind::triangle, {m01, m12, m20}});
        break;
      }
      case ElementKind::quadrilateral:
        for (auto& child : split_quad(v, mid, vertices, parent_tags, tags))
          elements.push_back({ElementKind::quadrilateral, std::move(child)});
        break;
      default:
        throw MeshError("uniform refinement does not support " + to_string(el.kind) + " elements");
    }
  }
  return Mesh::from_elements(mesh.dim(), std::move(vertices), std::move(elements), tags);
}

Mesh checkerboard_refine(const Mesh& mesh) {
  if (mesh.has_ghosts()) throw MeshError("refine the mesh before attaching ghosts");
  if (mesh.dim() != 2) throw MeshError("checkerboard refinement needs a 2D mesh");
  const int ne = mesh.num_elements();
  for (const auto& el : mesh.elements())
    if (el.kind != ElementKind::quadrilateral)
      throw MeshError("checkerboard refinement needs quadrilaterals, got " + to_string(el.kind));

  std::vector<int> color(ne, -1);
  for (int seed = 0; seed < ne; ++seed) {
    if (color[seed] >= 0) continue;
    color[seed] = 0;
    std::queue<int> todo;
    todo.push(seed);
    while (!todo.empty()) {
      const int e = todo.front();
      todo.pop();
      for (const auto& nb : mesh.neighbors(e)) {
        if (color[nb.slot] < 0) {
          color[nb.slot] = 1 - color[e];
          todo.push(nb.slot);
        } else if (color[nb.slot] == color[e]) {
          throw MeshError("mesh is not two-colorable; elements " + std::to_string(e) + " and " +
                          std::to_string(nb.slot) + " share a color");
        }
      }
    }
  }

  std::vector<Point> vertices = mesh.vertices();
  MidpointCache mid(vertices);
  const FaceTags parent_tags = boundary_face_tags(mesh);
  FaceTags tags;
  std::vector<Element> elements;
  // Refined cells first so every shared edge midpoint exists before the
  // coarse polygons pick up their hanging nodes.
  std::vector<std::array<std::vector<int>, 4>> children(ne);
  for (int e = 0; e < ne; ++e)
    if (color[e] == 1) children[e] = split_quad(mesh.element(e).vertices, mid, vertices, parent_tags, tags);

  for (int e = 0; e < ne; ++e) {
    if (color[e] == 1) {
      for (auto& c : children[e]) elements.push_back({ElementKind::quadrilateral, std::move(c)});
      continue;
    }
    const auto& q = mesh.element(e).vertices;
    std::vector<int> poly;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const int a = q[i];
      const int b = q[(i + 1) % q.size()];
      poly.push_back(a);
      if (!parent_tags.contains(sorted_key({a, b}))) {
        poly.push_back(mid(a, b));
      } else {
        tags[sorted_key({a, b})] = parent_tags.at(sorted_key({a, b}));
      }
    }
    elements.push_back({poly.size() == 4 ? ElementKind::quadrilateral : ElementKind::polygon, std::move(poly)});
  }
  return Mesh::from_elements(2, std::move(vertices), std::move(elements), tags);
}

Mesh attach_ghosts(const Mesh& mesh, const std::map<int, BoundaryKind>& spec, GhostPlacement placement) {
  if (mesh.has_ghosts()) throw MeshError("ghosts already attached");
  Mesh out = mesh;
  const int ne = mesh.num_elements();
  std::vector<int> ghost_of_face(mesh.num_faces(), -1);
  for (int fi = 0; fi < mesh.num_faces(); ++fi) {
    const Face& f = mesh.face(fi);
    if (!f.on_boundary()) continue;
    auto it = spec.find(f.boundary_tag);
    if (it == spec.end())
      throw MeshError("boundary tag " + std::to_string(f.boundary_tag) + " has no boundary condition");
    Ghost g;
    g.face = fi;
    g.element = f.inner;
    g.tag = f.boundary_tag;
    g.kind = it->second;
    const Point& xe = mesh.centroid(f.inner);
    if (placement == GhostPlacement::reflect)
      g.centroid = xe + 2.0 * (f.centroid - xe).dot(f.normal) * f.normal;
    else
      g.centroid = f.centroid;
    ghost_of_face[fi] = out.num_ghosts();
    out.ghosts_.push_back(g);
  }

  // Periodic partners: axis-aligned faces with opposite normals and equal
  // transverse coordinates.
  const double scale = [&] {
    double s = 0.0;
    for (const auto& p : mesh.vertices()) s = std::max(s, p.cwiseAbs().maxCoeff());
    return std::max(s, 1.0);
  }();
  auto quantize = [&](double x) { return static_cast<long long>(std::llround(x / (scale * 1e-9))); };
  using Key = std::tuple<int, long long, long long>;
  std::map<Key, std::vector<int>> buckets;
  auto axis_of = [&](const Face& f) {
    for (int a = 0; a < mesh.dim(); ++a)
      if (std::abs(std::abs(f.normal[a]) - 1.0) < 1e-12) return a;
    return -1;
  };
  auto key_of = [&](const Face& f, int axis) {
    std::array<long long, 2> t{0, 0};
    int k = 0;
    for (int a = 0; a < 3; ++a)
      if (a != axis) t[k++] = quantize(f.centroid[a]);
    return Key{axis, t[0], t[1]};
  };
  for (auto& g : out.ghosts_) {
    if (g.kind != BoundaryKind::periodic) continue;
    const Face& f = mesh.face(g.face);
    const int axis = axis_of(f);
    if (axis < 0) throw MeshError("periodic face " + std::to_string(g.face) + " is not axis-aligned");
    buckets[key_of(f, axis)].push_back(g.face);
  }
  for (auto& g : out.ghosts_) {
    if (g.kind != BoundaryKind::periodic) continue;
    const Face& f = mesh.face(g.face);
    const int axis = axis_of(f);
    int best = -1;
    double best_dist = 0.0;
    for (int cand : buckets[key_of(f, axis)]) {
      const Face& c = mesh.face(cand);
      if (c.normal[axis] * f.normal[axis] >= 0.0) continue;
      const double dist = std::abs(c.centroid[axis] - f.centroid[axis]);
      if (dist > best_dist) {
        best = cand;
        best_dist = dist;
      }
    }
    if (best < 0) throw MeshError("periodic face " + std::to_string(g.face) + " has no geometric partner");
    const Face& pf = mesh.face(best);
    g.partner = pf.inner;
    g.partner_face = best;
    g.shift = pf.centroid - f.centroid;
    g.centroid = mesh.centroid(pf.inner) - g.shift;
  }

  for (int e = 0; e < ne; ++e) {
    auto& list = out.neighbors_[e];
    list.clear();
    for (int fi : mesh.element_faces(e)) {
      const Face& f = mesh.face(fi);
      Neighbor nb;
      nb.face = fi;
      if (!f.on_boundary()) {
        const int other = f.inner == e ? f.outer : f.inner;
        nb.slot = other;
        nb.trace_face = fi;
        nb.orientation = f.inner == e ? 1.0 : -1.0;
        nb.centroid = mesh.centroid(other);
      } else {
        const int gi = ghost_of_face[fi];
        const Ghost& g = out.ghosts_[gi];
        nb.ghost = gi;
        nb.orientation = 1.0;
        nb.centroid = g.centroid;
        if (g.kind == BoundaryKind::periodic) {
          nb.slot = g.partner;
          nb.trace_face = g.partner_face;
        } else {
          nb.slot = ne + gi;
          nb.trace_face = -1;
        }
      }
      list.push_back(nb);
    }
  }
  out.ghosts_attached_ = true;
  return out;
}

Mesh attach_ghosts_uniform(const Mesh& mesh, BoundaryKind kind, GhostPlacement placement) {
  std::map<int, BoundaryKind> spec;
  for (int tag : mesh.boundary_tags()) spec[tag] = kind;
  return attach_ghosts(mesh, spec, placement);
}

int count_hanging_nodes(const Mesh& mesh) {
  if (mesh.dim() != 2) return 0;
  std::vector<int> hanging;
  for (const auto& el : mesh.elements()) {
    if (el.kind != ElementKind::polygon) continue;
    const auto& v = el.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point& p = mesh.vertices()[v[i]];
      const Point& a = mesh.vertices()[v[(i + v.size() - 1) % v.size()]];
      const Point& b = mesh.vertices()[v[(i + 1) % v.size()]];
      const Point u = a - p;
      const Point w = b - p;
      if (std::abs(u.x() * w.y() - u.y() * w.x()) <= 1e-12 * u.norm() * w.norm()) hanging.push_back(v[i]);
    }
  }
  std::sort(hanging.begin(), hanging.end());
  hanging.erase(std::unique(hanging.begin(), hanging.end()), hanging.end());
  return static_cast<int>(hanging.size());
}

}  // namespace muscl
