#include "muscl/mesh/mesh.hpp"
#include "muscl/mesh/mesh_io.hpp"
#include "muscl/mesh/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace muscl;

namespace {

const std::filesystem::path data_dir = MUSCL_DATA_DIR;

void check_closure(const Mesh& mesh) {
  for (int e = 0; e < mesh.num_elements(); ++e) {
    Point sum = Point::Zero();
    for (int f : mesh.element_faces(e)) sum += mesh.face(f).measure * mesh.outward_normal(e, f);
    CHECK(sum.norm() <= 1e-12 * std::pow(mesh.diameter(e), mesh.dim() - 1));
  }
}

const char* two_triangles = R"($MeshFormat
2.2 0 8
$EndMeshFormat
$Nodes
5
1 0 0 0
2 1 0 0
3 1 1 0
4 0 1 0
5 0.5 0.5 0
$EndNodes
$Elements
7
1 15 2 0 1 1
2 1 2 7 1 1 2
3 1 2 7 2 2 3
4 1 2 8 3 3 4
5 1 2 8 4 4 1
6 2 2 9 1 1 2 3
7 2 2 9 1 1 3 4
$EndElements
)";

}  // namespace

TEST_CASE("cartesian grids: counts, tags and measures") {
  const Mesh line = build_cartesian({0.0}, {1.0}, {4});
  CHECK(line.num_elements() == 4);
  CHECK(line.num_faces() == 5);
  CHECK(line.boundary_tags() == std::vector<int>{1, 2});
  CHECK(line.measure(2) == doctest::Approx(0.25));

  const Mesh square = build_cartesian({0.0, 0.0}, {1.0, 2.0}, {3, 4});
  CHECK(square.num_elements() == 12);
  CHECK(square.num_faces() == 4 * 4 + 3 * 5);
  CHECK(square.boundary_tags() == std::vector<int>{1, 2, 3, 4});
  CHECK(square.total_measure() == doctest::Approx(2.0));
  CHECK(square.width() == doctest::Approx(std::hypot(1.0 / 3, 0.5)));
  check_closure(square);

  const Mesh cube = build_cartesian({0, 0, 0}, {1, 1, 1}, {2, 2, 2});
  CHECK(cube.num_elements() == 8);
  CHECK(cube.boundary_tags() == std::vector<int>{1, 2, 3, 4, 5, 6});
  CHECK(cube.total_measure() == doctest::Approx(1.0));
  check_closure(cube);
  for (int e = 0; e < cube.num_elements(); ++e) CHECK(cube.neighbors(e).size() == 3);
}

TEST_CASE("face normals point from inner to outer") {
  const Mesh mesh = uniform_refine(read_native_mesh_file(data_dir / "meshes/square_123.mesh"));
  for (const auto& f : mesh.faces()) {
    CHECK(f.normal.norm() == doctest::Approx(1.0));
    if (f.outer >= 0) CHECK(f.normal.dot(mesh.centroid(f.outer) - mesh.centroid(f.inner)) > 0.0);
    else CHECK(f.normal.dot(f.centroid - mesh.centroid(f.inner)) > 0.0);
  }
}

TEST_CASE("seed triangulation and its refinements") {
  const Mesh base = read_native_mesh_file(data_dir / "meshes/square_123.mesh");
  CHECK(base.num_elements() == 123);
  CHECK(base.total_measure() == doctest::Approx(1.0));
  CHECK(base.boundary_tags() == std::vector<int>{1, 2, 3, 4});
  check_closure(base);
  const Mesh r1 = uniform_refine(base);
  CHECK(r1.num_elements() == 492);
  CHECK(r1.total_measure() == doctest::Approx(1.0));
  CHECK(r1.width() <= 0.5 * base.width() + 1e-12);
  CHECK(r1.boundary_tags() == base.boundary_tags());
  check_closure(r1);
  CHECK(uniform_refine(r1).num_elements() == 1968);
}

TEST_CASE("checkerboard refinement creates hanging nodes") {
  const Mesh base = build_cartesian({0, 0}, {1, 1}, {8, 8});
  const Mesh cb = checkerboard_refine(base);
  CHECK(cb.num_elements() == 160);
  CHECK(cb.total_measure() == doctest::Approx(1.0));
  CHECK(count_hanging_nodes(cb) > 0);
  check_closure(cb);
  int polygons = 0;
  for (const auto& el : cb.elements()) polygons += el.kind == ElementKind::polygon;
  CHECK(polygons > 0);
  // each coarse interior cell touches the four children on every refined side
  int max_neighbors = 0;
  for (int e = 0; e < cb.num_elements(); ++e) max_neighbors = std::max<int>(max_neighbors, cb.neighbors(e).size());
  CHECK(max_neighbors == 8);
  CHECK(checkerboard_refine(build_cartesian({0, 0}, {1, 1}, {16, 16})).num_elements() == 640);
}

TEST_CASE("refinement of segments and quadrilaterals") {
  CHECK(uniform_refine(build_cartesian({0.0}, {1.0}, {5})).num_elements() == 10);
  const Mesh q = uniform_refine(build_cartesian({0, 0}, {1, 1}, {2, 3}));
  CHECK(q.num_elements() == 24);
  CHECK(q.total_measure() == doctest::Approx(1.0));
}

TEST_CASE("periodic ghosts alias their partner") {
  const Mesh mesh = attach_ghosts_uniform(build_cartesian({0.0}, {1.0}, {4}), BoundaryKind::periodic);
  CHECK(mesh.num_ghosts() == 2);
  const auto& nb0 = mesh.neighbors(0);
  REQUIRE(nb0.size() == 2);
  bool found = false;
  for (const auto& n : nb0) {
    if (!n.is_ghost()) continue;
    found = true;
    CHECK(n.slot == 3);
    CHECK(n.trace_face >= 0);
    CHECK(n.centroid[0] == doctest::Approx(-0.125));
    CHECK(mesh.face(n.trace_face).centroid[0] == doctest::Approx(1.0));
  }
  CHECK(found);
}

TEST_CASE("Dirichlet ghost placement") {
  const Mesh raw = build_cartesian({0.0, 0.0}, {1.0, 1.0}, {2, 2});
  const Mesh reflect = attach_ghosts_uniform(raw, BoundaryKind::dirichlet, GhostPlacement::reflect);
  const Mesh at_face = attach_ghosts_uniform(raw, BoundaryKind::dirichlet, GhostPlacement::face_centroid);
  CHECK(reflect.num_ghosts() == 8);
  CHECK(reflect.num_slots() == 12);
  for (int g = 0; g < reflect.num_ghosts(); ++g) {
    const auto& f = reflect.face(reflect.ghost(g).face);
    CHECK((reflect.ghost(g).centroid - (2.0 * f.centroid - reflect.centroid(f.inner))).norm() <= 1e-14);
    CHECK((at_face.ghost(g).centroid - f.centroid).norm() <= 1e-14);
  }
  for (const auto& n : reflect.neighbors(0))
    if (n.is_ghost()) {
      CHECK(n.slot >= reflect.num_elements());
      CHECK(n.trace_face == -1);
    }
}

TEST_CASE("missing boundary kinds are rejected") {
  const Mesh raw = build_cartesian({0.0, 0.0}, {1.0, 1.0}, {2, 2});
  CHECK_THROWS_AS(attach_ghosts(raw, {{1, BoundaryKind::dirichlet}}), MeshError);
}

TEST_CASE("Gmsh reader: triangles, tags and point elements") {
  std::istringstream in(two_triangles);
  const Mesh mesh = read_gmsh_msh(in);
  CHECK(mesh.dim() == 2);
  CHECK(mesh.num_elements() == 2);
  CHECK(mesh.num_vertices() == 5);
  CHECK(mesh.boundary_tags() == std::vector<int>{7, 8});
  CHECK(mesh.total_measure() == doctest::Approx(1.0));
  check_closure(mesh);

  std::istringstream strict_in(two_triangles);
  CHECK_THROWS_AS(read_gmsh_msh(strict_in, {.strict = true}), ParseError);
}

TEST_CASE("Gmsh reader: malformed input") {
  auto parse = [](std::string text) {
    std::istringstream in(text);
    return read_gmsh_msh(in);
  };
  std::string unknown = two_triangles;
  unknown.replace(unknown.find("7 2 2 9 1 1 3 4"), 15, "7 9 2 9 1 1 3 4");
  CHECK_THROWS_AS(parse(unknown), ParseError);

  std::string dangling = two_triangles;
  dangling.replace(dangling.find("7 2 2 9 1 1 3 4"), 15, "7 2 2 9 1 1 3 9");
  try {
    parse(dangling);
    FAIL("dangling node accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() > 0);
  }

  std::string binary = two_triangles;
  binary.replace(binary.find("2.2 0 8"), 7, "2.2 1 8");
  CHECK_THROWS_AS(parse(binary), ParseError);

  CHECK_THROWS_AS(parse("$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n2\n1 0 0\n"), ParseError);
}

TEST_CASE("native format round trip") {
  const Mesh mesh = checkerboard_refine(build_cartesian({0, 0}, {1, 1}, {4, 4}));
  std::stringstream buffer;
  write_native_mesh(buffer, mesh);
  const Mesh back = read_native_mesh(buffer);
  CHECK(back.num_elements() == mesh.num_elements());
  CHECK(back.num_faces() == mesh.num_faces());
  CHECK(back.boundary_tags() == mesh.boundary_tags());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    CHECK(back.measure(e) == doctest::Approx(mesh.measure(e)).epsilon(1e-15));
    CHECK((back.centroid(e) - mesh.centroid(e)).norm() <= 1e-15);
  }
}

TEST_CASE("tube fixture") {
  const Mesh tube = read_gmsh_msh_file(data_dir / "meshes/tube_sod.msh");
  CHECK(tube.dim() == 3);
  CHECK(tube.num_elements() == 5184);
  CHECK(tube.boundary_tags() == std::vector<int>{1, 2, 3});
  check_closure(tube);
  double xmin = 1e9, xmax = -1e9;
  for (const auto& v : tube.vertices()) {
    xmin = std::min(xmin, v[0]);
    xmax = std::max(xmax, v[0]);
  }
  CHECK(xmin == doctest::Approx(-1.0));
  CHECK(xmax == doctest::Approx(1.0));
}

TEST_CASE("quadrature integrates quadratics exactly") {
  const std::vector<Mesh> meshes = {
      build_cartesian({0.0}, {1.0}, {3}), read_native_mesh_file(data_dir / "meshes/square_123.mesh"),
      checkerboard_refine(build_cartesian({0, 0}, {1, 1}, {4, 4})), build_cartesian({0, 0, 0}, {1, 1, 1}, {2, 2, 2})};
  for (const auto& mesh : meshes) {
    const int d = mesh.dim();
    // int_[0,1]^d (x0^2 + x0 x_{d-1}) dx
    const double exact = 1.0 / 3.0 + (d == 1 ? 0.0 : 0.25);
    double sum = 0.0, first = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e) {
      double w = 0.0;
      Point moment = Point::Zero();
      for (const auto& q : element_quadrature(mesh, e)) {
        sum += q.weight * (q.x[0] * q.x[0] + (d == 1 ? 0.0 : q.x[0] * q.x[d - 1]));
        w += q.weight;
        moment += q.weight * q.x;
      }
      CHECK(w == doctest::Approx(mesh.measure(e)).epsilon(1e-13));
      CHECK((moment / w - mesh.centroid(e)).norm() <= 1e-13);
      double ws = 0.0;
      Point ms = Point::Zero();
      for (const auto& q : element_subsamples(mesh, e)) {
        ws += q.weight;
        ms += q.weight * q.x;
      }
      CHECK(ws == doctest::Approx(mesh.measure(e)).epsilon(1e-13));
      CHECK((ms / ws - mesh.centroid(e)).norm() <= 1e-13);
      if (e == 0) first = w;
    }
    CHECK(first > 0.0);
    CHECK(sum == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("subsampling uses 4^d points per simplex") {
  const Mesh tri = read_native_mesh_file(data_dir / "meshes/square_123.mesh");
  CHECK(element_subsamples(tri, 0).size() == 16);
  CHECK(element_subsamples(build_cartesian({0.0}, {1.0}, {2}), 0).size() == 4);
  CHECK(simplex_measure({Point(0, 0, 0), Point(1, 0, 0), Point(0, 1, 0), Point(0, 0, 1)}) ==
        doctest::Approx(1.0 / 6.0));
}

TEST_CASE("VTK output lists every cell") {
  const Mesh mesh = build_cartesian({0, 0}, {1, 1}, {2, 2});
  std::ostringstream out;
  write_vtk(out, mesh, {"u"}, {{1, 2, 3, 4}});
  const std::string s = out.str();
  CHECK(s.find("CELLS 4") != std::string::npos);
  CHECK(s.find("SCALARS u") != std::string::npos);
}
