#pragma once

#include "muscl/mesh/mesh.hpp"

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>

namespace muscl {

class ParseError : public MeshError {
 public:
  ParseError(const std::string& message, int line);
  int line() const { return line_; }

 private:
  int line_;
};

struct GmshReadOptions {
  /// Lines (1), triangles (2), quadrilaterals (3) and tetrahedra (4) are read;
  /// any other type is a parse error. Points (15) carry no cells and are
  /// skipped unless strict is set, in which case they are rejected too.
  bool strict = false;
};

/// Reads Gmsh MSH 2.2 ASCII. Cells are the highest-dimensional elements among
/// triangles (2), quadrilaterals (3) and tetrahedra (4); lower-dimensional
/// elements (lines, triangles in 3D) tag boundary faces with their physical
/// group.
Mesh read_gmsh_msh(std::istream& in, const GmshReadOptions& options = {});
Mesh read_gmsh_msh_file(const std::filesystem::path& path, const GmshReadOptions& options = {});

/// Native plain-text fixture format:
///
///     dim <d>
///     vertices <n>
///     <x> [<y> [<z>]]            (n lines)
///     elements <m>
///     <kind> <k> <v0> ... <vk-1>  (m lines)
///     boundary <b>
///     <tag> <k> <v0> ... <vk-1>   (b lines, optional section)
///
/// Lines starting with '#' are comments.
Mesh read_native_mesh(std::istream& in);
Mesh read_native_mesh_file(const std::filesystem::path& path);
void write_native_mesh(std::ostream& out, const Mesh& mesh);

/// Legacy VTK ASCII unstructured grid with one cell-data array per name.
void write_vtk(std::ostream& out, const Mesh& mesh, const std::vector<std::string>& names,
               const std::vector<std::vector<double>>& cell_data);

}  // namespace muscl
