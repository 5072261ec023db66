#include "muscl/mesh/mesh_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>

namespace muscl {

ParseError::ParseError(const std::string& message, int line)
    : MeshError("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-empty line, trimmed; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      line = line.substr(first);
      return true;
    }
    return false;
  }

  std::string expect_line(const char* what) {
    std::string line;
    if (!next(line)) throw ParseError(std::string("unexpected end of file, expected ") + what, number_);
    return line;
  }

  int number() const { return number_; }

 private:
  std::istream& in_;
  int number_ = 0;
};

template <typename T>
T parse_value(std::istringstream& ss, const LineReader& r, const char* what) {
  T v{};
  if (!(ss >> v)) throw ParseError(std::string("malformed ") + what, r.number());
  return v;
}

ElementKind gmsh_kind(int type) {
  switch (type) {
    case 2: return ElementKind::triangle;
    case 3: return ElementKind::quadrilateral;
    case 4: return ElementKind::tetrahedron;
    default: return ElementKind::segment;
  }
}

struct RawElement {
  int type;
  int physical;
  std::vector<int> nodes;  // gmsh node ids
  int line;
};

}  // namespace

Mesh read_gmsh_msh(std::istream& in, const GmshReadOptions& options) {
  LineReader r(in);
  std::string line;
  bool have_format = false;
  std::unordered_map<long, int> node_index;
  std::vector<Point> nodes;
  std::vector<RawElement> raw;

  while (r.next(line)) {
    if (line.rfind("$MeshFormat", 0) == 0) {
      std::istringstream ss(r.expect_line("format header"));
      std::string version;
      int file_type = -1;
      int data_size = 0;
      ss >> version >> file_type >> data_size;
      if (version != "2.2") throw ParseError("unsupported MSH version '" + version + "', only 2.2 is read", r.number());
      if (file_type != 0) throw ParseError("binary MSH files are not supported", r.number());
      if (r.expect_line("$EndMeshFormat") != "$EndMeshFormat") throw ParseError("expected $EndMeshFormat", r.number());
      have_format = true;
    } else if (line.rfind("$Nodes", 0) == 0) {
      if (!have_format) throw ParseError("$Nodes before $MeshFormat", r.number());
      std::istringstream cs(r.expect_line("node count"));
      const long count = parse_value<long>(cs, r, "node count");
      for (long i = 0; i < count; ++i) {
        std::istringstream ss(r.expect_line("node"));
        const long id = parse_value<long>(ss, r, "node id");
        Point p;
        p.x() = parse_value<double>(ss, r, "node coordinate");
        p.y() = parse_value<double>(ss, r, "node coordinate");
        p.z() = parse_value<double>(ss, r, "node coordinate");
        if (!node_index.emplace(id, static_cast<int>(nodes.size())).second)
          throw ParseError("duplicate node id " + std::to_string(id), r.number());
        nodes.push_back(p);
      }
      if (r.expect_line("$EndNodes") != "$EndNodes") throw ParseError("expected $EndNodes", r.number());
    } else if (line.rfind("$Elements", 0) == 0) {
      if (!have_format) throw ParseError("$Elements before $MeshFormat", r.number());
      std::istringstream cs(r.expect_line("element count"));
      const long count = parse_value<long>(cs, r, "element count");
      for (long i = 0; i < count; ++i) {
        std::istringstream ss(r.expect_line("element"));
        parse_value<long>(ss, r, "element id");
        const int type = parse_value<int>(ss, r, "element type");
        const int ntags = parse_value<int>(ss, r, "tag count");
        std::vector<int> tags(ntags);
        for (auto& t : tags) t = parse_value<int>(ss, r, "element tag");
        int nn = 0;
        switch (type) {
          case 1: nn = 2; break;
          case 2: nn = 3; break;
          case 3: nn = 4; break;
          case 4: nn = 4; break;
          case 15:
            if (options.strict) throw ParseError("point element (type 15) rejected in strict mode", r.number());
            continue;
          default: throw ParseError("unsupported element type " + std::to_string(type), r.number());
        }
        RawElement el{type, ntags > 0 ? tags[0] : 0, {}, r.number()};
        for (int k = 0; k < nn; ++k) el.nodes.push_back(parse_value<int>(ss, r, "element node"));
        raw.push_back(std::move(el));
      }
      if (r.expect_line("$EndElements") != "$EndElements") throw ParseError("expected $EndElements", r.number());
    } else if (line[0] == '$' && line.rfind("$End", 0) != 0) {
      // Skip unknown sections such as $PhysicalNames.
      const std::string end = "$End" + line.substr(1);
      std::string inner;
      while (true) {
        if (!r.next(inner)) throw ParseError("unterminated section " + line, r.number());
        if (inner == end) break;
      }
    }
  }
  if (!have_format) throw ParseError("missing $MeshFormat section", r.number());

  auto elem_dim = [](int type) { return type == 1 ? 1 : type == 4 ? 3 : 2; };
  int dim = 0;
  for (const auto& el : raw) dim = std::max(dim, elem_dim(el.type));
  if (dim < 2) throw ParseError("no triangle, quadrilateral or tetrahedron cells found", r.number());

  std::vector<Element> elements;
  FaceTags tags;
  for (const auto& el : raw) {
    std::vector<int> ids;
    for (int n : el.nodes) {
      auto it = node_index.find(n);
      if (it == node_index.end()) throw ParseError("element references missing node " + std::to_string(n), el.line);
      ids.push_back(it->second);
    }
    const int d = elem_dim(el.type);
    if (d == dim) {
      elements.push_back({gmsh_kind(el.type), std::move(ids)});
    } else if (d == dim - 1) {
      std::sort(ids.begin(), ids.end());
      tags[ids] = el.physical;
    }
  }
  if (dim == 2)
    for (auto& p : nodes) p.z() = 0.0;
  return Mesh::from_elements(dim, std::move(nodes), std::move(elements), tags);
}

Mesh read_gmsh_msh_file(const std::filesystem::path& path, const GmshReadOptions& options) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file " + path.string());
  return read_gmsh_msh(in, options);
}

namespace {

ElementKind kind_from_string(const std::string& s, int line) {
  for (auto k : {ElementKind::segment, ElementKind::triangle, ElementKind::quadrilateral, ElementKind::polygon,
                 ElementKind::tetrahedron, ElementKind::hexahedron})
    if (to_string(k) == s) return k;
  throw ParseError("unknown element kind '" + s + "'", line);
}

std::string next_content_line(LineReader& r, const char* what) {
  std::string line;
  do {
    line = r.expect_line(what);
  } while (line[0] == '#');
  return line;
}

int section_count(LineReader& r, const std::string& name) {
  std::istringstream ss(next_content_line(r, name.c_str()));
  std::string word;
  ss >> word;
  if (word != name) throw ParseError("expected section '" + name + "'", r.number());
  return parse_value<int>(ss, r, "section count");
}

}  // namespace

Mesh read_native_mesh(std::istream& in) {
  LineReader r(in);
  const int dim = section_count(r, "dim");
  const int nv = section_count(r, "vertices");
  std::vector<Point> vertices(nv, Point::Zero());
  for (int i = 0; i < nv; ++i) {
    std::istringstream ss(next_content_line(r, "vertex"));
    for (int a = 0; a < dim; ++a) vertices[i][a] = parse_value<double>(ss, r, "vertex coordinate");
  }
  const int ne = section_count(r, "elements");
  std::vector<Element> elements;
  for (int i = 0; i < ne; ++i) {
    std::istringstream ss(next_content_line(r, "element"));
    const auto kind = kind_from_string(parse_value<std::string>(ss, r, "element kind"), r.number());
    const int k = parse_value<int>(ss, r, "vertex count");
    Element el{kind, {}};
    for (int j = 0; j < k; ++j) {
      const int v = parse_value<int>(ss, r, "vertex index");
      if (v < 0 || v >= nv) throw ParseError("vertex index out of range", r.number());
      el.vertices.push_back(v);
    }
    elements.push_back(std::move(el));
  }
  FaceTags tags;
  std::string line;
  while (r.next(line)) {
    if (line[0] == '#') continue;
    std::istringstream hs(line);
    std::string word;
    hs >> word;
    if (word != "boundary") throw ParseError("expected section 'boundary'", r.number());
    const int nb = parse_value<int>(hs, r, "boundary count");
    for (int i = 0; i < nb; ++i) {
      std::istringstream ss(next_content_line(r, "boundary face"));
      const int tag = parse_value<int>(ss, r, "boundary tag");
      const int k = parse_value<int>(ss, r, "vertex count");
      std::vector<int> ids(k);
      for (auto& v : ids) v = parse_value<int>(ss, r, "vertex index");
      std::sort(ids.begin(), ids.end());
      tags[ids] = tag;
    }
    break;
  }
  return Mesh::from_elements(dim, std::move(vertices), std::move(elements), tags);
}

Mesh read_native_mesh_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file " + path.string());
  return read_native_mesh(in);
}

void write_native_mesh(std::ostream& out, const Mesh& mesh) {
  out << std::setprecision(17);
  out << "dim " << mesh.dim() << "\n";
  out << "vertices " << mesh.num_vertices() << "\n";
  for (const auto& p : mesh.vertices()) {
    for (int a = 0; a < mesh.dim(); ++a) out << (a ? " " : "") << p[a];
    out << "\n";
  }
  out << "elements " << mesh.num_elements() << "\n";
  for (const auto& el : mesh.elements()) {
    out << to_string(el.kind) << " " << el.vertices.size();
    for (int v : el.vertices) out << " " << v;
    out << "\n";
  }
  int nb = 0;
  for (const auto& f : mesh.faces()) nb += f.on_boundary();
  out << "boundary " << nb << "\n";
  for (const auto& f : mesh.faces()) {
    if (!f.on_boundary()) continue;
    out << f.boundary_tag << " " << f.vertices.size();
    for (int v : f.vertices) out << " " << v;
    out << "\n";
  }
}

namespace {

int vtk_cell_type(ElementKind kind) {
  switch (kind) {
    case ElementKind::segment: return 3;
    case ElementKind::triangle: return 5;
    case ElementKind::quadrilateral: return 9;
    case ElementKind::polygon: return 7;
    case ElementKind::tetrahedron: return 10;
    case ElementKind::hexahedron: return 12;
  }
  return 0;
}

}  // namespace

void write_vtk(std::ostream& out, const Mesh& mesh, const std::vector<std::string>& names,
               const std::vector<std::vector<double>>& cell_data) {
  out << std::setprecision(15);
  out << "# vtk DataFile Version 3.0\nmuscl field snapshot\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (const auto& p : mesh.vertices()) out << p.x() << " " << p.y() << " " << p.z() << "\n";
  std::size_t size = 0;
  for (const auto& el : mesh.elements()) size += el.vertices.size() + 1;
  out << "CELLS " << mesh.num_elements() << " " << size << "\n";
  for (const auto& el : mesh.elements()) {
    out << el.vertices.size();
    for (int v : el.vertices) out << " " << v;
    out << "\n";
  }
  out << "CELL_TYPES " << mesh.num_elements() << "\n";
  for (const auto& el : mesh.elements()) out << vtk_cell_type(el.kind) << "\n";
  if (names.empty()) return;
  out << "CELL_DATA " << mesh.num_elements() << "\n";
  for (std::size_t k = 0; k < names.size(); ++k) {
    out << "SCALARS " << names[k] << " double 1\nLOOKUP_TABLE default\n";
    for (double v : cell_data[k]) out << v << "\n";
  }
}

}  // namespace muscl
