#include "sepwidth/geom/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/format.hpp"

namespace sepwidth::geom {

namespace {

// Next non-comment, non-blank line split on whitespace.
bool next_fields(std::istream& in, std::vector<std::string>& fields, int& line_no) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ss(line);
    fields.clear();
    for (std::string f; ss >> f;) fields.push_back(f);
    return true;
  }
  return false;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw IoError("line " + std::to_string(line_no) + ": " + what);
}

long long to_int(const std::string& s, int line_no) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    fail(line_no, "expected an integer, got '" + s + "'");
  }
  if (used != s.size()) fail(line_no, "expected an integer, got '" + s + "'");
  return v;
}

double to_double(const std::string& s, int line_no) {
  double v = 0.0;
  if (!parse_double(s, v)) fail(line_no, "expected a number, got '" + s + "'");
  return v;
}

}  // namespace

void write_mesh(std::ostream& out, const TriMesh& mesh) {
  out << "mesh " << mesh.vertices.size() << ' ' << mesh.triangles.size() << '\n';
  for (const auto& v : mesh.vertices)
    out << format_double(v.x) << ' ' << format_double(v.y) << ' ' << format_double(v.z) << '\n';
  for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

TriMesh read_mesh(std::istream& in) {
  std::vector<std::string> f;
  int line_no = 0;
  if (!next_fields(in, f, line_no) || f.size() != 3 || f[0] != "mesh")
    fail(line_no, "expected header 'mesh V F'");
  const long long nv = to_int(f[1], line_no), nf = to_int(f[2], line_no);
  if (nv < 0 || nf < 0) fail(line_no, "negative counts");
  TriMesh mesh;
  mesh.vertices.reserve(static_cast<std::size_t>(nv));
  for (long long i = 0; i < nv; ++i) {
    if (!next_fields(in, f, line_no) || f.size() != 3) fail(line_no, "expected 'x y z'");
    mesh.vertices.push_back(
        {to_double(f[0], line_no), to_double(f[1], line_no), to_double(f[2], line_no)});
  }
  for (long long i = 0; i < nf; ++i) {
    if (!next_fields(in, f, line_no) || f.size() != 3) fail(line_no, "expected 'i j k'");
    std::array<int, 3> t{};
    for (int k = 0; k < 3; ++k) {
      const long long v = to_int(f[static_cast<std::size_t>(k)], line_no);
      if (v < 0 || v >= nv) fail(line_no, "vertex index out of range");
      t[static_cast<std::size_t>(k)] = static_cast<int>(v);
    }
    mesh.triangles.push_back(t);
  }
  if (next_fields(in, f, line_no)) fail(line_no, "trailing data");
  return mesh;
}

void save_mesh(const std::string& path, const TriMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_mesh(out, mesh);
  if (!out) throw IoError("write failed: " + path);
}

TriMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  try {
    return read_mesh(in);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_grid(std::ostream& out, const TorusGrid& grid) {
  out << "grid " << grid.dim() << ' ' << grid.res() << '\n';
  const auto& c = grid.cells();
  for (std::size_t i = 0; i < c.size();) {
    std::size_t j = i + 1;
    while (j < c.size() && c[j] == c[i]) ++j;
    out << (j - i) << ' ' << c[i] << '\n';
    i = j;
  }
}

TorusGrid read_grid(std::istream& in) {
  std::vector<std::string> f;
  int line_no = 0;
  if (!next_fields(in, f, line_no) || f.size() != 3 || f[0] != "grid")
    fail(line_no, "expected header 'grid N R'");
  const long long n = to_int(f[1], line_no), r = to_int(f[2], line_no);
  if (n < 1 || n > TorusGrid::kMaxDim || r < 1) fail(line_no, "bad grid shape");
  TorusGrid grid(static_cast<int>(n), static_cast<int>(r));
  std::size_t at = 0;
  while (next_fields(in, f, line_no)) {
    if (f.size() != 2) fail(line_no, "expected 'count value'");
    const long long count = to_int(f[0], line_no);
    const long long value = to_int(f[1], line_no);
    if (count < 1 || at + static_cast<std::size_t>(count) > grid.size())
      fail(line_no, "run overflows the grid");
    std::fill_n(grid.cells().begin() + static_cast<std::ptrdiff_t>(at), count,
                static_cast<std::int32_t>(value));
    at += static_cast<std::size_t>(count);
  }
  if (at != grid.size()) fail(line_no, "runs cover " + std::to_string(at) + " of " +
                                           std::to_string(grid.size()) + " cells");
  return grid;
}

void save_grid(const std::string& path, const TorusGrid& grid) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_grid(out, grid);
  if (!out) throw IoError("write failed: " + path);
}

TorusGrid load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  try {
    return read_grid(in);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace sepwidth::geom
