#pragma once

#include <iosfwd>
#include <string>

#include "sepwidth/geom/grid.hpp"
#include "sepwidth/geom/mesh.hpp"

namespace sepwidth::geom {

// Mesh files:  `mesh V F`, then V lines `x y z`, then F lines `i j k`
// (zero-based). Doubles use the shortest round-trip form. Lines starting
// with '#' and blank lines are skipped on input.
void write_mesh(std::ostream& out, const TriMesh& mesh);
TriMesh read_mesh(std::istream& in);
void save_mesh(const std::string& path, const TriMesh& mesh);
TriMesh load_mesh(const std::string& path);

// Grid files:  `grid N R`, then run-length lines `count value` covering the
// cells in row-major order (last axis fastest).
void write_grid(std::ostream& out, const TorusGrid& grid);
TorusGrid read_grid(std::istream& in);
void save_grid(const std::string& path, const TorusGrid& grid);
TorusGrid load_grid(const std::string& path);

}  // namespace sepwidth::geom
