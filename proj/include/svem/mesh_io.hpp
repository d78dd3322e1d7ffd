#pragma once

#include <svem/mesh.hpp>

#include <iosfwd>
#include <string>

namespace svem {

// OFF polygon files:
//   OFF
//   <n_vertices> <n_faces> 0
//   x y z                    (n_vertices lines, 17 significant digits)
//   m i0 i1 ... i(m-1)       (n_faces lines, 0-based)
// '#' comments and blank lines are skipped on read.

SurfaceMesh read_off(std::istream& in);
SurfaceMesh read_off_file(const std::string& path);

void write_off(std::ostream& out, const SurfaceMesh& mesh);
void write_off_file(const std::string& path, const SurfaceMesh& mesh);

} // namespace svem
