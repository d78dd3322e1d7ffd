#pragma once

#include <svem/mesh.hpp>

namespace svem {

///
/// Triangle/hexagon polygonation of the unit sphere.
///
/// The icosahedron is refined `level` times by 1-to-4 splitting with the new
/// edge midpoints projected onto the sphere. Inside each icosahedral face the
/// refined vertices form a triangular lattice (i, j, n - i - j) with
/// n = 2^level; every lattice point strictly inside the face with all three
/// indices even has its 6-triangle fan merged into a hexagon and is removed.
/// No two such fans share a triangle. All remaining faces are triangles, so
/// levels 0 to 2 are triangle-only.
///
SurfaceMesh sphere_hybrid(int level);

enum class CylinderHalf { Upper, Lower };

///
/// Structured rectangle meshes of the two halves of the cylinder
/// x^2 + y^2 = 1, 0 <= z <= 2.
///
/// Upper (y >= 0): grid (cos(i pi / 4N), sin(i pi / 4N), j / N),
///   i = 0..4N, j = 0..2N, 8N^2 rectangles.
/// Lower (y <= 0): grid (cos((i / 2N + 1) pi), sin((i / 2N + 1) pi), 2j / N),
///   i = 0..2N, j = 0..N, 2N^2 rectangles.
///
SurfaceMesh cylinder_half(CylinderHalf which, int n);

/// Mesh-size parameter of the pasted cylinder family, 2 sin(pi / 8N).
double cylinder_nominal_h(int n);

/// Pasted upper and lower cylinder halves for resolution N.
SurfaceMesh cylinder_pasted(int n);

} // namespace svem
