#pragma once

#include <svem/mesh.hpp>

#include <optional>

namespace svem {

///
/// Pastes two meshes that meet along straight boundary segments.
///
/// Boundary vertices of `b` within `merge_tol` of a boundary vertex of `a`
/// are identified (coordinates averaged). Every remaining boundary vertex of
/// one mesh lying strictly inside a boundary edge of the other becomes a
/// vertex of that edge's face, inserted in order along the edge. Faces are
/// never split or removed, so a face receiving hanging nodes turns into a
/// polygon with collinear consecutive vertices.
///
/// The result lists the vertices of `a` first, then the unmerged vertices of
/// `b`; faces of `a` precede faces of `b`.
///
/// Default tolerance: 1e-9 times the diagonal of the joint bounding box.
///
/// Throws SeamMismatch if the meshes share no edge after pasting, a seam is
/// not straight, or a seam is only partially covered by the other mesh.
/// Throws ToleranceAmbiguity if one vertex is within tolerance of two
/// distinct vertices of the other mesh.
///
SurfaceMesh paste(const SurfaceMesh& a, const SurfaceMesh& b, std::optional<double> merge_tol = std::nullopt);

double default_merge_tolerance(const SurfaceMesh& a, const SurfaceMesh& b);

} // namespace svem
