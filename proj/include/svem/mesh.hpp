#pragma once

#include <svem/surface.hpp>

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace svem {

using Point2 = Eigen::Vector2d;
using Face = std::vector<int>;

///
/// Polygonal surface mesh in R^3. Faces are vertex-index cycles oriented
/// counterclockwise with respect to the outward surface normal. Indices are
/// 0-based.
///
struct SurfaceMesh {
    std::vector<Point3> vertices;
    std::vector<Face> faces;
    /// Per-vertex flag: vertex lies on a topological boundary edge.
    std::vector<bool> boundary;

    std::size_t n_vertices() const { return vertices.size(); }
    std::size_t n_faces() const { return faces.size(); }
};

/// Builds a mesh and derives the boundary flags from its topology.
SurfaceMesh make_mesh(std::vector<Point3> vertices, std::vector<Face> faces);

/// Recomputes `mesh.boundary` from edges used by exactly one face.
void refresh_boundary_flags(SurfaceMesh& mesh);

struct Edge {
    int a;
    int b;
};

/// Directed edges used by exactly one face, in face order.
std::vector<Edge> boundary_edges(const SurfaceMesh& mesh);

std::size_t count_edges(const SurfaceMesh& mesh);

/// Number of faces with each vertex count, indexed by vertex count.
std::vector<std::size_t> face_size_histogram(const SurfaceMesh& mesh);

///
/// Planar chart of one polygonal element.
///
/// The element is placed in the least-squares plane of its vertices, with
/// the in-plane basis oriented so that the vertex cycle is counterclockwise.
/// All 2D quantities are expressed relative to `origin` (the vertex mean).
///
struct ElementFrame {
    Point3 origin;
    Point3 tangent_u;
    Point3 tangent_v;
    Point3 normal;
    std::vector<Point2> coords;
    double area = 0.0;
    double diameter = 0.0;
    Point2 centroid;
    /// Edge i runs from vertex i to vertex i+1.
    std::vector<Point2> edge_normals;
    std::vector<double> edge_lengths;
    double planarity_defect = 0.0;

    std::size_t size() const { return coords.size(); }
    Point3 to_world(const Point2& q) const { return origin + q.x() * tangent_u + q.y() * tangent_v; }
};

ElementFrame build_frame(std::span<const Point3> polygon);
ElementFrame build_frame(const SurfaceMesh& mesh, std::size_t face_index);

/// Star-shapedness data for one element, computed in its planar chart.
struct FaceRegularity {
    /// Kernel polygon (intersection of the inner half-planes of all edges).
    std::vector<Point2> kernel;
    /// Radius of the largest disc contained in the kernel; 0 if the kernel is empty.
    double rho = 0.0;
    double diameter = 0.0;
    double min_vertex_distance = 0.0;
    bool star_shaped = false;
};

FaceRegularity face_regularity(const ElementFrame& frame);

struct RegularityReport {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double h = 0.0;
    double max_planarity_defect_ratio = 0.0;
    std::size_t n_elements = 0;
    std::size_t n_vertices = 0;
    bool valid = true;
    /// Faces whose kernel is empty.
    std::vector<std::size_t> empty_kernel_faces;
};

RegularityReport regularity(const SurfaceMesh& mesh);

/// Largest element diameter.
double mesh_size(const SurfaceMesh& mesh);

struct Diagnostic {
    std::string kind;
    std::string detail;
    std::optional<std::size_t> face;
    std::optional<std::size_t> vertex;
};

/// Maximum tolerated planarity defect, relative to h_E^2.
inline constexpr double k_max_planarity_defect_ratio = 0.5;
/// Vertices farther than this from the smooth surface are reported.
inline constexpr double k_vertex_on_surface_tol = 1e-10;

///
/// Structural and geometric checks. Returns an empty list for a valid mesh.
///
/// Kinds: InvalidFace, NonManifoldEdge, InconsistentOrientation,
/// DegenerateFace, NonPlanarFace, EmptyKernel, OffSurfaceVertex,
/// FaceFarFromSurface.
///
std::vector<Diagnostic> validate(const SurfaceMesh& mesh, const SmoothSurface* surface = nullptr);

///
/// Sample points of a face: the vertex-centroid fan of the face is split
/// into triangles (centroid, v_i, v_{i+1}), and each fan triangle is
/// sampled on a barycentric lattice of the given resolution, i.e.
/// (resolution+1)(resolution+2)/2 points per fan triangle.
///
std::vector<Point3> face_sample_points(const SurfaceMesh& mesh, std::size_t face_index, int resolution);

} // namespace svem
