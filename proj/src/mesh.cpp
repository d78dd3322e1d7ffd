#include <svem/error.hpp>
#include <svem/mesh.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace svem {

namespace {

std::uint64_t edge_key(int a, int b)
{
    const auto lo = static_cast<std::uint32_t>(std::min(a, b));
    const auto hi = static_cast<std::uint32_t>(std::max(a, b));
    return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

struct EdgeUse {
    std::size_t face;
    int from;
};

using EdgeMap = std::unordered_map<std::uint64_t, std::vector<EdgeUse>>;

EdgeMap build_edge_map(const SurfaceMesh& mesh)
{
    EdgeMap edges;
    edges.reserve(mesh.n_faces() * 3);
    for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
        const Face& face = mesh.faces[f];
        for (std::size_t i = 0; i < face.size(); ++i) {
            const int a = face[i];
            const int b = face[(i + 1) % face.size()];
            edges[edge_key(a, b)].push_back({f, a});
        }
    }
    return edges;
}

double cross2(const Point2& a, const Point2& b)
{
    return a.x() * b.y() - a.y() * b.x();
}

bool segments_touch(const Point2& p1, const Point2& p2, const Point2& q1, const Point2& q2, double eps)
{
    const double d1 = cross2(q2 - q1, p1 - q1);
    const double d2 = cross2(q2 - q1, p2 - q1);
    const double d3 = cross2(p2 - p1, q1 - p1);
    const double d4 = cross2(p2 - p1, q2 - p1);
    if (((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
        ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))) {
        return true;
    }
    auto on_segment = [eps](const Point2& a, const Point2& b, const Point2& p, double d) {
        if (std::abs(d) > eps) return false;
        const Point2 ab = b - a;
        const double t = ab.dot(p - a);
        return t >= -eps && t <= ab.squaredNorm() + eps;
    };
    return on_segment(q1, q2, p1, d1) || on_segment(q1, q2, p2, d2) || on_segment(p1, p2, q1, d3) ||
           on_segment(p1, p2, q2, d4);
}

bool is_self_intersecting(const std::vector<Point2>& poly, double scale)
{
    const std::size_t n = poly.size();
    const double eps = 1e-12 * scale * scale;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_touch(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n], eps)) {
                return true;
            }
        }
    }
    return false;
}

// Sutherland-Hodgman clip of a convex polygon against {x : cross(b - a, x - a) >= 0}.
std::vector<Point2> clip_half_plane(const std::vector<Point2>& poly, const Point2& a, const Point2& b)
{
    std::vector<Point2> out;
    if (poly.empty()) return out;
    const Point2 dir = b - a;
    auto side = [&](const Point2& p) { return cross2(dir, p - a); };
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point2& cur = poly[i];
        const Point2& nxt = poly[(i + 1) % poly.size()];
        const double sc = side(cur);
        const double sn = side(nxt);
        if (sc >= 0.0) out.push_back(cur);
        if ((sc >= 0.0) != (sn >= 0.0)) {
            const double t = sc / (sc - sn);
            out.push_back(cur + t * (nxt - cur));
        }
    }
    return out;
}

double polygon_area(const std::vector<Point2>& poly)
{
    double twice = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        twice += cross2(poly[i], poly[(i + 1) % poly.size()]);
    }
    return 0.5 * twice;
}

// Chebyshev center of {x : n_i . x <= c_i}: every vertex of the LP in
// (x, y, r) is fixed by three active constraints, so the optimum is found by
// enumerating triples.
double largest_inscribed_radius(const ElementFrame& frame)
{
    const std::size_t n = frame.size();
    std::vector<double> offsets(n);
    for (std::size_t i = 0; i < n; ++i) {
        offsets[i] = frame.edge_normals[i].dot(frame.coords[i]);
    }
    const double feas_tol = 1e-12 * frame.diameter;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                Eigen::Matrix3d lhs;
                lhs << frame.edge_normals[i].x(), frame.edge_normals[i].y(), 1.0,
                    frame.edge_normals[j].x(), frame.edge_normals[j].y(), 1.0,
                    frame.edge_normals[k].x(), frame.edge_normals[k].y(), 1.0;
                if (std::abs(lhs.determinant()) < 1e-12) continue;
                const Eigen::Vector3d sol =
                    lhs.partialPivLu().solve(Eigen::Vector3d(offsets[i], offsets[j], offsets[k]));
                const double r = sol.z();
                if (r <= best) continue;
                const Point2 x(sol.x(), sol.y());
                bool feasible = true;
                for (std::size_t m = 0; m < n && feasible; ++m) {
                    feasible = frame.edge_normals[m].dot(x) + r <= offsets[m] + feas_tol;
                }
                if (feasible) best = r;
            }
        }
    }
    return best;
}

} // namespace

SurfaceMesh make_mesh(std::vector<Point3> vertices, std::vector<Face> faces)
{
    SurfaceMesh mesh;
    mesh.vertices = std::move(vertices);
    mesh.faces = std::move(faces);
    refresh_boundary_flags(mesh);
    return mesh;
}

void refresh_boundary_flags(SurfaceMesh& mesh)
{
    mesh.boundary.assign(mesh.n_vertices(), false);
    for (const Edge& e : boundary_edges(mesh)) {
        if (e.a >= 0 && static_cast<std::size_t>(e.a) < mesh.n_vertices()) mesh.boundary[e.a] = true;
        if (e.b >= 0 && static_cast<std::size_t>(e.b) < mesh.n_vertices()) mesh.boundary[e.b] = true;
    }
}

std::vector<Edge> boundary_edges(const SurfaceMesh& mesh)
{
    const EdgeMap edges = build_edge_map(mesh);
    std::vector<Edge> result;
    for (const Face& face : mesh.faces) {
        for (std::size_t i = 0; i < face.size(); ++i) {
            const int a = face[i];
            const int b = face[(i + 1) % face.size()];
            if (edges.at(edge_key(a, b)).size() == 1) result.push_back({a, b});
        }
    }
    return result;
}

std::size_t count_edges(const SurfaceMesh& mesh)
{
    return build_edge_map(mesh).size();
}

std::vector<std::size_t> face_size_histogram(const SurfaceMesh& mesh)
{
    std::vector<std::size_t> hist;
    for (const Face& face : mesh.faces) {
        if (face.size() >= hist.size()) hist.resize(face.size() + 1, 0);
        ++hist[face.size()];
    }
    return hist;
}

ElementFrame build_frame(std::span<const Point3> polygon)
{
    const std::size_t n = polygon.size();
    if (n < 3) {
        throw Error(ErrorKind::DegenerateFace, "face has fewer than 3 vertices");
    }

    ElementFrame frame;
    frame.origin = Point3::Zero();
    for (const Point3& p : polygon) frame.origin += p;
    frame.origin /= static_cast<double>(n);

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    Point3 newell = Point3::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const Point3 d = polygon[i] - frame.origin;
        cov += d * d.transpose();
        newell += (polygon[i] - frame.origin).cross(polygon[(i + 1) % n] - frame.origin);
    }
    if (newell.norm() == 0.0) {
        throw Error(ErrorKind::DegenerateFace, "face vertices are collinear");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    frame.normal = eig.eigenvectors().col(0).normalized();
    if (frame.normal.dot(newell) < 0.0) frame.normal = -frame.normal;

    // In-plane basis anchored on the longest projected edge from vertex 0.
    Point3 first_edge = polygon[1] - polygon[0];
    first_edge -= first_edge.dot(frame.normal) * frame.normal;
    if (first_edge.norm() == 0.0) {
        first_edge = eig.eigenvectors().col(2);
    }
    frame.tangent_u = first_edge.normalized();
    frame.tangent_v = frame.normal.cross(frame.tangent_u);

    frame.coords.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point3 d = polygon[i] - frame.origin;
        frame.coords[i] = Point2(d.dot(frame.tangent_u), d.dot(frame.tangent_v));
        frame.planarity_defect = std::max(frame.planarity_defect, std::abs(d.dot(frame.normal)));
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            frame.diameter = std::max(frame.diameter, (frame.coords[i] - frame.coords[j]).norm());
        }
    }

    double twice_area = 0.0;
    Point2 moment = Point2::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& p = frame.coords[i];
        const Point2& q = frame.coords[(i + 1) % n];
        const double c = cross2(p, q);
        twice_area += c;
        moment += c * (p + q);
    }
    frame.area = 0.5 * twice_area;
    if (!(frame.area > 1e-14 * frame.diameter * frame.diameter)) {
        throw Error(ErrorKind::DegenerateFace, "projected face has non-positive area");
    }
    frame.centroid = moment / (3.0 * twice_area);

    frame.edge_normals.resize(n);
    frame.edge_lengths.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 e = frame.coords[(i + 1) % n] - frame.coords[i];
        const double len = e.norm();
        if (len == 0.0) {
            throw Error(ErrorKind::DegenerateFace, "face has a zero-length edge");
        }
        frame.edge_lengths[i] = len;
        frame.edge_normals[i] = Point2(e.y(), -e.x()) / len;
    }

    if (is_self_intersecting(frame.coords, frame.diameter)) {
        throw Error(ErrorKind::DegenerateFace, "face boundary self-intersects");
    }
    return frame;
}

ElementFrame build_frame(const SurfaceMesh& mesh, std::size_t face_index)
{
    const Face& face = mesh.faces.at(face_index);
    std::vector<Point3> polygon;
    polygon.reserve(face.size());
    for (int v : face) {
        if (v < 0 || static_cast<std::size_t>(v) >= mesh.n_vertices()) {
            throw Error(ErrorKind::InvalidMesh, "face vertex index out of range");
        }
        polygon.push_back(mesh.vertices[v]);
    }
    return build_frame(polygon);
}

FaceRegularity face_regularity(const ElementFrame& frame)
{
    FaceRegularity reg;
    reg.diameter = frame.diameter;
    reg.min_vertex_distance = std::numeric_limits<double>::infinity();
    const std::size_t n = frame.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            reg.min_vertex_distance = std::min(reg.min_vertex_distance, (frame.coords[i] - frame.coords[j]).norm());
        }
    }

    Point2 lo = frame.coords[0];
    Point2 hi = frame.coords[0];
    for (const Point2& p : frame.coords) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    std::vector<Point2> kernel = {lo, Point2(hi.x(), lo.y()), hi, Point2(lo.x(), hi.y())};
    for (std::size_t i = 0; i < n && !kernel.empty(); ++i) {
        kernel = clip_half_plane(kernel, frame.coords[i], frame.coords[(i + 1) % n]);
    }
    const bool kernel_has_area = kernel.size() >= 3 && polygon_area(kernel) > 1e-14 * frame.diameter * frame.diameter;
    reg.kernel = std::move(kernel);
    reg.rho = kernel_has_area ? largest_inscribed_radius(frame) : 0.0;
    reg.star_shaped = reg.rho > 0.0;
    return reg;
}

RegularityReport regularity(const SurfaceMesh& mesh)
{
    RegularityReport report;
    report.n_elements = mesh.n_faces();
    report.n_vertices = mesh.n_vertices();
    report.gamma1 = std::numeric_limits<double>::infinity();
    report.gamma2 = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
        const ElementFrame frame = build_frame(mesh, f);
        const FaceRegularity reg = face_regularity(frame);
        if (!reg.star_shaped) {
            report.valid = false;
            report.empty_kernel_faces.push_back(f);
        }
        report.gamma1 = std::min(report.gamma1, reg.rho / frame.diameter);
        report.gamma2 = std::min(report.gamma2, reg.min_vertex_distance / frame.diameter);
        report.h = std::max(report.h, frame.diameter);
        report.max_planarity_defect_ratio = std::max(
            report.max_planarity_defect_ratio, frame.planarity_defect / (frame.diameter * frame.diameter));
    }
    if (mesh.n_faces() == 0) {
        report.gamma1 = 0.0;
        report.gamma2 = 0.0;
        report.valid = false;
    }
    return report;
}

double mesh_size(const SurfaceMesh& mesh)
{
    double h = 0.0;
    for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
        h = std::max(h, build_frame(mesh, f).diameter);
    }
    return h;
}

std::vector<Diagnostic> validate(const SurfaceMesh& mesh, const SmoothSurface* surface)
{
    std::vector<Diagnostic> diags;
    auto report = [&diags](std::string kind, std::string detail, std::optional<std::size_t> face,
                           std::optional<std::size_t> vertex) {
        diags.push_back({std::move(kind), std::move(detail), face, vertex});
    };

    bool faces_ok = true;
    for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
        const Face& face = mesh.faces[f];
        if (face.size() < 3) {
            report("InvalidFace", "face has fewer than 3 vertices", f, std::nullopt);
            faces_ok = false;
            continue;
        }
        std::unordered_set<int> seen;
        for (int v : face) {
            if (v < 0 || static_cast<std::size_t>(v) >= mesh.n_vertices()) {
                report("InvalidFace", "vertex index out of range", f, std::nullopt);
                faces_ok = false;
                break;
            }
            if (!seen.insert(v).second) {
                report("InvalidFace", "repeated vertex index", f, static_cast<std::size_t>(v));
                faces_ok = false;
                break;
            }
        }
    }
    if (!faces_ok) return diags;

    const EdgeMap edges = build_edge_map(mesh);
    std::unordered_set<std::uint64_t> reported;
    for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
        const Face& face = mesh.faces[f];
        for (std::size_t i = 0; i < face.size(); ++i) {
            const int a = face[i];
            const int b = face[(i + 1) % face.size()];
            const auto key = edge_key(a, b);
            const auto& uses = edges.at(key);
            if (uses.size() <= 1 || reported.count(key)) continue;
            reported.insert(key);
            std::ostringstream msg;
            msg << "edge (" << a << "," << b << ")";
            if (uses.size() > 2) {
                msg << " shared by " << uses.size() << " faces";
                report("NonManifoldEdge", msg.str(), f, std::nullopt);
            } else if (uses[0].from == uses[1].from) {
                msg << " traversed in the same direction by faces " << uses[0].face << " and " << uses[1].face;
                report("InconsistentOrientation", msg.str(), f, std::nullopt);
            }
        }
    }

    // Hanging nodes: a boundary vertex in the interior of another boundary edge.
    const std::vector<Edge> bedges = boundary_edges(mesh);
    std::vector<int> bverts;
    for (const Edge& e : bedges) {
        bverts.push_back(e.a);
        bverts.push_back(e.b);
    }
    std::sort(bverts.begin(), bverts.end());
    bverts.erase(std::unique(bverts.begin(), bverts.end()), bverts.end());
    for (const Edge& e : bedges) {
        const Point3& p = mesh.vertices[e.a];
        const Point3 d = mesh.vertices[e.b] - p;
        const double len2 = d.squaredNorm();
        const double tol = 1e-9 * std::sqrt(len2);
        for (int v : bverts) {
            if (v == e.a || v == e.b) continue;
            const Point3 w = mesh.vertices[v] - p;
            const double t = w.dot(d) / len2;
            if (t <= 1e-9 || t >= 1.0 - 1e-9) continue;
            if ((w - t * d).norm() <= tol) {
                std::ostringstream msg;
                msg << "hanging node " << v << " inside edge (" << e.a << "," << e.b << ")";
                report("NonManifoldEdge", msg.str(), std::nullopt, static_cast<std::size_t>(v));
            }
        }
    }

    for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
        ElementFrame frame;
        try {
            frame = build_frame(mesh, f);
        } catch (const Error& err) {
            report("DegenerateFace", err.what(), f, std::nullopt);
            continue;
        }
        const double h2 = frame.diameter * frame.diameter;
        if (frame.planarity_defect > k_max_planarity_defect_ratio * h2) {
            std::ostringstream msg;
            msg << "planarity defect " << frame.planarity_defect << " exceeds " << k_max_planarity_defect_ratio
                << " h_E^2";
            report("NonPlanarFace", msg.str(), f, std::nullopt);
        }
        if (!face_regularity(frame).star_shaped) {
            report("EmptyKernel", "face is not star-shaped with respect to any disc", f, std::nullopt);
        }
        if (surface != nullptr) {
            double max_d = 0.0;
            for (const Point3& p : face_sample_points(mesh, f, 4)) {
                max_d = std::max(max_d, std::abs(surface->signed_distance(p)));
            }
            if (max_d > h2) {
                std::ostringstream msg;
                msg << "sampled distance " << max_d << " exceeds h_E^2 = " << h2;
                report("FaceFarFromSurface", msg.str(), f, std::nullopt);
            }
        }
    }

    if (surface != nullptr) {
        for (std::size_t v = 0; v < mesh.n_vertices(); ++v) {
            const double d = surface->signed_distance(mesh.vertices[v]);
            if (std::abs(d) > k_vertex_on_surface_tol) {
                std::ostringstream msg;
                msg << "vertex at distance " << d << " from " << surface->name();
                report("OffSurfaceVertex", msg.str(), std::nullopt, v);
            }
        }
    }
    return diags;
}

std::vector<Point3> face_sample_points(const SurfaceMesh& mesh, std::size_t face_index, int resolution)
{
    const Face& face = mesh.faces.at(face_index);
    const int q = std::max(resolution, 1);
    Point3 center = Point3::Zero();
    for (int v : face) center += mesh.vertices[v];
    center /= static_cast<double>(face.size());

    std::vector<Point3> samples;
    samples.reserve(face.size() * static_cast<std::size_t>((q + 1) * (q + 2) / 2));
    for (std::size_t i = 0; i < face.size(); ++i) {
        const Point3& a = mesh.vertices[face[i]];
        const Point3& b = mesh.vertices[face[(i + 1) % face.size()]];
        for (int s = 0; s <= q; ++s) {
            for (int t = 0; s + t <= q; ++t) {
                const double ws = static_cast<double>(s) / q;
                const double wt = static_cast<double>(t) / q;
                samples.push_back((1.0 - ws - wt) * center + ws * a + wt * b);
            }
        }
    }
    return samples;
}

} // namespace svem
