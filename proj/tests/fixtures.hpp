#pragma once

#include <svem/mesh.hpp>
#include <svem/pasting.hpp>
#include <svem/surface.hpp>

#include <Eigen/Geometry>

#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace svem::testing {

/// The plane z = 0, for flat patch tests.
class Plane final : public SmoothSurface {
public:
    std::string name() const override { return "plane"; }
    double signed_distance(const Point3& p) const override { return p.z(); }
    Point3 normal(const Point3&) const override { return Point3::UnitZ(); }
    Point3 closest_point(const Point3& p) const override { return {p.x(), p.y(), 0.0}; }
    bool has_boundary() const override { return true; }
};

inline std::vector<Point3> unit_triangle()
{
    return {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
}

inline std::vector<Point3> unit_square()
{
    return {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
}

inline std::vector<Point3> regular_polygon(int n, double radius = 1.0)
{
    std::vector<Point3> pts;
    for (int k = 0; k < n; ++k) {
        const double t = 2.0 * std::numbers::pi * k / n;
        pts.emplace_back(radius * std::cos(t), radius * std::sin(t), 0.0);
    }
    return pts;
}

/// Unit square with a hanging node in the middle of its top edge.
inline std::vector<Point3> degenerate_pentagon()
{
    return {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0.5, 1, 0}, {0, 1, 0}};
}

struct NamedPolygon {
    std::string name;
    std::vector<Point3> points;
};

/// Triangle, square, regular 6- to 12-gons and the degenerate pentagon.
inline std::vector<NamedPolygon> polygon_fixtures()
{
    std::vector<NamedPolygon> out{{"triangle", unit_triangle()}, {"square", unit_square()}};
    for (int n = 6; n <= 12; ++n) out.push_back({std::to_string(n) + "-gon", regular_polygon(n)});
    out.push_back({"degenerate pentagon", degenerate_pentagon()});
    return out;
}

/// Rotation about a fixed oblique axis followed by a translation.
inline std::vector<Point3> rigid_motion(const std::vector<Point3>& pts)
{
    const Eigen::Matrix3d r = Eigen::AngleAxisd(0.7, Point3(1.0, -2.0, 0.5).normalized()).toRotationMatrix();
    const Point3 shift(3.0, -1.5, 2.25);
    std::vector<Point3> out;
    for (const Point3& p : pts) out.push_back(r * p + shift);
    return out;
}

inline std::vector<Point3> scaled(const std::vector<Point3>& pts, double s)
{
    std::vector<Point3> out;
    for (const Point3& p : pts) out.push_back(s * p);
    return out;
}

/// Structured quad grid of [x0, x1] x [y0, y1] in the plane z = 0.
inline SurfaceMesh flat_grid(double x0, double x1, double y0, double y1, int nx, int ny)
{
    std::vector<Point3> v;
    std::vector<Face> f;
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            v.emplace_back(x0 + (x1 - x0) * i / nx, y0 + (y1 - y0) * j / ny, 0.0);
        }
    }
    const auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) f.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    }
    return make_mesh(std::move(v), std::move(f));
}

///
/// The unit square [0, 1]^2 meshed with mixed polygons and one nonconforming
/// seam at x = 0.5.
///
/// Left half: a 3 x 4 vertex grid with perturbed interior vertices; two
/// cells are split into triangles and two are merged into a hexagon.
/// Right half: a 1 x 3 quad strip, so the pasted seam carries hanging nodes
/// on both sides.
///
inline SurfaceMesh mixed_patch_mesh()
{
    const int nx = 2;
    const int ny = 4;
    std::vector<Point3> v;
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            Point3 p(0.5 * i / nx, 1.0 * j / ny, 0.0);
            if (i > 0 && i < nx && j > 0 && j < ny) p += Point3(0.03 * ((j % 2) ? 1 : -1), 0.02 * (j - 2), 0.0);
            v.push_back(p);
        }
    }
    const auto id = [](int i, int j) { return j * (nx + 1) + i; };
    std::vector<Face> f;
    // Row 0: two triangles, then a quad.
    f.push_back({id(0, 0), id(1, 0), id(1, 1)});
    f.push_back({id(0, 0), id(1, 1), id(0, 1)});
    f.push_back({id(1, 0), id(2, 0), id(2, 1), id(1, 1)});
    // Rows 1-2 of column 0 merged into a hexagon; column 1 stays quads.
    f.push_back({id(0, 1), id(1, 1), id(1, 2), id(1, 3), id(0, 3), id(0, 2)});
    f.push_back({id(1, 1), id(2, 1), id(2, 2), id(1, 2)});
    f.push_back({id(1, 2), id(2, 2), id(2, 3), id(1, 3)});
    // Row 3: quads.
    f.push_back({id(0, 3), id(1, 3), id(1, 4), id(0, 4)});
    f.push_back({id(1, 3), id(2, 3), id(2, 4), id(1, 4)});
    const SurfaceMesh left = make_mesh(std::move(v), std::move(f));
    const SurfaceMesh right = flat_grid(0.5, 1.0, 0.0, 1.0, 1, 3);
    return paste(left, right);
}

inline std::shared_ptr<const SmoothSurface> plane()
{
    return std::make_shared<Plane>();
}

/// Linear Dirichlet problem u = a + b x + c y with f = 0 on the plane.
inline BenchmarkProblem linear_patch_problem(double a, double b, double c)
{
    BenchmarkProblem p;
    p.name = "linear-patch";
    p.surface = plane();
    p.exact_u = [a, b, c](const Point3& x) { return a + b * x.x() + c * x.y(); };
    p.load_f = [](const Point3&) { return 0.0; };
    p.boundary_data = p.exact_u;
    p.zero_mean_constrained = false;
    return p;
}

/// P1 FEM reference matrices of a triangle, assembled by hand from the
/// barycentric gradients.
inline std::pair<Eigen::Matrix3d, Eigen::Matrix3d> fem_triangle(const Point3& a, const Point3& b, const Point3& c)
{
    const Point3 n = (b - a).cross(c - a);
    const double area = 0.5 * n.norm();
    const Point3 nu = n.normalized();
    // grad(lambda_i) = nu x (opposite edge) / (2 area)
    const std::array<Point3, 3> g{nu.cross(c - b) / (2 * area), nu.cross(a - c) / (2 * area),
                                  nu.cross(b - a) / (2 * area)};
    Eigen::Matrix3d k;
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            k(i, j) = area * g[i].dot(g[j]);
            m(i, j) = area / 12.0 * (i == j ? 2.0 : 1.0);
        }
    }
    return {k, m};
}

inline std::mt19937_64 seeded_rng(unsigned seed = 20240611u)
{
    return std::mt19937_64(seed);
}

} // namespace svem::testing
