#include <svem/error.hpp>
#include <svem/surface.hpp>

#include <algorithm>
#include <cmath>

namespace svem {

namespace {

constexpr double k_singular_ratio = 1e-14;

} // namespace

Sphere::Sphere(double radius)
    : m_radius(radius)
{
    if (!(radius > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "sphere radius must be positive");
    }
}

double Sphere::signed_distance(const Point3& p) const
{
    return p.norm() - m_radius;
}

Point3 Sphere::normal(const Point3& p) const
{
    const double r = p.norm();
    if (r <= k_singular_ratio * m_radius) {
        throw Error(ErrorKind::DegeneratePoint, "normal requested at the sphere center");
    }
    return p / r;
}

Point3 Sphere::closest_point(const Point3& p) const
{
    return m_radius * normal(p);
}

Cylinder::Cylinder(double radius, double z_min, double z_max)
    : m_radius(radius)
    , m_z_min(z_min)
    , m_z_max(z_max)
{
    if (!(radius > 0.0) || !(z_max > z_min)) {
        throw Error(ErrorKind::InvalidParameter, "cylinder needs radius > 0 and z_max > z_min");
    }
}

double Cylinder::signed_distance(const Point3& p) const
{
    return std::hypot(p.x(), p.y()) - m_radius;
}

Point3 Cylinder::normal(const Point3& p) const
{
    const double rho = std::hypot(p.x(), p.y());
    if (rho <= k_singular_ratio * m_radius) {
        throw Error(ErrorKind::DegeneratePoint, "normal requested on the cylinder axis");
    }
    return Point3(p.x() / rho, p.y() / rho, 0.0);
}

Point3 Cylinder::closest_point(const Point3& p) const
{
    const Point3 n = normal(p);
    return Point3(m_radius * n.x(), m_radius * n.y(), std::clamp(p.z(), m_z_min, m_z_max));
}

BenchmarkProblem benchmark(BenchmarkName name)
{
    BenchmarkProblem problem;
    switch (name) {
    case BenchmarkName::SphereXY:
        problem.name = "sphere-xy";
        problem.surface = std::make_shared<Sphere>(1.0);
        problem.exact_u = [](const Point3& p) { return p.x() * p.y(); };
        problem.load_f = [](const Point3& p) { return 6.0 * p.x() * p.y(); };
        problem.zero_mean_constrained = true;
        break;
    case BenchmarkName::CylinderExp: {
        problem.name = "cylinder-exp";
        problem.surface = std::make_shared<Cylinder>(1.0, 0.0, 2.0);
        auto exact = [](const Point3& p) { return std::exp(p.y()) + p.z(); };
        problem.exact_u = exact;
        problem.load_f = [](const Point3& p) {
            return (p.y() - p.x() * p.x()) * std::exp(p.y());
        };
        problem.boundary_data = exact;
        problem.zero_mean_constrained = false;
        break;
    }
    }
    return problem;
}

std::optional<BenchmarkName> parse_benchmark_name(const std::string& text)
{
    if (text == "sphere-xy" || text == "sphere_xy") return BenchmarkName::SphereXY;
    if (text == "cylinder-exp" || text == "cylinder_exp") return BenchmarkName::CylinderExp;
    return std::nullopt;
}

} // namespace svem
