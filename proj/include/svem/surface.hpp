#pragma once

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace svem {

using Point3 = Eigen::Vector3d;
using ScalarField = std::function<double(const Point3&)>;

///
/// Analytic smooth surface described through its closest-point (Fermi)
/// decomposition p = closest_point(p) + signed_distance(p) * normal(p).
///
/// Implementations are immutable and safe to share between threads.
///
class SmoothSurface {
public:
    virtual ~SmoothSurface() = default;

    virtual std::string name() const = 0;
    virtual double signed_distance(const Point3& p) const = 0;
    /// Unit normal at closest_point(p), pointing away from the enclosed side.
    virtual Point3 normal(const Point3& p) const = 0;
    virtual Point3 closest_point(const Point3& p) const = 0;
    virtual bool has_boundary() const = 0;
};

/// Sphere centered at the origin.
class Sphere final : public SmoothSurface {
public:
    explicit Sphere(double radius = 1.0);

    std::string name() const override { return "sphere"; }
    double signed_distance(const Point3& p) const override;
    Point3 normal(const Point3& p) const override;
    Point3 closest_point(const Point3& p) const override;
    bool has_boundary() const override { return false; }

    double radius() const { return m_radius; }

private:
    double m_radius;
};

/// Lateral surface of the cylinder x^2 + y^2 = r^2, z_min <= z <= z_max.
///
/// The distance is measured radially. closest_point clamps z into
/// [z_min, z_max]; for points inside the slab this is the exact radial
/// projection.
class Cylinder final : public SmoothSurface {
public:
    Cylinder(double radius, double z_min, double z_max);

    std::string name() const override { return "cylinder"; }
    double signed_distance(const Point3& p) const override;
    Point3 normal(const Point3& p) const override;
    Point3 closest_point(const Point3& p) const override;
    bool has_boundary() const override { return true; }

    double radius() const { return m_radius; }
    double z_min() const { return m_z_min; }
    double z_max() const { return m_z_max; }

private:
    double m_radius;
    double m_z_min;
    double m_z_max;
};

enum class BenchmarkName { SphereXY, CylinderExp };

/// -Laplace-Beltrami(u) = f on a surface, together with its exact solution.
struct BenchmarkProblem {
    std::string name;
    std::shared_ptr<const SmoothSurface> surface;
    ScalarField exact_u;
    ScalarField load_f;
    std::optional<ScalarField> boundary_data;
    bool zero_mean_constrained = false;
};

/// sphere_xy: unit sphere, u = xy, f = 6xy, zero-mean constraint.
/// cylinder_exp: unit cylinder 0 <= z <= 2, u = e^y + z, f = (y - x^2) e^y,
/// Dirichlet data equal to u.
BenchmarkProblem benchmark(BenchmarkName name);

/// Parses "sphere-xy" / "sphere_xy" / "cylinder-exp" / "cylinder_exp".
std::optional<BenchmarkName> parse_benchmark_name(const std::string& text);

} // namespace svem
