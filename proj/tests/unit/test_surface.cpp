#include <svem/error.hpp>
#include <svem/surface.hpp>

#include <fixtures.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace svem;

namespace {

// Five-point tangential Laplacian of u extended constantly along normals.
double fd_laplace_beltrami(const SmoothSurface& s, const ScalarField& u, const Point3& p, double step)
{
    const Point3 n = s.normal(p);
    const Point3 seed = std::abs(n.x()) < 0.9 ? Point3::UnitX() : Point3::UnitY();
    const Point3 t1 = (seed - seed.dot(n) * n).normalized();
    const Point3 t2 = n.cross(t1);
    const auto lifted = [&](const Point3& q) { return u(s.closest_point(q)); };
    const double center = lifted(p);
    double sum = 0.0;
    for (const Point3& t : {t1, t2}) sum += lifted(p + step * t) + lifted(p - step * t) - 2.0 * center;
    return sum / (step * step);
}

void check_residual(const BenchmarkProblem& problem, const std::vector<Point3>& samples)
{
    for (const Point3& p : samples) {
        const double lap = fd_laplace_beltrami(*problem.surface, problem.exact_u, p, 1e-4);
        const double f = problem.load_f(p);
        CHECK(std::abs(lap + f) <= 1e-5 * std::max(1.0, std::abs(f)));
    }
}

} // namespace

TEST_SUITE("surface")
{
    TEST_CASE("closest point examples")
    {
        const Sphere sphere;
        const Point3 q = sphere.closest_point({2, 0, 0});
        CHECK((q - Point3(1, 0, 0)).norm() < 1e-15);
        CHECK(sphere.signed_distance({2, 0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK((sphere.closest_point({0.6, 0.8, 0}) - Point3(0.6, 0.8, 0)).norm() < 1e-15);

        const Cylinder cyl(1.0, 0.0, 2.0);
        CHECK((cyl.closest_point({2, 0, 1}) - Point3(1, 0, 1)).norm() < 1e-15);
    }

    TEST_CASE("projection singularities")
    {
        CHECK_THROWS_AS(Sphere().closest_point(Point3::Zero()), Error);
        CHECK_THROWS_AS(Cylinder(1.0, 0.0, 2.0).closest_point({0, 0, 1}), Error);
        try {
            Sphere().normal(Point3::Zero());
            FAIL("expected DegeneratePoint");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::DegeneratePoint);
        }
    }

    TEST_CASE("Fermi decomposition and idempotence")
    {
        auto rng = testing::seeded_rng();
        std::uniform_real_distribution<double> coord(-1.6, 1.6);
        const Sphere sphere(1.3);
        const Cylinder cyl(0.8, -1.0, 3.0);
        for (int k = 0; k < 500; ++k) {
            Point3 p(coord(rng), coord(rng), coord(rng));
            if (p.norm() < 0.2) continue;
            const Point3 a = sphere.closest_point(p);
            CHECK(std::abs(sphere.signed_distance(a)) <= 1e-12);
            CHECK((a + sphere.signed_distance(p) * sphere.normal(a) - p).norm() <= 1e-12);
            CHECK((sphere.closest_point(a) - a).norm() <= 1e-12);

            Point3 c(coord(rng), coord(rng), 1.0 + coord(rng));
            if (std::hypot(c.x(), c.y()) < 0.2) continue;
            const Point3 b = cyl.closest_point(c);
            CHECK(std::abs(cyl.signed_distance(b)) <= 1e-12);
            CHECK((b + cyl.signed_distance(c) * cyl.normal(b) - c).norm() <= 1e-12);
            CHECK((cyl.closest_point(b) - b).norm() <= 1e-12);
        }
    }

    TEST_CASE("benchmark values")
    {
        const auto s = benchmark(BenchmarkName::SphereXY);
        CHECK(s.zero_mean_constrained);
        CHECK_FALSE(s.boundary_data.has_value());
        CHECK(s.load_f({1, 1, 0}) == 6.0);
        CHECK(s.exact_u({1, 0, 0}) == 0.0);

        const auto c = benchmark(BenchmarkName::CylinderExp);
        CHECK_FALSE(c.zero_mean_constrained);
        REQUIRE(c.boundary_data.has_value());
        CHECK(c.exact_u({1, 0, 2}) == doctest::Approx(3.0).epsilon(1e-15));
        CHECK(c.load_f({0, 1, 0}) == doctest::Approx(std::numbers::e).epsilon(1e-15));
        CHECK((*c.boundary_data)({0, -1, 0}) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
        CHECK(c.surface->has_boundary());
    }

    TEST_CASE("benchmark names")
    {
        CHECK(parse_benchmark_name("sphere-xy") == BenchmarkName::SphereXY);
        CHECK(parse_benchmark_name("sphere_xy") == BenchmarkName::SphereXY);
        CHECK(parse_benchmark_name("cylinder-exp") == BenchmarkName::CylinderExp);
        CHECK_FALSE(parse_benchmark_name("custom").has_value());
    }

    TEST_CASE("finite-difference Laplace-Beltrami residual")
    {
        auto rng = testing::seeded_rng(7);
        std::normal_distribution<double> gauss;
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        std::uniform_real_distribution<double> height(0.05, 1.95);

        std::vector<Point3> on_sphere;
        std::vector<Point3> on_cylinder;
        for (int k = 0; k < 1000; ++k) {
            on_sphere.push_back(Point3(gauss(rng), gauss(rng), gauss(rng)).normalized());
            const double t = angle(rng);
            on_cylinder.emplace_back(std::cos(t), std::sin(t), height(rng));
        }
        check_residual(benchmark(BenchmarkName::SphereXY), on_sphere);
        check_residual(benchmark(BenchmarkName::CylinderExp), on_cylinder);
    }
}
