#include <svem/error.hpp>
#include <svem/generators.hpp>
#include <svem/mesh.hpp>
#include <svem/pasting.hpp>

#include <fixtures.hpp>

#include <doctest.h>

#include <algorithm>
#include <array>
#include <vector>

using namespace svem;

namespace {

using Cycle = std::vector<std::array<double, 3>>;

// Face as a coordinate cycle rotated to start at its smallest vertex.
std::vector<Cycle> face_cycles(const SurfaceMesh& mesh)
{
    std::vector<Cycle> out;
    for (const Face& face : mesh.faces) {
        Cycle c;
        for (int v : face) c.push_back({mesh.vertices[v].x(), mesh.vertices[v].y(), mesh.vertices[v].z()});
        std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
        out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t faces_of_size(const SurfaceMesh& mesh, std::size_t k)
{
    const auto hist = face_size_histogram(mesh);
    return k < hist.size() ? hist[k] : 0;
}

// Vertices of a face whose two neighbours are collinear with it.
int hanging_nodes(const SurfaceMesh& mesh, const Face& face)
{
    int count = 0;
    const std::size_t n = face.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point3& p = mesh.vertices[face[(i + n - 1) % n]];
        const Point3& q = mesh.vertices[face[i]];
        const Point3& r = mesh.vertices[face[(i + 1) % n]];
        if ((q - p).cross(r - q).norm() <= 1e-12 * (q - p).norm() * (r - q).norm()) ++count;
    }
    return count;
}

ErrorKind paste_error(const SurfaceMesh& a, const SurfaceMesh& b, std::optional<double> tol = std::nullopt)
{
    try {
        paste(a, b, tol);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("paste unexpectedly succeeded");
    return ErrorKind::InvalidMesh;
}

} // namespace

TEST_SUITE("pasting")
{
    TEST_CASE("pasted cylinder counts")
    {
        const Cylinder cyl(1.0, 0.0, 2.0);
        for (int n : {1, 2, 3, 5, 10}) {
            CAPTURE(n);
            const auto a = cylinder_half(CylinderHalf::Upper, n);
            const auto b = cylinder_half(CylinderHalf::Lower, n);
            const auto m = paste(a, b);
            const auto un = static_cast<std::size_t>(n);
            CHECK(m.n_faces() == 10 * un * un);
            CHECK(faces_of_size(m, 4) == 2 * un * (5 * un - 1));
            CHECK(faces_of_size(m, 5) == 2 * un);
            CHECK(m.n_vertices() == a.n_vertices() + b.n_vertices() - 2 * (un + 1));
            CHECK(validate(m, &cyl).empty());
            for (const Face& face : m.faces) CHECK(hanging_nodes(m, face) == (face.size() == 5 ? 1 : 0));
            // Only the z = 0 and z = 2 circles remain boundary.
            for (std::size_t v = 0; v < m.n_vertices(); ++v) {
                const double z = m.vertices[v].z();
                CHECK(m.boundary[v] == (std::abs(z) < 1e-12 || std::abs(z - 2.0) < 1e-12));
            }
        }
    }

    TEST_CASE("paste is symmetric up to ordering")
    {
        const auto a = cylinder_half(CylinderHalf::Upper, 3);
        const auto b = cylinder_half(CylinderHalf::Lower, 3);
        CHECK(face_cycles(paste(a, b)) == face_cycles(paste(b, a)));
    }

    TEST_CASE("conforming strips paste without pentagons")
    {
        const auto a = testing::flat_grid(0, 1, 0, 1, 1, 2);
        const auto b = testing::flat_grid(1, 2, 0, 1, 1, 2);
        const auto m = paste(a, b);
        CHECK(m.n_faces() == 4u);
        CHECK(faces_of_size(m, 4) == 4u);
        CHECK(faces_of_size(m, 5) == 0u);
        CHECK(m.n_vertices() == 9u);
        CHECK(validate(m).empty());
    }

    TEST_CASE("2x1 against 1x1 square gives one pentagon")
    {
        const auto left = testing::flat_grid(-1, 0, 0, 1, 1, 2);
        const auto right = testing::flat_grid(0, 1, 0, 1, 1, 1);
        const auto m = paste(left, right);
        REQUIRE(m.n_faces() == 3u);
        CHECK(m.n_vertices() == 8u);
        CHECK(count_edges(m) == 10u);
        CHECK(validate(m).empty());
        const Face& pent = m.faces[2];
        REQUIRE(pent.size() == 5u);
        const bool has_mid = std::any_of(pent.begin(), pent.end(), [&](int v) {
            return (m.vertices[v] - Point3(0, 0.5, 0)).norm() < 1e-15;
        });
        CHECK(has_mid);
        CHECK(hanging_nodes(m, pent) == 1);
        // Interior edges: one inside the left strip and two along the seam.
        CHECK(boundary_edges(m).size() == 7u);
    }

    TEST_CASE("seam errors")
    {
        const auto square = testing::flat_grid(0, 1, 0, 1, 1, 1);
        CHECK(paste_error(square, testing::flat_grid(5, 6, 0, 1, 1, 1)) == ErrorKind::SeamMismatch);
        // Right strip is twice as tall: the seam is only partly shared.
        CHECK(paste_error(square, testing::flat_grid(1, 2, 0, 2, 1, 2)) == ErrorKind::SeamMismatch);
        // One right vertex within tolerance of two left vertices.
        CHECK(paste_error(testing::flat_grid(0, 1, 0, 1, 1, 2), testing::flat_grid(1, 2, 0, 1, 1, 1), 0.6) ==
              ErrorKind::ToleranceAmbiguity);
    }

    TEST_CASE("bent seams are rejected")
    {
        // A 2x2 block with one quadrant missing, pasted with the missing
        // quadrant: the seam turns a corner.
        const std::vector<Point3> v{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {1, 1, 0},
                                    {2, 1, 0}, {0, 2, 0}, {1, 2, 0}};
        const auto ell = make_mesh(v, {{0, 1, 4, 3}, {1, 2, 5, 4}, {3, 4, 7, 6}});
        const auto corner = testing::flat_grid(1, 2, 1, 2, 1, 1);
        CHECK(paste_error(ell, corner) == ErrorKind::SeamMismatch);
    }

    TEST_CASE("default tolerance scales with the bounding box")
    {
        const auto a = testing::flat_grid(0, 3, 0, 4, 1, 1);
        const auto b = testing::flat_grid(3, 6, 0, 4, 1, 1);
        CHECK(default_merge_tolerance(a, b) == doctest::Approx(1e-9 * std::sqrt(36.0 + 16.0)).epsilon(1e-12));
    }
}
