#include <svem/error.hpp>
#include <svem/generators.hpp>
#include <svem/pasting.hpp>

#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

namespace svem {

namespace {

struct Icosahedron {
    std::array<Point3, 12> vertices;
    std::array<std::array<int, 3>, 20> faces;
};

Icosahedron make_icosahedron()
{
    const double t = std::numbers::phi;
    Icosahedron ico{
        {Point3(-1, t, 0), Point3(1, t, 0), Point3(-1, -t, 0), Point3(1, -t, 0), Point3(0, -1, t),
         Point3(0, 1, t), Point3(0, -1, -t), Point3(0, 1, -t), Point3(t, 0, -1), Point3(t, 0, 1),
         Point3(-t, 0, -1), Point3(-t, 0, 1)},
        {{{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
          {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
          {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}}}};
    for (auto& v : ico.vertices) v.normalize();
    for (auto& f : ico.faces) {
        const Point3& a = ico.vertices[f[0]];
        const Point3 n = (ico.vertices[f[1]] - a).cross(ico.vertices[f[2]] - a);
        if (n.dot(a) < 0.0) std::swap(f[1], f[2]);
    }
    return ico;
}

// Refined lattice of one icosahedral face, stored row-major in (i, j) with
// i + j <= n; point (i, j) sits at barycentric weights (n - i - j, i, j).
class FaceLattice {
public:
    FaceLattice(const Point3& a, const Point3& b, const Point3& c)
        : m_n(1)
        , m_points(4, Point3::Zero())
    {
        m_points[index(0, 0)] = a;
        m_points[index(1, 0)] = b;
        m_points[index(0, 1)] = c;
    }

    void refine()
    {
        const int n2 = 2 * m_n;
        std::vector<Point3> next(static_cast<std::size_t>((n2 + 1) * (n2 + 1)), Point3::Zero());
        auto at = [&](int i, int j) -> Point3& { return next[static_cast<std::size_t>(i * (n2 + 1) + j)]; };
        for (int i = 0; i <= m_n; ++i) {
            for (int j = 0; i + j <= m_n; ++j) at(2 * i, 2 * j) = point(i, j);
        }
        for (int i = 0; i <= n2; ++i) {
            for (int j = 0; i + j <= n2; ++j) {
                if (i % 2 == 0 && j % 2 == 0) continue;
                Point3 mid;
                if (i % 2 == 1 && j % 2 == 0) {
                    mid = at(i - 1, j) + at(i + 1, j);
                } else if (i % 2 == 0) {
                    mid = at(i, j - 1) + at(i, j + 1);
                } else {
                    mid = at(i - 1, j + 1) + at(i + 1, j - 1);
                }
                at(i, j) = mid.normalized();
            }
        }
        m_points = std::move(next);
        m_n = n2;
    }

    int n() const { return m_n; }
    const Point3& point(int i, int j) const { return m_points[index(i, j)]; }

private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * (m_n + 1) + j); }

    int m_n;
    std::vector<Point3> m_points;
};

// Canonical identity of a lattice point shared between icosahedral faces:
// sorted (icosahedron vertex, integer weight) pairs with non-zero weight.
using LatticeKey = std::array<long long, 6>;

LatticeKey lattice_key(const std::array<int, 3>& corners, const std::array<long long, 3>& weights)
{
    std::array<std::pair<long long, long long>, 3> pairs;
    for (int k = 0; k < 3; ++k) {
        pairs[k] = weights[k] > 0 ? std::pair<long long, long long>{corners[k], weights[k]}
                                  : std::pair<long long, long long>{-1, 0};
    }
    std::sort(pairs.begin(), pairs.end());
    return {pairs[0].first, pairs[0].second, pairs[1].first, pairs[1].second, pairs[2].first, pairs[2].second};
}

} // namespace

SurfaceMesh sphere_hybrid(int level)
{
    if (level < 0) throw Error(ErrorKind::InvalidParameter, "sphere level must be >= 0");
    if (level > 10) throw Error(ErrorKind::InvalidParameter, "sphere level must be <= 10");

    const Icosahedron ico = make_icosahedron();
    std::vector<Point3> vertices;
    std::vector<Face> faces;
    std::map<LatticeKey, int> ids;

    for (const auto& corners : ico.faces) {
        FaceLattice lattice(ico.vertices[corners[0]], ico.vertices[corners[1]], ico.vertices[corners[2]]);
        for (int l = 0; l < level; ++l) lattice.refine();
        const int n = lattice.n();

        auto vertex_id = [&](int i, int j) {
            const LatticeKey key = lattice_key(corners, {n - i - j, i, j});
            auto [it, inserted] = ids.try_emplace(key, static_cast<int>(vertices.size()));
            if (inserted) vertices.push_back(lattice.point(i, j));
            return it->second;
        };
        auto is_center = [n](int i, int j) {
            return i >= 1 && j >= 1 && i + j <= n - 1 && i % 2 == 0 && j % 2 == 0;
        };

        for (int i = 1; i < n; ++i) {
            for (int j = 1; i + j < n; ++j) {
                if (!is_center(i, j)) continue;
                faces.push_back({vertex_id(i + 1, j), vertex_id(i, j + 1), vertex_id(i - 1, j + 1),
                                 vertex_id(i - 1, j), vertex_id(i, j - 1), vertex_id(i + 1, j - 1)});
            }
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; i + j < n; ++j) {
                if (!is_center(i, j) && !is_center(i + 1, j) && !is_center(i, j + 1)) {
                    faces.push_back({vertex_id(i, j), vertex_id(i + 1, j), vertex_id(i, j + 1)});
                }
                if (i + j < n - 1 && !is_center(i + 1, j) && !is_center(i + 1, j + 1) && !is_center(i, j + 1)) {
                    faces.push_back({vertex_id(i + 1, j), vertex_id(i + 1, j + 1), vertex_id(i, j + 1)});
                }
            }
        }
    }
    return make_mesh(std::move(vertices), std::move(faces));
}

SurfaceMesh cylinder_half(CylinderHalf which, int n)
{
    if (n < 1) throw Error(ErrorKind::InvalidParameter, "cylinder resolution N must be >= 1");

    const bool upper = which == CylinderHalf::Upper;
    const int ni = upper ? 4 * n : 2 * n;
    const int nj = upper ? 2 * n : n;
    const double pi = std::numbers::pi;

    std::vector<Point3> vertices;
    vertices.reserve(static_cast<std::size_t>((ni + 1) * (nj + 1)));
    for (int j = 0; j <= nj; ++j) {
        for (int i = 0; i <= ni; ++i) {
            const double angle = upper ? static_cast<double>(i) / (4.0 * n) * pi
                                       : (static_cast<double>(i) / (2.0 * n) + 1.0) * pi;
            const double z = upper ? static_cast<double>(j) / n : 2.0 * j / n;
            vertices.emplace_back(std::cos(angle), std::sin(angle), z);
        }
    }
    auto id = [ni](int i, int j) { return j * (ni + 1) + i; };
    std::vector<Face> faces;
    faces.reserve(static_cast<std::size_t>(ni * nj));
    for (int j = 0; j < nj; ++j) {
        for (int i = 0; i < ni; ++i) {
            faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    return make_mesh(std::move(vertices), std::move(faces));
}

double cylinder_nominal_h(int n)
{
    return 2.0 * std::sin(std::numbers::pi / (8.0 * n));
}

SurfaceMesh cylinder_pasted(int n)
{
    return paste(cylinder_half(CylinderHalf::Upper, n), cylinder_half(CylinderHalf::Lower, n));
}

} // namespace svem
