#include <svem/error.hpp>
#include <svem/pasting.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace svem {

namespace {

std::vector<int> boundary_vertex_list(const SurfaceMesh& mesh)
{
    std::vector<int> verts;
    for (const Edge& e : boundary_edges(mesh)) {
        verts.push_back(e.a);
        verts.push_back(e.b);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts;
}

std::set<std::pair<int, int>> directed_boundary_set(const SurfaceMesh& mesh)
{
    std::set<std::pair<int, int>> out;
    for (const Edge& e : boundary_edges(mesh)) out.insert({e.a, e.b});
    return out;
}

// Inserts, after each boundary edge (p, q) of `faces`, the candidate vertices
// lying strictly inside the segment, ordered from p to q.
void insert_hanging_nodes(std::vector<Face>& faces, const std::set<std::pair<int, int>>& own_boundary,
                          const std::vector<int>& candidates, const std::vector<Point3>& coords, double tol)
{
    for (Face& face : faces) {
        Face extended;
        extended.reserve(face.size());
        for (std::size_t i = 0; i < face.size(); ++i) {
            const int p = face[i];
            const int q = face[(i + 1) % face.size()];
            extended.push_back(p);
            if (!own_boundary.count({p, q})) continue;
            const Point3& a = coords[p];
            const Point3 d = coords[q] - a;
            const double len = d.norm();
            std::vector<std::pair<double, int>> inside;
            for (int v : candidates) {
                if (v == p || v == q) continue;
                const Point3 w = coords[v] - a;
                const double s = w.dot(d) / len;
                if (s <= tol || s >= len - tol) continue;
                if ((w - (s / len) * d).norm() <= tol) inside.emplace_back(s, v);
            }
            std::sort(inside.begin(), inside.end());
            for (const auto& [s, v] : inside) extended.push_back(v);
        }
        face = std::move(extended);
    }
}

double distance_to_line(const Point3& p, const Point3& a, const Point3& b)
{
    const Point3 d = (b - a).normalized();
    const Point3 w = p - a;
    return (w - w.dot(d) * d).norm();
}

} // namespace

double default_merge_tolerance(const SurfaceMesh& a, const SurfaceMesh& b)
{
    if (a.vertices.empty() && b.vertices.empty()) return 0.0;
    Point3 lo = Point3::Constant(std::numeric_limits<double>::infinity());
    Point3 hi = -lo;
    for (const auto* mesh : {&a, &b}) {
        for (const Point3& p : mesh->vertices) {
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
    }
    return 1e-9 * (hi - lo).norm();
}

SurfaceMesh paste(const SurfaceMesh& a, const SurfaceMesh& b, std::optional<double> merge_tol)
{
    const double tol = merge_tol.value_or(default_merge_tolerance(a, b));
    if (!(tol >= 0.0)) throw Error(ErrorKind::InvalidParameter, "merge tolerance must be non-negative");

    const std::vector<int> bound_a = boundary_vertex_list(a);
    const std::vector<int> bound_b = boundary_vertex_list(b);

    // Seam vertex identification.
    std::map<int, int> b_to_a;
    std::map<int, int> a_matched_by;
    for (int vb : bound_b) {
        int match = -1;
        for (int va : bound_a) {
            if ((a.vertices[va] - b.vertices[vb]).norm() > tol) continue;
            if (match >= 0) {
                std::ostringstream msg;
                msg << "vertex " << vb << " of the second mesh is within tolerance of vertices " << match << " and "
                    << va << " of the first mesh";
                throw Error(ErrorKind::ToleranceAmbiguity, msg.str());
            }
            match = va;
        }
        if (match < 0) continue;
        if (auto [it, inserted] = a_matched_by.emplace(match, vb); !inserted) {
            std::ostringstream msg;
            msg << "vertex " << match << " of the first mesh is within tolerance of vertices " << it->second
                << " and " << vb << " of the second mesh";
            throw Error(ErrorKind::ToleranceAmbiguity, msg.str());
        }
        b_to_a[vb] = match;
    }

    std::vector<Point3> coords = a.vertices;
    for (const auto& [vb, va] : b_to_a) coords[va] = 0.5 * (a.vertices[va] + b.vertices[vb]);
    std::vector<int> b_index(b.n_vertices(), -1);
    for (std::size_t v = 0; v < b.n_vertices(); ++v) {
        if (auto it = b_to_a.find(static_cast<int>(v)); it != b_to_a.end()) {
            b_index[v] = it->second;
        } else {
            b_index[v] = static_cast<int>(coords.size());
            coords.push_back(b.vertices[v]);
        }
    }

    std::vector<Face> faces_a = a.faces;
    std::vector<Face> faces_b;
    faces_b.reserve(b.n_faces());
    for (const Face& face : b.faces) {
        Face mapped;
        mapped.reserve(face.size());
        for (int v : face) mapped.push_back(b_index[v]);
        faces_b.push_back(std::move(mapped));
    }

    std::set<std::pair<int, int>> own_a = directed_boundary_set(a);
    std::set<std::pair<int, int>> own_b;
    for (const auto& [p, q] : directed_boundary_set(b)) own_b.insert({b_index[p], b_index[q]});

    std::vector<int> only_a;
    for (int va : bound_a) {
        if (!a_matched_by.count(va)) only_a.push_back(va);
    }
    std::vector<int> only_b;
    for (int vb : bound_b) {
        if (!b_to_a.count(vb)) only_b.push_back(b_index[vb]);
    }
    insert_hanging_nodes(faces_a, own_a, only_b, coords, tol);
    insert_hanging_nodes(faces_b, own_b, only_a, coords, tol);

    const std::size_t n_faces_a = faces_a.size();
    std::vector<Face> faces = std::move(faces_a);
    faces.insert(faces.end(), faces_b.begin(), faces_b.end());
    SurfaceMesh result = make_mesh(std::move(coords), std::move(faces));

    // Seam edges: shared by one face of each input mesh.
    std::map<std::pair<int, int>, std::pair<int, int>> usage;
    for (std::size_t f = 0; f < result.n_faces(); ++f) {
        const Face& face = result.faces[f];
        const bool from_a = f < n_faces_a;
        for (std::size_t i = 0; i < face.size(); ++i) {
            int p = face[i];
            int q = face[(i + 1) % face.size()];
            if (p > q) std::swap(p, q);
            auto& [count_a, count_b] = usage[{p, q}];
            (from_a ? count_a : count_b) += 1;
        }
    }
    std::map<int, std::vector<int>> seam_adj;
    for (const auto& [edge, counts] : usage) {
        if (counts.first == 1 && counts.second == 1) {
            seam_adj[edge.first].push_back(edge.second);
            seam_adj[edge.second].push_back(edge.first);
        }
    }
    if (seam_adj.empty()) {
        throw Error(ErrorKind::SeamMismatch, "the meshes share no boundary segment");
    }

    // Each connected seam must be straight and must not continue as an
    // unmatched boundary edge in the same direction.
    std::set<int> visited;
    for (const auto& [start, unused] : seam_adj) {
        if (visited.count(start)) continue;
        std::vector<int> chain;
        std::vector<int> stack = {start};
        visited.insert(start);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            chain.push_back(v);
            for (int w : seam_adj[v]) {
                if (visited.insert(w).second) stack.push_back(w);
            }
        }
        int end0 = chain.front();
        int end1 = chain.front();
        double best = -1.0;
        for (int u : chain) {
            for (int w : chain) {
                const double d = (result.vertices[u] - result.vertices[w]).norm();
                if (d > best) {
                    best = d;
                    end0 = u;
                    end1 = w;
                }
            }
        }
        if (chain.size() < 2 || best <= tol) {
            throw Error(ErrorKind::SeamMismatch, "degenerate seam");
        }
        const double line_tol = std::max(tol, 1e-12 * best);
        for (int v : chain) {
            if (distance_to_line(result.vertices[v], result.vertices[end0], result.vertices[end1]) > line_tol) {
                throw Error(ErrorKind::SeamMismatch, "seam vertices are not collinear");
            }
        }
        for (const Edge& e : boundary_edges(result)) {
            const bool touches_end = e.a == end0 || e.a == end1 || e.b == end0 || e.b == end1;
            if (!touches_end) continue;
            const double da = distance_to_line(result.vertices[e.a], result.vertices[end0], result.vertices[end1]);
            const double db = distance_to_line(result.vertices[e.b], result.vertices[end0], result.vertices[end1]);
            if (da <= line_tol && db <= line_tol) {
                throw Error(ErrorKind::SeamMismatch, "seam is only partially covered by the other mesh");
            }
        }
    }

    for (const Diagnostic& diag : validate(result)) {
        if (diag.kind == "NonManifoldEdge" || diag.kind == "InconsistentOrientation") {
            throw Error(ErrorKind::SeamMismatch, diag.kind + ": " + diag.detail);
        }
    }
    return result;
}

} // namespace svem
