#include <svem/error.hpp>
#include <svem/mesh_io.hpp>

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace svem {

namespace {

// Next line that is neither blank nor a comment, with any trailing comment removed.
bool next_content_line(std::istream& in, std::string& line)
{
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
}

[[noreturn]] void fail(const std::string& detail)
{
    throw Error(ErrorKind::IoError, "OFF: " + detail);
}

} // namespace

SurfaceMesh read_off(std::istream& in)
{
    std::string line;
    if (!next_content_line(in, line)) fail("empty input");
    std::istringstream header(line);
    std::string magic;
    header >> magic;
    if (magic != "OFF") fail("missing OFF header");

    // Counts may follow the magic word on the same line.
    long long nv = -1;
    long long nf = -1;
    long long ne = 0;
    if (!(header >> nv >> nf)) {
        if (!next_content_line(in, line)) fail("missing counts line");
        std::istringstream counts(line);
        if (!(counts >> nv >> nf)) fail("malformed counts line");
        counts >> ne;
    }
    if (nv < 0 || nf < 0) fail("negative counts");

    std::vector<Point3> vertices(static_cast<std::size_t>(nv));
    for (auto& v : vertices) {
        if (!next_content_line(in, line)) fail("unexpected end of vertex list");
        std::istringstream row(line);
        if (!(row >> v.x() >> v.y() >> v.z())) fail("malformed vertex line: " + line);
    }

    std::vector<Face> faces(static_cast<std::size_t>(nf));
    for (auto& face : faces) {
        if (!next_content_line(in, line)) fail("unexpected end of face list");
        std::istringstream row(line);
        long long m = 0;
        if (!(row >> m) || m < 3) fail("malformed face line: " + line);
        face.resize(static_cast<std::size_t>(m));
        for (auto& idx : face) {
            long long value = 0;
            if (!(row >> value)) fail("malformed face line: " + line);
            if (value < 0 || value >= nv) fail("face index out of range: " + line);
            idx = static_cast<int>(value);
        }
    }
    return make_mesh(std::move(vertices), std::move(faces));
}

SurfaceMesh read_off_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
    return read_off(in);
}

void write_off(std::ostream& out, const SurfaceMesh& mesh)
{
    out << "OFF\n" << mesh.n_vertices() << ' ' << mesh.n_faces() << " 0\n";
    char buf[96];
    for (const Point3& v : mesh.vertices) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", v.x(), v.y(), v.z());
        out << buf;
    }
    for (const Face& face : mesh.faces) {
        out << face.size();
        for (int idx : face) out << ' ' << idx;
        out << '\n';
    }
}

void write_off_file(const std::string& path, const SurfaceMesh& mesh)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
    write_off(out, mesh);
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

} // namespace svem
