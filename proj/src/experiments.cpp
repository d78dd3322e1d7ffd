#include <svem/error.hpp>
#include <svem/experiments.hpp>
#include <svem/generators.hpp>

#include <charconv>
#include <ostream>
#include <sstream>

namespace svem {

RunResult run_problem(const SurfaceMesh& mesh, const BenchmarkProblem& problem, const RunOptions& options)
{
    RunResult result;
    result.system = assemble(mesh, problem, AssemblyOptions{options.threads});
    result.report = solve(result.system, SolveOptions{options.solver});
    result.record = compute_errors(result.system, mesh, problem);
    result.record.h = mesh_size(mesh);
    return result;
}

std::vector<LevelSpec> sphere_levels(int level_min, int level_max)
{
    if (level_min < 0 || level_max < level_min) {
        throw Error(ErrorKind::InvalidParameter, "sphere levels need 0 <= L0 <= L1");
    }
    std::vector<LevelSpec> levels;
    for (int level = level_min; level <= level_max; ++level) {
        levels.push_back({level, std::nullopt, [level] { return sphere_hybrid(level); }});
    }
    return levels;
}

std::vector<LevelSpec> cylinder_levels(const std::vector<int>& n_list)
{
    std::vector<LevelSpec> levels;
    for (int n : n_list) {
        if (n < 1) throw Error(ErrorKind::InvalidParameter, "cylinder resolution N must be >= 1");
        levels.push_back({n, cylinder_nominal_h(n), [n] { return cylinder_pasted(n); }});
    }
    return levels;
}

std::vector<int> default_cylinder_n_list()
{
    return {5, 10, 15, 20, 25, 30};
}

std::vector<ErrorRecord> run_convergence(const std::vector<LevelSpec>& levels, const BenchmarkProblem& problem,
                                         const RunOptions& options,
                                         const std::function<void(const ErrorRecord&)>& on_record)
{
    std::vector<ErrorRecord> records;
    for (const LevelSpec& spec : levels) {
        try {
            const SurfaceMesh mesh = spec.make_mesh();
            RunResult run = run_problem(mesh, problem, options);
            run.record.level = spec.level;
            if (spec.h) run.record.h = *spec.h;
            records.push_back(run.record);
        } catch (const Error& err) {
            throw Error(err.kind(), "level " + std::to_string(spec.level) + ": " + err.what());
        }
        fill_eoc(records);
        if (on_record) on_record(records.back());
    }
    return records;
}

std::string format_double(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string csv_row(const ErrorRecord& r)
{
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    std::ostringstream row;
    row << r.level << ',' << format_double(r.h) << ',' << r.n_dofs << ',' << format_double(r.err_l2) << ','
        << format_double(r.err_linf) << ',' << format_double(r.err_h1) << ',' << opt(r.eoc_l2) << ','
        << opt(r.eoc_linf) << ',' << opt(r.eoc_h1);
    return row.str();
}

std::string csv_slope_line(const Slopes& slopes)
{
    return "# slope_l2=" + format_double(slopes.l2) + ", slope_linf=" + format_double(slopes.linf) +
           ", slope_h1=" + format_double(slopes.h1);
}

std::string format_csv(const std::vector<ErrorRecord>& records)
{
    std::string out = std::string(k_csv_header) + "\n";
    for (const ErrorRecord& r : records) out += csv_row(r) + "\n";
    if (records.size() >= 2) out += csv_slope_line(fit_slopes(records)) + "\n";
    return out;
}

void write_vtk(std::ostream& out, const SurfaceMesh& mesh,
               const std::vector<std::pair<std::string, Eigen::VectorXd>>& point_fields, const std::string& title)
{
    out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET POLYDATA\n";
    out << "POINTS " << mesh.n_vertices() << " double\n";
    for (const Point3& p : mesh.vertices) {
        out << format_double(p.x()) << ' ' << format_double(p.y()) << ' ' << format_double(p.z()) << '\n';
    }
    std::size_t list_size = 0;
    for (const Face& face : mesh.faces) list_size += face.size() + 1;
    out << "POLYGONS " << mesh.n_faces() << ' ' << list_size << '\n';
    for (const Face& face : mesh.faces) {
        out << face.size();
        for (int v : face) out << ' ' << v;
        out << '\n';
    }
    if (point_fields.empty()) return;
    out << "POINT_DATA " << mesh.n_vertices() << '\n';
    for (const auto& [name, values] : point_fields) {
        if (values.size() != static_cast<Eigen::Index>(mesh.n_vertices())) {
            throw Error(ErrorKind::InvalidParameter, "VTK field " + name + " has the wrong length");
        }
        out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (Eigen::Index i = 0; i < values.size(); ++i) out << format_double(values[i]) << '\n';
    }
}

} // namespace svem
