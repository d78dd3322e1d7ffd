#pragma once

#include <svem/analysis.hpp>
#include <svem/assembly.hpp>
#include <svem/mesh.hpp>

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace svem {

struct RunOptions {
    int threads = 1;
    SolverKind solver = SolverKind::Direct;
};

struct RunResult {
    DiscreteSystem system;
    SolveReport report;
    ErrorRecord record;
};

/// assemble -> solve -> compute_errors on one mesh. record.h is the largest
/// element diameter.
RunResult run_problem(const SurfaceMesh& mesh, const BenchmarkProblem& problem, const RunOptions& options = {});

/// One level of a refinement study.
struct LevelSpec {
    int level = 0;
    /// Reported mesh size; the largest element diameter when absent.
    std::optional<double> h;
    std::function<SurfaceMesh()> make_mesh;
};

/// sphere_hybrid(level) for level_min..level_max.
std::vector<LevelSpec> sphere_levels(int level_min, int level_max);
/// Pasted cylinder meshes; level = N, h = 2 sin(pi / 8N).
std::vector<LevelSpec> cylinder_levels(const std::vector<int>& n_list);

/// Resolutions used for the pasted-cylinder study: N = 5, 10, ..., 30.
std::vector<int> default_cylinder_n_list();

/// Runs every level, then fills the EOC columns. `on_record` (optional)
/// sees each record as soon as it is computed. A failing level is rethrown
/// as the same error kind with the level prepended to the message.
std::vector<ErrorRecord> run_convergence(const std::vector<LevelSpec>& levels, const BenchmarkProblem& problem,
                                         const RunOptions& options = {},
                                         const std::function<void(const ErrorRecord&)>& on_record = {});

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

inline constexpr const char* k_csv_header = "level,h,n_dofs,err_l2,err_linf,err_h1,eoc_l2,eoc_linf,eoc_h1";

std::string csv_row(const ErrorRecord& record);
std::string csv_slope_line(const Slopes& slopes);
/// Header, one row per record and the trailing slope comment.
std::string format_csv(const std::vector<ErrorRecord>& records);

/// Legacy ASCII VTK polydata (version 3.0) with POINTS, POLYGONS and one
/// POINT_DATA scalar array per field.
void write_vtk(std::ostream& out, const SurfaceMesh& mesh,
               const std::vector<std::pair<std::string, Eigen::VectorXd>>& point_fields,
               const std::string& title = "svem");

} // namespace svem
