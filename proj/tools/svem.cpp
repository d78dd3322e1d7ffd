// svem: meshes, pasting, solves and convergence studies for the lowest-order
// surface virtual element method on the Laplace-Beltrami equation.

#include <svem/analysis.hpp>
#include <svem/assembly.hpp>
#include <svem/error.hpp>
#include <svem/experiments.hpp>
#include <svem/generators.hpp>
#include <svem/mesh.hpp>
#include <svem/mesh_io.hpp>
#include <svem/pasting.hpp>
#include <svem/surface.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

// Argument errors detected after parsing; reported with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json to_json(const svem::RegularityReport& r)
{
    return {{"gamma1", r.gamma1},
            {"gamma2", r.gamma2},
            {"h", r.h},
            {"max_planarity_defect_ratio", r.max_planarity_defect_ratio},
            {"n_elements", r.n_elements},
            {"n_vertices", r.n_vertices},
            {"valid", r.valid},
            {"empty_kernel_faces", r.empty_kernel_faces}};
}

json to_json(const std::vector<svem::Diagnostic>& diags)
{
    json out = json::array();
    for (const auto& d : diags) {
        json item = {{"kind", d.kind}, {"detail", d.detail}};
        if (d.face) item["face"] = *d.face;
        if (d.vertex) item["vertex"] = *d.vertex;
        out.push_back(item);
    }
    return out;
}

json face_sizes(const svem::SurfaceMesh& mesh)
{
    json out = json::object();
    const auto hist = svem::face_size_histogram(mesh);
    for (std::size_t k = 0; k < hist.size(); ++k) {
        if (hist[k] > 0) out[std::to_string(k)] = hist[k];
    }
    return out;
}

json mesh_summary(const svem::SurfaceMesh& mesh)
{
    return {{"n_vertices", mesh.n_vertices()},
            {"n_faces", mesh.n_faces()},
            {"n_edges", svem::count_edges(mesh)},
            {"face_sizes", face_sizes(mesh)}};
}

svem::BenchmarkProblem problem_from(const std::string& name)
{
    const auto parsed = svem::parse_benchmark_name(name);
    if (!parsed) throw UsageError("unknown problem '" + name + "'");
    return svem::benchmark(*parsed);
}

int resolve_threads(int flag)
{
    if (flag > 0) return flag;
    if (const char* env = std::getenv("SVEM_THREADS")) {
        try {
            const int value = std::stoi(env);
            if (value > 0) return value;
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("SVEM_THREADS must be a positive integer, got '") + env + "'");
    }
    return 1;
}

svem::SolverKind solver_from(const std::string& name)
{
    return name == "iterative" ? svem::SolverKind::Iterative : svem::SolverKind::Direct;
}

std::pair<int, int> parse_level_range(const std::string& text)
{
    static const std::regex pattern(R"(^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) throw UsageError("--levels expects L0..L1, got '" + text + "'");
    const int lo = std::stoi(m[1].str());
    const int hi = m[2].matched ? std::stoi(m[2].str()) : lo;
    if (hi < lo) throw UsageError("--levels range is empty: '" + text + "'");
    return {lo, hi};
}

std::vector<int> parse_n_list(const std::string& text)
{
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size() || v < 1) throw std::invalid_argument(item);
            values.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("--n-list expects positive integers separated by commas, got '" + text + "'");
        }
    }
    if (values.empty()) throw UsageError("--n-list is empty");
    return values;
}

struct MeshArgs {
    std::string kind;
    int level = -1;
    int half = 0;
    int n = 0;
    std::string out;
};

int cmd_mesh(const MeshArgs& args)
{
    svem::SurfaceMesh mesh;
    json info;
    if (args.kind == "sphere") {
        if (args.level < 0) throw UsageError("mesh sphere needs --level L with L >= 0");
        mesh = svem::sphere_hybrid(args.level);
        info["kind"] = "sphere";
        info["level"] = args.level;
    } else {
        if (args.half != 1 && args.half != 2) throw UsageError("mesh cylinder needs --half 1 or --half 2");
        if (args.n < 1) throw UsageError("mesh cylinder needs --n N with N >= 1");
        mesh = svem::cylinder_half(args.half == 1 ? svem::CylinderHalf::Upper : svem::CylinderHalf::Lower, args.n);
        info["kind"] = "cylinder";
        info["half"] = args.half;
        info["n"] = args.n;
    }
    svem::write_off_file(args.out, mesh);
    const auto report = svem::regularity(mesh);
    info.update(mesh_summary(mesh));
    info["h"] = report.h;
    info["regularity"] = to_json(report);
    std::cout << info.dump(2) << '\n';
    return 0;
}

struct PasteArgs {
    std::string first;
    std::string second;
    std::optional<double> tol;
    std::string out;
};

int cmd_paste(const PasteArgs& args)
{
    const auto a = svem::read_off_file(args.first);
    const auto b = svem::read_off_file(args.second);
    const auto pasted = svem::paste(a, b, args.tol);
    svem::write_off_file(args.out, pasted);
    json info = mesh_summary(pasted);
    info["diagnostics"] = to_json(svem::validate(pasted));
    std::cout << info.dump(2) << '\n';
    return 0;
}

struct SolveArgs {
    std::string mesh;
    std::string problem;
    std::string dump_dir;
    std::string vtk;
    std::string csv;
    std::string solver = "direct";
    int threads = 0;
};

int cmd_solve(const SolveArgs& args)
{
    const auto problem = problem_from(args.problem);
    const auto mesh = svem::read_off_file(args.mesh);
    const svem::RunOptions options{resolve_threads(args.threads), solver_from(args.solver)};
    const svem::RunResult run = svem::run_problem(mesh, problem, options);
    const auto& sys = run.system;

    if (!args.dump_dir.empty()) {
        std::filesystem::create_directories(args.dump_dir);
        const std::filesystem::path dir(args.dump_dir);
        svem::write_matrix_market((dir / "A.mtx").string(), sys.stiffness);
        svem::write_matrix_market((dir / "M.mtx").string(), sys.mass);
        svem::write_vector((dir / "b.txt").string(), sys.load);
        svem::write_vector((dir / "xi.txt").string(), sys.solution);
    }
    if (!args.vtk.empty()) {
        std::ofstream out(args.vtk);
        if (!out) throw svem::Error(svem::ErrorKind::IoError, "cannot write " + args.vtk);
        const Eigen::VectorXd exact = svem::interpolate(mesh, problem.exact_u);
        svem::write_vtk(out, mesh, {{"u_h", sys.solution}, {"u_exact", exact}, {"error", exact - sys.solution}},
                        "svem " + problem.name);
    }
    if (!args.csv.empty()) {
        std::ofstream out(args.csv);
        if (!out) throw svem::Error(svem::ErrorKind::IoError, "cannot write " + args.csv);
        out << svem::k_csv_header << '\n' << svem::csv_row(run.record) << '\n';
    }

    const double mean_scale = sys.mass.norm() * sys.solution.norm();
    json info = {{"problem", problem.name},
                 {"n_dofs", sys.n_dofs()},
                 {"constraint", sys.constraint == svem::ConstraintKind::ZeroMean ? "zero_mean" : "dirichlet"},
                 {"residual", run.report.residual},
                 {"residual_bound", run.report.residual_bound},
                 {"iterations", run.report.iterations},
                 {"discrete_mean", run.report.discrete_mean},
                 {"mean_constraint", mean_scale > 0 ? std::abs(run.report.discrete_mean) / mean_scale : 0.0},
                 {"load_sum", sys.load.sum()},
                 {"h", run.record.h},
                 {"err_l2", run.record.err_l2},
                 {"err_linf", run.record.err_linf},
                 {"err_h1", run.record.err_h1},
                 {"norms", "sqrt of quadratic forms; linf uses |delta|"}};
    std::cout << info.dump(2) << '\n';
    return 0;
}

struct ConvergenceArgs {
    std::string problem;
    std::string levels;
    std::string n_list;
    std::string csv;
    std::string solver = "direct";
    int threads = 0;
};

int cmd_convergence(const ConvergenceArgs& args)
{
    const auto problem = problem_from(args.problem);
    std::vector<svem::LevelSpec> levels;
    if (problem.zero_mean_constrained) {
        if (args.levels.empty()) throw UsageError("--problem " + args.problem + " needs --levels L0..L1");
        const auto [lo, hi] = parse_level_range(args.levels);
        levels = svem::sphere_levels(lo, hi);
    } else {
        levels = svem::cylinder_levels(args.n_list.empty() ? svem::default_cylinder_n_list() : parse_n_list(args.n_list));
    }
    const svem::RunOptions options{resolve_threads(args.threads), solver_from(args.solver)};

    std::ofstream file;
    if (!args.csv.empty()) {
        file.open(args.csv);
        if (!file) throw svem::Error(svem::ErrorKind::IoError, "cannot write " + args.csv);
    }
    std::ostream& out = args.csv.empty() ? std::cout : file;
    out << svem::k_csv_header << '\n' << std::flush;
    const auto records = svem::run_convergence(levels, problem, options, [&out](const svem::ErrorRecord& r) {
        out << svem::csv_row(r) << '\n' << std::flush;
    });
    if (records.size() >= 2) out << svem::csv_slope_line(svem::fit_slopes(records)) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lowest-order surface virtual element solver for the Laplace-Beltrami equation"};
    app.require_subcommand(1);

    MeshArgs mesh_args;
    auto* mesh_cmd = app.add_subcommand("mesh", "Generate a benchmark mesh as OFF");
    mesh_cmd->add_option("kind", mesh_args.kind, "sphere or cylinder")
        ->required()
        ->check(CLI::IsMember({"sphere", "cylinder"}));
    mesh_cmd->add_option("--level", mesh_args.level, "sphere refinement level")->check(CLI::NonNegativeNumber);
    mesh_cmd->add_option("--half", mesh_args.half, "cylinder half: 1 (y >= 0) or 2 (y <= 0)")
        ->check(CLI::IsMember({1, 2}));
    mesh_cmd->add_option("--n", mesh_args.n, "cylinder resolution N")->check(CLI::PositiveNumber);
    mesh_cmd->add_option("--out", mesh_args.out, "output OFF file")->required();

    PasteArgs paste_args;
    auto* paste_cmd = app.add_subcommand("paste", "Paste two OFF meshes along a straight seam");
    paste_cmd->add_option("first", paste_args.first, "first OFF mesh")->required();
    paste_cmd->add_option("second", paste_args.second, "second OFF mesh")->required();
    paste_cmd->add_option("--tol", paste_args.tol, "merge tolerance (default 1e-9 * bounding-box diagonal)")
        ->check(CLI::NonNegativeNumber);
    paste_cmd->add_option("--out", paste_args.out, "output OFF file")->required();

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Solve a benchmark problem on an OFF mesh");
    solve_cmd->add_option("--mesh", solve_args.mesh, "input OFF mesh")->required();
    solve_cmd->add_option("--problem", solve_args.problem, "sphere-xy or cylinder-exp")->required();
    solve_cmd->add_option("--dump-matrices", solve_args.dump_dir, "directory for A.mtx, M.mtx, b.txt, xi.txt");
    solve_cmd->add_option("--vtk", solve_args.vtk, "legacy VTK output");
    solve_cmd->add_option("--csv", solve_args.csv, "one-row error CSV");
    solve_cmd->add_option("--solver", solve_args.solver, "direct or iterative")
        ->check(CLI::IsMember({"direct", "iterative"}));
    solve_cmd->add_option("--threads", solve_args.threads, "element-loop threads (default: SVEM_THREADS or 1)")
        ->check(CLI::PositiveNumber);

    ConvergenceArgs conv_args;
    auto* conv_cmd = app.add_subcommand("convergence", "Run a refinement study and emit a CSV table");
    conv_cmd->add_option("--problem", conv_args.problem, "sphere-xy or cylinder-exp")->required();
    conv_cmd->add_option("--levels", conv_args.levels, "sphere levels L0..L1");
    conv_cmd->add_option("--n-list", conv_args.n_list, "cylinder resolutions, e.g. 5,10,15,20,25,30");
    conv_cmd->add_option("--csv", conv_args.csv, "output CSV (default stdout)");
    conv_cmd->add_option("--solver", conv_args.solver, "direct or iterative")
        ->check(CLI::IsMember({"direct", "iterative"}));
    conv_cmd->add_option("--threads", conv_args.threads, "element-loop threads (default: SVEM_THREADS or 1)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: InvalidArgument: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*mesh_cmd) return cmd_mesh(mesh_args);
        if (*paste_cmd) return cmd_paste(paste_args);
        if (*solve_cmd) return cmd_solve(solve_args);
        if (*conv_cmd) return cmd_convergence(conv_args);
    } catch (const UsageError& e) {
        std::cerr << "error: InvalidArgument: " << e.what() << '\n';
        return 2;
    } catch (const svem::Error& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: InternalError: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
