#include <svem/analysis.hpp>
#include <svem/assembly.hpp>
#include <svem/error.hpp>
#include <svem/experiments.hpp>
#include <svem/generators.hpp>
#include <svem/mesh.hpp>
#include <svem/mesh_io.hpp>
#include <svem/pasting.hpp>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;

namespace {

py::object g_error_type;

svem::BenchmarkProblem problem_from(const std::string& name)
{
    const auto parsed = svem::parse_benchmark_name(name);
    if (!parsed) throw svem::Error(svem::ErrorKind::InvalidParameter, "unknown problem '" + name + "'");
    return svem::benchmark(*parsed);
}

svem::SolverKind solver_from(const std::string& name)
{
    if (name == "direct") return svem::SolverKind::Direct;
    if (name == "iterative") return svem::SolverKind::Iterative;
    throw svem::Error(svem::ErrorKind::InvalidParameter, "solver must be 'direct' or 'iterative', got '" + name + "'");
}

svem::CylinderHalf half_from(const std::string& name)
{
    if (name == "upper") return svem::CylinderHalf::Upper;
    if (name == "lower") return svem::CylinderHalf::Lower;
    throw svem::Error(svem::ErrorKind::InvalidParameter, "half must be 'upper' or 'lower', got '" + name + "'");
}

Eigen::MatrixXd vertex_array(const svem::SurfaceMesh& mesh)
{
    Eigen::MatrixXd v(static_cast<Eigen::Index>(mesh.n_vertices()), 3);
    for (std::size_t i = 0; i < mesh.n_vertices(); ++i) v.row(static_cast<Eigen::Index>(i)) = mesh.vertices[i].transpose();
    return v;
}

svem::SurfaceMesh mesh_from_arrays(const Eigen::MatrixXd& vertices, std::vector<svem::Face> faces)
{
    if (vertices.cols() != 3) throw svem::Error(svem::ErrorKind::InvalidMesh, "vertices must have shape (n, 3)");
    std::vector<svem::Point3> v;
    v.reserve(static_cast<std::size_t>(vertices.rows()));
    for (Eigen::Index i = 0; i < vertices.rows(); ++i) v.emplace_back(vertices(i, 0), vertices(i, 1), vertices(i, 2));
    return svem::make_mesh(std::move(v), std::move(faces));
}

py::dict record_dict(const svem::ErrorRecord& r)
{
    py::dict d;
    d["level"] = r.level;
    d["h"] = r.h;
    d["n_dofs"] = r.n_dofs;
    d["err_l2"] = r.err_l2;
    d["err_linf"] = r.err_linf;
    d["err_h1"] = r.err_h1;
    d["eoc_l2"] = r.eoc_l2;
    d["eoc_linf"] = r.eoc_linf;
    d["eoc_h1"] = r.eoc_h1;
    return d;
}

py::dict solve_mesh(const svem::SurfaceMesh& mesh, const std::string& problem, const std::string& solver, int threads)
{
    const auto run = svem::run_problem(mesh, problem_from(problem), {threads, solver_from(solver)});
    py::dict d = record_dict(run.record);
    d["solution"] = run.system.solution;
    d["stiffness"] = run.system.stiffness;
    d["mass"] = run.system.mass;
    d["load"] = run.system.load;
    d["residual"] = run.report.residual;
    d["residual_bound"] = run.report.residual_bound;
    d["discrete_mean"] = run.report.discrete_mean;
    d["iterations"] = run.report.iterations;
    d["constraint"] = run.system.constraint == svem::ConstraintKind::ZeroMean ? "zero_mean" : "dirichlet";
    return d;
}

py::dict convergence(const std::string& problem, std::optional<std::pair<int, int>> levels,
                     std::optional<std::vector<int>> n_list, const std::string& solver, int threads)
{
    if (levels.has_value() == n_list.has_value()) {
        throw svem::Error(svem::ErrorKind::InvalidParameter, "pass exactly one of levels or n_list");
    }
    const auto specs = levels ? svem::sphere_levels(levels->first, levels->second) : svem::cylinder_levels(*n_list);
    const auto records = svem::run_convergence(specs, problem_from(problem), {threads, solver_from(solver)});
    py::list rows;
    for (const auto& r : records) rows.append(record_dict(r));
    py::dict d;
    d["records"] = rows;
    d["csv"] = svem::format_csv(records);
    if (records.size() >= 2) {
        const auto s = svem::fit_slopes(records);
        d["slopes"] = py::dict(py::arg("l2") = s.l2, py::arg("linf") = s.linf, py::arg("h1") = s.h1);
    }
    return d;
}

py::dict regularity_dict(const svem::SurfaceMesh& mesh)
{
    const auto r = svem::regularity(mesh);
    py::dict d;
    d["gamma1"] = r.gamma1;
    d["gamma2"] = r.gamma2;
    d["h"] = r.h;
    d["max_planarity_defect_ratio"] = r.max_planarity_defect_ratio;
    d["n_elements"] = r.n_elements;
    d["n_vertices"] = r.n_vertices;
    d["valid"] = r.valid;
    d["empty_kernel_faces"] = r.empty_kernel_faces;
    return d;
}

py::list validate_mesh(const svem::SurfaceMesh& mesh, std::optional<std::string> problem)
{
    const auto p = problem ? std::optional(problem_from(*problem)) : std::nullopt;
    py::list out;
    for (const auto& diag : svem::validate(mesh, p ? p->surface.get() : nullptr)) {
        py::dict d;
        d["kind"] = diag.kind;
        d["detail"] = diag.detail;
        d["face"] = diag.face;
        d["vertex"] = diag.vertex;
        out.append(d);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_svem, m)
{
    m.doc() = "Lowest-order surface virtual element solver for the Laplace-Beltrami equation";

    g_error_type = py::reinterpret_borrow<py::object>(
        PyErr_NewException("svem._svem.SvemError", PyExc_RuntimeError, nullptr));
    m.attr("SvemError") = g_error_type;
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const svem::Error& e) {
            py::object exc = g_error_type(std::string(e.name()) + ": " + e.what());
            exc.attr("kind") = e.name();
            PyErr_SetObject(g_error_type.ptr(), exc.ptr());
        }
    });

    py::class_<svem::SurfaceMesh>(m, "Mesh")
        .def(py::init(&mesh_from_arrays), py::arg("vertices"), py::arg("faces"))
        .def_property_readonly("vertices", &vertex_array)
        .def_property_readonly("faces", [](const svem::SurfaceMesh& s) { return s.faces; })
        .def_property_readonly("boundary", [](const svem::SurfaceMesh& s) { return s.boundary; })
        .def_property_readonly("n_vertices", &svem::SurfaceMesh::n_vertices)
        .def_property_readonly("n_faces", &svem::SurfaceMesh::n_faces)
        .def_property_readonly("n_edges", [](const svem::SurfaceMesh& s) { return svem::count_edges(s); })
        .def("face_size_histogram", [](const svem::SurfaceMesh& s) { return svem::face_size_histogram(s); })
        .def("__repr__", [](const svem::SurfaceMesh& s) {
            return "<svem.Mesh with " + std::to_string(s.n_vertices()) + " vertices and " + std::to_string(s.n_faces()) +
                   " faces>";
        });

    m.def("sphere_hybrid", &svem::sphere_hybrid, py::arg("level"));
    m.def("cylinder_half", [](const std::string& half, int n) { return svem::cylinder_half(half_from(half), n); },
          py::arg("half"), py::arg("n"));
    m.def("cylinder_pasted", &svem::cylinder_pasted, py::arg("n"));
    m.def("cylinder_nominal_h", &svem::cylinder_nominal_h, py::arg("n"));
    m.def("paste", &svem::paste, py::arg("a"), py::arg("b"), py::arg("tol") = std::nullopt);
    m.def("read_off", &svem::read_off_file, py::arg("path"));
    m.def("write_off", [](const std::string& path, const svem::SurfaceMesh& mesh) { svem::write_off_file(path, mesh); },
          py::arg("path"), py::arg("mesh"));
    m.def("mesh_size", &svem::mesh_size, py::arg("mesh"));
    m.def("regularity", &regularity_dict, py::arg("mesh"));
    m.def("validate", &validate_mesh, py::arg("mesh"), py::arg("problem") = std::nullopt);
    m.def("solve", &solve_mesh, py::arg("mesh"), py::arg("problem"), py::arg("solver") = "direct",
          py::arg("threads") = 1);
    m.def("convergence", &convergence, py::arg("problem"), py::arg("levels") = std::nullopt,
          py::arg("n_list") = std::nullopt, py::arg("solver") = "direct", py::arg("threads") = 1);
}
