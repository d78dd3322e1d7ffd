#include <svem/assembly.hpp>
#include <svem/error.hpp>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

namespace svem {

namespace {

bool has_boundary(const SurfaceMesh& mesh)
{
    return std::any_of(mesh.boundary.begin(), mesh.boundary.end(), [](bool b) { return b; });
}

SparseMatrix scatter(const SurfaceMesh& mesh, const std::vector<LocalVem>& locals,
                     const Eigen::MatrixXd LocalVem::*member)
{
    std::vector<Eigen::Triplet<double>> triplets;
    std::size_t total = 0;
    for (const Face& face : mesh.faces) total += face.size() * face.size();
    triplets.reserve(total);
    for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
        const Face& face = mesh.faces[f];
        const Eigen::MatrixXd& local = locals[f].*member;
        for (std::size_t i = 0; i < face.size(); ++i) {
            for (std::size_t j = 0; j < face.size(); ++j) {
                triplets.emplace_back(face[i], face[j], local(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            }
        }
    }
    const auto n = static_cast<Eigen::Index>(mesh.n_vertices());
    SparseMatrix global(n, n);
    global.setFromTriplets(triplets.begin(), triplets.end());
    return global;
}

double residual_bound(const SparseMatrix& matrix, const Eigen::VectorXd& x, const Eigen::VectorXd& rhs)
{
    return 1e-9 * (matrix.norm() * x.norm() + rhs.norm());
}

} // namespace

std::vector<LocalVem> compute_local_matrices(const SurfaceMesh& mesh, const AssemblyOptions& options)
{
    const std::size_t n_faces = mesh.n_faces();
    std::vector<LocalVem> locals(n_faces);
    const std::size_t workers =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.threads, 1)), 1, std::max<std::size_t>(n_faces, 1));

    std::vector<std::exception_ptr> failures(workers);
    auto work = [&](std::size_t w) {
        const std::size_t begin = n_faces * w / workers;
        const std::size_t end = n_faces * (w + 1) / workers;
        try {
            for (std::size_t f = begin; f < end; ++f) locals[f] = local_vem(build_frame(mesh, f));
        } catch (...) {
            failures[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    return locals;
}

Eigen::VectorXd assemble_load(const SurfaceMesh& mesh, const std::vector<LocalVem>& locals,
                              const Eigen::VectorXd& nodal_load, bool subtract_mean)
{
    Eigen::VectorXd shifted = nodal_load;
    if (subtract_mean) {
        // Row sums of the global mass matrix, accumulated element by element.
        Eigen::VectorXd weights = Eigen::VectorXd::Zero(nodal_load.size());
        for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
            const Eigen::VectorXd rows = locals[f].mass.rowwise().sum();
            for (std::size_t i = 0; i < mesh.faces[f].size(); ++i) {
                weights[mesh.faces[f][i]] += rows[static_cast<Eigen::Index>(i)];
            }
        }
        shifted.array() -= weights.dot(nodal_load) / weights.sum();
    }

    Eigen::VectorXd load = Eigen::VectorXd::Zero(nodal_load.size());
    for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
        const Face& face = mesh.faces[f];
        const Eigen::VectorXd rows = locals[f].mass.rowwise().sum();
        double integral = 0.0;
        for (std::size_t i = 0; i < face.size(); ++i) {
            integral += rows[static_cast<Eigen::Index>(i)] * shifted[face[i]];
        }
        const double share = integral / static_cast<double>(face.size());
        for (int v : face) load[v] += share;
    }
    return load;
}

DiscreteSystem assemble(const SurfaceMesh& mesh, const BenchmarkProblem& problem, const AssemblyOptions& options)
{
    const bool open = has_boundary(mesh);
    if (problem.zero_mean_constrained && open) {
        throw Error(ErrorKind::ConstraintMismatch,
                    "problem " + problem.name + " needs a closed mesh, but the mesh has boundary edges");
    }
    if (!problem.zero_mean_constrained && (!open || !problem.boundary_data)) {
        throw Error(ErrorKind::ConstraintMismatch,
                    "problem " + problem.name + " needs a mesh with boundary and Dirichlet data");
    }

    const std::vector<LocalVem> locals = compute_local_matrices(mesh, options);

    DiscreteSystem system;
    system.stiffness = scatter(mesh, locals, &LocalVem::stiffness);
    system.stiffness_consistency = scatter(mesh, locals, &LocalVem::stiffness_consistency);
    system.mass = scatter(mesh, locals, &LocalVem::mass);

    const auto n = static_cast<Eigen::Index>(mesh.n_vertices());
    Eigen::VectorXd nodal(n);
    for (Eigen::Index i = 0; i < n; ++i) nodal[i] = problem.load_f(mesh.vertices[static_cast<std::size_t>(i)]);
    system.load = assemble_load(mesh, locals, nodal, problem.zero_mean_constrained);

    if (problem.zero_mean_constrained) {
        system.constraint = ConstraintKind::ZeroMean;
    } else {
        system.constraint = ConstraintKind::Dirichlet;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (mesh.boundary[static_cast<std::size_t>(i)]) system.fixed_dofs.push_back(static_cast<int>(i));
        }
        system.fixed_values.resize(static_cast<Eigen::Index>(system.fixed_dofs.size()));
        for (std::size_t k = 0; k < system.fixed_dofs.size(); ++k) {
            system.fixed_values[static_cast<Eigen::Index>(k)] =
                (*problem.boundary_data)(mesh.vertices[static_cast<std::size_t>(system.fixed_dofs[k])]);
        }
    }
    return system;
}

namespace {

// Components of the graph of off-diagonal stiffness couplings.
int count_components(const SparseMatrix& a)
{
    const auto n = static_cast<std::size_t>(a.rows());
    std::vector<int> label(n, -1);
    std::vector<Eigen::Index> stack;
    int components = 0;
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (label[seed] >= 0) continue;
        label[seed] = components;
        stack.push_back(static_cast<Eigen::Index>(seed));
        while (!stack.empty()) {
            const Eigen::Index col = stack.back();
            stack.pop_back();
            for (SparseMatrix::InnerIterator it(a, col); it; ++it) {
                auto& l = label[static_cast<std::size_t>(it.row())];
                if (l < 0 && it.value() != 0.0) {
                    l = components;
                    stack.push_back(it.row());
                }
            }
        }
        ++components;
    }
    return components;
}

SolveReport solve_zero_mean(DiscreteSystem& system, const SolveOptions& options)
{
    const Eigen::Index n = system.n_dofs();
    if (const int c = count_components(system.stiffness); c > 1) {
        throw Error(ErrorKind::SingularSystem,
                    "stiffness matrix has " + std::to_string(c) + " disconnected components; the mean constraint fixes only one");
    }
    const Eigen::VectorXd mass_ones = system.mass * Eigen::VectorXd::Ones(n);
    SolveReport report;

    if (options.solver == SolverKind::Direct) {
        std::vector<Eigen::Triplet<double>> triplets;
        triplets.reserve(static_cast<std::size_t>(system.stiffness.nonZeros() + n));
        for (Eigen::Index col = 0; col < system.stiffness.outerSize(); ++col) {
            for (SparseMatrix::InnerIterator it(system.stiffness, col); it; ++it) {
                if (it.row() < n - 1) triplets.emplace_back(it.row(), it.col(), it.value());
            }
        }
        for (Eigen::Index j = 0; j < n; ++j) triplets.emplace_back(n - 1, j, mass_ones[j]);
        SparseMatrix square(n, n);
        square.setFromTriplets(triplets.begin(), triplets.end());
        square.makeCompressed();
        Eigen::VectorXd rhs = system.load;
        rhs[n - 1] = 0.0;

        Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
        lu.compute(square);
        if (lu.info() != Eigen::Success) {
            throw Error(ErrorKind::SingularSystem, "factorization of the constrained system failed: " + lu.lastErrorMessage());
        }
        system.solution = lu.solve(rhs);
        report.residual = (square * system.solution - rhs).norm();
        report.residual_bound = residual_bound(square, system.solution, rhs);
    } else {
        std::vector<Eigen::Triplet<double>> triplets;
        triplets.reserve(static_cast<std::size_t>(system.stiffness.nonZeros() + 2 * n));
        for (Eigen::Index col = 0; col < system.stiffness.outerSize(); ++col) {
            for (SparseMatrix::InnerIterator it(system.stiffness, col); it; ++it) {
                triplets.emplace_back(it.row(), it.col(), it.value());
            }
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            triplets.emplace_back(n, j, mass_ones[j]);
            triplets.emplace_back(j, n, mass_ones[j]);
        }
        SparseMatrix saddle(n + 1, n + 1);
        saddle.setFromTriplets(triplets.begin(), triplets.end());
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
        rhs.head(n) = system.load;

        Eigen::MINRES<SparseMatrix, Eigen::Lower | Eigen::Upper, Eigen::IdentityPreconditioner> minres;
        minres.setTolerance(options.iterative_tolerance);
        minres.setMaxIterations(static_cast<Eigen::Index>(20 * (n + 1)));
        minres.compute(saddle);
        const Eigen::VectorXd x = minres.solve(rhs);
        if (minres.info() != Eigen::Success) {
            throw Error(ErrorKind::SingularSystem, "MINRES did not converge on the saddle-point system");
        }
        system.solution = x.head(n);
        report.iterations = static_cast<int>(minres.iterations());
        report.residual = (saddle * x - rhs).norm();
        report.residual_bound = residual_bound(saddle, x, rhs);
    }
    report.discrete_mean = mass_ones.dot(system.solution);
    return report;
}

SolveReport solve_dirichlet(DiscreteSystem& system, const SolveOptions& options)
{
    const Eigen::Index n = system.n_dofs();
    std::vector<Eigen::Index> free_index(static_cast<std::size_t>(n), -1);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
    std::vector<bool> fixed(static_cast<std::size_t>(n), false);
    for (std::size_t k = 0; k < system.fixed_dofs.size(); ++k) {
        fixed[static_cast<std::size_t>(system.fixed_dofs[k])] = true;
        full[system.fixed_dofs[k]] = system.fixed_values[static_cast<Eigen::Index>(k)];
    }
    Eigen::Index n_free = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!fixed[static_cast<std::size_t>(i)]) free_index[static_cast<std::size_t>(i)] = n_free++;
    }
    if (n_free == 0) {
        throw Error(ErrorKind::SingularSystem, "every vertex is constrained");
    }

    // rhs_f = b_f - A_fd x_d
    const Eigen::VectorXd lifted = system.stiffness * full;
    Eigen::VectorXd rhs(n_free);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(system.stiffness.nonZeros()));
    for (Eigen::Index col = 0; col < system.stiffness.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(system.stiffness, col); it; ++it) {
            const Eigen::Index r = free_index[static_cast<std::size_t>(it.row())];
            const Eigen::Index c = free_index[static_cast<std::size_t>(it.col())];
            if (r >= 0 && c >= 0) triplets.emplace_back(r, c, it.value());
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index r = free_index[static_cast<std::size_t>(i)];
        if (r >= 0) rhs[r] = system.load[i] - lifted[i];
    }
    SparseMatrix reduced(n_free, n_free);
    reduced.setFromTriplets(triplets.begin(), triplets.end());

    SolveReport report;
    Eigen::VectorXd x;
    if (options.solver == SolverKind::Direct) {
        Eigen::SimplicialLDLT<SparseMatrix> ldlt;
        ldlt.compute(reduced);
        if (ldlt.info() != Eigen::Success) {
            throw Error(ErrorKind::SingularSystem, "LDL^T factorization of the reduced system failed");
        }
        x = ldlt.solve(rhs);
    } else {
        Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> cg;
        cg.setTolerance(options.iterative_tolerance);
        cg.setMaxIterations(static_cast<Eigen::Index>(20 * n_free));
        cg.compute(reduced);
        x = cg.solve(rhs);
        if (cg.info() != Eigen::Success) {
            throw Error(ErrorKind::SingularSystem, "conjugate gradients did not converge");
        }
        report.iterations = static_cast<int>(cg.iterations());
    }
    report.residual = (reduced * x - rhs).norm();
    report.residual_bound = residual_bound(reduced, x, rhs);

    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index r = free_index[static_cast<std::size_t>(i)];
        if (r >= 0) full[i] = x[r];
    }
    system.solution = std::move(full);
    report.discrete_mean = (system.mass * Eigen::VectorXd::Ones(n)).dot(system.solution);
    return report;
}

} // namespace

SolveReport solve(DiscreteSystem& system, const SolveOptions& options)
{
    if (system.n_dofs() == 0) throw Error(ErrorKind::SingularSystem, "empty system");
    SolveReport report = system.constraint == ConstraintKind::ZeroMean ? solve_zero_mean(system, options)
                                                                       : solve_dirichlet(system, options);
    if (!system.solution.allFinite() || !(report.residual <= report.residual_bound)) {
        std::ostringstream msg;
        msg << "residual " << report.residual << " exceeds bound " << report.residual_bound;
        throw Error(ErrorKind::SingularSystem, msg.str());
    }
    return report;
}

void write_matrix_market(const std::string& path, const SparseMatrix& matrix)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << matrix.rows() << ' ' << matrix.cols() << ' ' << matrix.nonZeros() << '\n';
    char buf[64];
    for (Eigen::Index col = 0; col < matrix.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(matrix, col); it; ++it) {
            std::snprintf(buf, sizeof(buf), "%.17g", it.value());
            out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << buf << '\n';
        }
    }
}

void write_vector(const std::string& path, const Eigen::VectorXd& values)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
    char buf[64];
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", values[i]);
        out << buf;
    }
}

} // namespace svem
