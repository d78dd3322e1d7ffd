#pragma once

#include <svem/mesh.hpp>
#include <svem/surface.hpp>
#include <svem/vem.hpp>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <string>
#include <vector>

namespace svem {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class ConstraintKind { ZeroMean, Dirichlet };

struct DiscreteSystem {
    SparseMatrix stiffness;
    /// Stiffness without the stabilization term.
    SparseMatrix stiffness_consistency;
    SparseMatrix mass;
    Eigen::VectorXd load;
    ConstraintKind constraint = ConstraintKind::ZeroMean;
    /// Dirichlet only: constrained vertices (ascending) and their values.
    std::vector<int> fixed_dofs;
    Eigen::VectorXd fixed_values;
    /// Filled by solve().
    Eigen::VectorXd solution;

    Eigen::Index n_dofs() const { return load.size(); }
};

struct AssemblyOptions {
    /// Worker threads for the element loop. Results do not depend on it.
    int threads = 1;
};

/// Local matrices for every face, in face order.
std::vector<LocalVem> compute_local_matrices(const SurfaceMesh& mesh, const AssemblyOptions& options = {});

///
/// Global stiffness, mass and load for a benchmark problem.
///
/// Zero-mean problems shift the nodal load values by their discrete mean,
/// f_h = f - (1^T M f) / (1^T M 1), so that the load vector sums to zero.
/// The load is b_i = sum over faces E containing vertex i of (1 / n_E) times
/// the integral of f_h over E, where that integral uses the row sums of the
/// local mass matrix.
///
/// Throws ConstraintMismatch if a zero-mean problem is posed on a mesh with
/// boundary, or a problem without zero-mean constraint lacks a boundary or
/// boundary data.
///
DiscreteSystem assemble(const SurfaceMesh& mesh, const BenchmarkProblem& problem, const AssemblyOptions& options = {});

/// Load vector from nodal load values, given the local matrices.
Eigen::VectorXd assemble_load(const SurfaceMesh& mesh, const std::vector<LocalVem>& locals,
                              const Eigen::VectorXd& nodal_load, bool subtract_mean);

enum class SolverKind { Direct, Iterative };

struct SolveOptions {
    SolverKind solver = SolverKind::Direct;
    double iterative_tolerance = 1e-13;
};

struct SolveReport {
    /// Residual of the square system that was actually solved.
    double residual = 0.0;
    /// 1e-9 (||K|| ||x|| + ||rhs||) for that system.
    double residual_bound = 0.0;
    /// 1^T M xi.
    double discrete_mean = 0.0;
    int iterations = 0;
};

///
/// Solves the assembled system and stores the vertex values in
/// `system.solution`.
///
/// Zero-mean: the last equation of A xi = b is replaced by 1^T M xi = 0 and
/// the resulting square system is factorized (direct), or the symmetric
/// saddle-point system [A, M1; (M1)^T, 0] is solved with MINRES (iterative).
/// Dirichlet: fixed vertices are eliminated and the reduced SPD system is
/// solved by LDL^T (direct) or conjugate gradients (iterative).
///
/// Throws SingularSystem when the factorization fails or the residual
/// exceeds its bound.
///
SolveReport solve(DiscreteSystem& system, const SolveOptions& options = {});

/// Matrix Market coordinate file (1-based indices, as the format requires).
void write_matrix_market(const std::string& path, const SparseMatrix& matrix);
/// One value per line.
void write_vector(const std::string& path, const Eigen::VectorXd& values);

} // namespace svem
