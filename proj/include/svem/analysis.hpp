#pragma once

#include <svem/assembly.hpp>
#include <svem/mesh.hpp>
#include <svem/surface.hpp>

#include <Eigen/Core>

#include <optional>
#include <span>
#include <vector>

namespace svem {

/// Vertex values of `u` (the k = 1 interpolant).
Eigen::VectorXd interpolate(const SurfaceMesh& mesh, const ScalarField& u);

///
/// Discrete errors of one refinement level, with delta = u_I - xi:
///   err_l2   = sqrt(delta^T M delta)
///   err_h1   = sqrt(delta^T A delta)
///   err_linf = max_i |delta_i|
///
struct ErrorRecord {
    int level = 0;
    double h = 0.0;
    std::size_t n_dofs = 0;
    double err_l2 = 0.0;
    double err_linf = 0.0;
    double err_h1 = 0.0;
    std::optional<double> eoc_l2;
    std::optional<double> eoc_linf;
    std::optional<double> eoc_h1;
};

ErrorRecord compute_errors(const DiscreteSystem& system, const SurfaceMesh& mesh, const BenchmarkProblem& problem);

/// log(e_prev / e_cur) / log(h_prev / h_cur).
double eoc(double h_prev, double e_prev, double h_cur, double e_cur);

/// Fills the eoc fields from consecutive records; the first record keeps none.
void fill_eoc(std::vector<ErrorRecord>& records);

/// Least-squares slope of log(values) against log(h).
double loglog_slope(std::span<const double> h, std::span<const double> values);

struct Slopes {
    double l2 = 0.0;
    double linf = 0.0;
    double h1 = 0.0;
};

Slopes fit_slopes(const std::vector<ErrorRecord>& records);

/// Default lattice resolution of geometric_probe: 15 samples per fan triangle.
inline constexpr int k_default_probe_resolution = 4;

/// Largest |signed distance| to `surface` over the face sample points of
/// every face (see face_sample_points).
double geometric_probe(const SurfaceMesh& mesh, const SmoothSurface& surface,
                       int resolution = k_default_probe_resolution);

} // namespace svem
