#include <svem/analysis.hpp>
#include <svem/error.hpp>

#include <algorithm>
#include <cmath>

namespace svem {

Eigen::VectorXd interpolate(const SurfaceMesh& mesh, const ScalarField& u)
{
    Eigen::VectorXd values(static_cast<Eigen::Index>(mesh.n_vertices()));
    for (std::size_t i = 0; i < mesh.n_vertices(); ++i) values[static_cast<Eigen::Index>(i)] = u(mesh.vertices[i]);
    return values;
}

ErrorRecord compute_errors(const DiscreteSystem& system, const SurfaceMesh& mesh, const BenchmarkProblem& problem)
{
    if (system.solution.size() != system.n_dofs()) {
        throw Error(ErrorKind::InvalidParameter, "system has not been solved");
    }
    const Eigen::VectorXd delta = interpolate(mesh, problem.exact_u) - system.solution;
    ErrorRecord record;
    record.n_dofs = mesh.n_vertices();
    // Clamp tiny negative round-off of the quadratic forms.
    record.err_l2 = std::sqrt(std::max(0.0, delta.dot(system.mass * delta)));
    record.err_h1 = std::sqrt(std::max(0.0, delta.dot(system.stiffness * delta)));
    record.err_linf = delta.lpNorm<Eigen::Infinity>();
    return record;
}

double eoc(double h_prev, double e_prev, double h_cur, double e_cur)
{
    return std::log(e_prev / e_cur) / std::log(h_prev / h_cur);
}

void fill_eoc(std::vector<ErrorRecord>& records)
{
    for (std::size_t k = 1; k < records.size(); ++k) {
        const ErrorRecord& prev = records[k - 1];
        ErrorRecord& cur = records[k];
        cur.eoc_l2 = eoc(prev.h, prev.err_l2, cur.h, cur.err_l2);
        cur.eoc_linf = eoc(prev.h, prev.err_linf, cur.h, cur.err_linf);
        cur.eoc_h1 = eoc(prev.h, prev.err_h1, cur.h, cur.err_h1);
    }
}

double loglog_slope(std::span<const double> h, std::span<const double> values)
{
    if (h.size() != values.size() || h.size() < 2) {
        throw Error(ErrorKind::InvalidParameter, "slope fit needs at least two matching samples");
    }
    const auto n = static_cast<double>(h.size());
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        sx += std::log(h[i]);
        sy += std::log(values[i]);
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double dx = std::log(h[i]) - mx;
        sxy += dx * (std::log(values[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

Slopes fit_slopes(const std::vector<ErrorRecord>& records)
{
    std::vector<double> h;
    std::vector<double> l2;
    std::vector<double> linf;
    std::vector<double> h1;
    for (const ErrorRecord& r : records) {
        h.push_back(r.h);
        l2.push_back(r.err_l2);
        linf.push_back(r.err_linf);
        h1.push_back(r.err_h1);
    }
    return {loglog_slope(h, l2), loglog_slope(h, linf), loglog_slope(h, h1)};
}

double geometric_probe(const SurfaceMesh& mesh, const SmoothSurface& surface, int resolution)
{
    if (resolution < 1) throw Error(ErrorKind::InvalidParameter, "probe resolution must be >= 1");
    double max_d = 0.0;
    for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
        for (const Point3& p : face_sample_points(mesh, f, resolution)) {
            max_d = std::max(max_d, std::abs(surface.signed_distance(p)));
        }
    }
    return max_d;
}

} // namespace svem
