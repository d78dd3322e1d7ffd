#include <svem/error.hpp>
#include <svem/vem.hpp>

#include <Eigen/Dense>

#include <cmath>

namespace svem {

PolygonMoments polygon_moments(const std::vector<Point2>& coords, const Point2& shift)
{
    PolygonMoments m;
    const std::size_t n = coords.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p = coords[i] - shift;
        const Point2 q = coords[(i + 1) % n] - shift;
        const double c = p.x() * q.y() - q.x() * p.y();
        m.m00 += c;
        m.m10 += (p.x() + q.x()) * c;
        m.m01 += (p.y() + q.y()) * c;
        m.m20 += (p.x() * p.x() + p.x() * q.x() + q.x() * q.x()) * c;
        m.m02 += (p.y() * p.y() + p.y() * q.y() + q.y() * q.y()) * c;
        m.m11 += (p.x() * q.y() + 2.0 * p.x() * p.y() + 2.0 * q.x() * q.y() + q.x() * p.y()) * c;
    }
    m.m00 /= 2.0;
    m.m10 /= 6.0;
    m.m01 /= 6.0;
    m.m20 /= 12.0;
    m.m02 /= 12.0;
    m.m11 /= 24.0;
    return m;
}

Eigen::Vector3d monomials(const ElementFrame& frame, const Point2& q)
{
    const Point2 s = (q - frame.centroid) / frame.diameter;
    return Eigen::Vector3d(1.0, s.x(), s.y());
}

void compute_projector(const ElementFrame& frame, LocalVem& out)
{
    const auto n = static_cast<Eigen::Index>(frame.size());
    const double h = frame.diameter;

    Eigen::MatrixXd B(3, n);
    Eigen::MatrixXd D(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto prev = static_cast<std::size_t>((i + n - 1) % n);
        const auto cur = static_cast<std::size_t>(i);
        const Point2 flux =
            0.5 * (frame.edge_lengths[prev] * frame.edge_normals[prev] + frame.edge_lengths[cur] * frame.edge_normals[cur]);
        B(0, i) = 1.0 / static_cast<double>(n);
        B(1, i) = flux.x() / h;
        B(2, i) = flux.y() / h;
        D.row(i) = monomials(frame, frame.coords[cur]).transpose();
    }

    const Eigen::Matrix3d G = B * D;
    Eigen::FullPivLU<Eigen::Matrix3d> lu(G);
    if (!lu.isInvertible()) {
        throw Error(ErrorKind::SingularLocalSystem, "projector system is singular");
    }
    out.proj_coeffs = lu.solve(B);
    out.proj_dofs = D * out.proj_coeffs;
}

void compute_stiffness(const ElementFrame& frame, LocalVem& out)
{
    const Eigen::Index n = out.proj_dofs.rows();
    // Gradients of the scaled monomials are constant: e_x / h, e_y / h.
    const Eigen::MatrixXd grads = out.proj_coeffs.bottomRows(2) / frame.diameter;
    out.stiffness_consistency = frame.area * grads.transpose() * grads;
    const Eigen::MatrixXd residual = Eigen::MatrixXd::Identity(n, n) - out.proj_dofs;
    out.stiffness = out.stiffness_consistency + residual.transpose() * residual;
}

void compute_mass(const ElementFrame& frame, LocalVem& out)
{
    const Eigen::Index n = out.proj_dofs.rows();
    const PolygonMoments mom = polygon_moments(frame.coords, frame.centroid);
    const double h = frame.diameter;
    Eigen::Matrix3d H;
    H << mom.m00, mom.m10 / h, mom.m01 / h,
        mom.m10 / h, mom.m20 / (h * h), mom.m11 / (h * h),
        mom.m01 / h, mom.m11 / (h * h), mom.m02 / (h * h);
    const Eigen::MatrixXd residual = Eigen::MatrixXd::Identity(n, n) - out.proj_dofs;
    out.mass = out.proj_coeffs.transpose() * H * out.proj_coeffs + frame.area * residual.transpose() * residual;
}

LocalVem local_vem(const ElementFrame& frame)
{
    LocalVem out;
    compute_projector(frame, out);
    compute_stiffness(frame, out);
    compute_mass(frame, out);
    return out;
}

} // namespace svem
