#pragma once

#include <svem/mesh.hpp>

#include <Eigen/Core>

namespace svem {

///
/// Lowest-order (k = 1) virtual element matrices of one polygon.
///
/// Degrees of freedom are the vertex values, in the order of the frame's
/// vertex cycle. The polynomial space is spanned by the scaled monomials
/// {1, (x - x_E) / h_E, (y - y_E) / h_E}, with x_E the polygon centroid
/// and h_E its diameter.
///
struct LocalVem {
    /// 3 x n: dof vector -> monomial coefficients of the elliptic projection.
    Eigen::MatrixXd proj_coeffs;
    /// n x n: dof vector -> vertex values of the elliptic projection.
    Eigen::MatrixXd proj_dofs;
    /// Consistency part of the stiffness: |E| grad(P phi_i) . grad(P phi_j).
    Eigen::MatrixXd stiffness_consistency;
    Eigen::MatrixXd stiffness;
    Eigen::MatrixXd mass;

    Eigen::Index n_dofs() const { return proj_dofs.rows(); }
};

/// Integrals of 1, X, Y, X^2, XY, Y^2 over a polygon, with X, Y measured
/// from `shift`. Exact (Gauss-Green on each edge).
struct PolygonMoments {
    double m00 = 0.0;
    double m10 = 0.0;
    double m01 = 0.0;
    double m20 = 0.0;
    double m11 = 0.0;
    double m02 = 0.0;
};

PolygonMoments polygon_moments(const std::vector<Point2>& coords, const Point2& shift);

/// Values of the three scaled monomials at a point of the frame.
Eigen::Vector3d monomials(const ElementFrame& frame, const Point2& q);

///
/// Elliptic projection. For each vertex basis function phi_i, the gradient
/// rows are the boundary integrals of phi_i grad(m) . n, exact for a
/// piecewise linear trace; the constant row preserves the mean of the
/// vertex values. Throws SingularLocalSystem if the 3 x 3 system is singular.
///
void compute_projector(const ElementFrame& frame, LocalVem& out);

/// Consistency term plus the dof-Euclidean stabilization
/// (I - P)^T (I - P), with P = proj_dofs.
void compute_stiffness(const ElementFrame& frame, LocalVem& out);

/// Exact integral of the projected functions plus the area-scaled
/// stabilization |E| (I - P)^T (I - P).
void compute_mass(const ElementFrame& frame, LocalVem& out);

/// All of the above.
LocalVem local_vem(const ElementFrame& frame);

} // namespace svem
