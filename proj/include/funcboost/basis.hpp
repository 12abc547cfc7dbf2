#pragma once

// Basis systems for functional data: Fourier, B-spline and monomial families
// on a closed interval, with evaluation, derivative evaluation, Gram and
// roughness-penalty matrices, and penalized least-squares coefficient fitting.

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace funcboost {

enum class BasisKind { Fourier, BSpline, Polynomial };

std::string to_string(BasisKind kind);
BasisKind basis_kind_from_string(const std::string& name);

/// Nodes and positive weights for integrating over [a, b].
struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;

    static QuadratureRule gauss_legendre(int num_points, double a, double b);
    /// Composite Simpson rule with `intervals` (even) subintervals, i.e.
    /// intervals + 1 nodes.
    static QuadratureRule composite_simpson(int intervals, double a, double b);
};

/// A family of K basis functions on a shared domain [a, b].
///
/// Fourier: the unit-norm system {1/sqrt(P), sqrt(2/P) sin(2 pi k t / P),
/// sqrt(2/P) cos(2 pi k t / P)} with period P = b - a, listed constant,
/// sin_1, cos_1, sin_2, ... ; an even K ends on the unpaired sin term.
/// All functions have unit L2 norm on [a, b] and the family is orthonormal,
/// so the Gram matrix is the identity.
///
/// BSpline: defined by a degree and a non-decreasing knot vector; the domain
/// is [knots[degree], knots[#knots-1-degree]] and K = #knots - degree - 1.
///
/// Polynomial: monomials {1, t, t^2, ...} in raw t.
class BasisSystem {
public:
    /// Empty placeholder (size 0); usable only after assigning a real basis
    /// from one of the factories below.
    BasisSystem() = default;

    static BasisSystem fourier(int size, double a, double b);
    static BasisSystem polynomial(int size, double a, double b);
    static BasisSystem bspline(int degree, std::vector<double> knots);
    /// Clamped B-spline basis with equally spaced interior knots.
    static BasisSystem bspline_uniform(int size, int degree, double a, double b);

    BasisKind kind() const { return kind_; }
    int size() const { return size_; }
    double lower() const { return a_; }
    double upper() const { return b_; }
    int degree() const;
    const std::vector<double>& knots() const;

    /// Row j holds the derivative-order-d values of every basis function at
    /// grid[j].  Grid points must lie in [a, b]; for B-splines d must not
    /// exceed the degree.
    Eigen::MatrixXd evaluate(const Eigen::VectorXd& grid, int derivative = 0) const;
    Eigen::VectorXd evaluate_at(double t, int derivative = 0) const;

    /// Gram matrix J with entries integral of psi_i psi_j over the domain.
    /// Closed form for Fourier (identity) and monomials; per-knot-span
    /// Gauss-Legendre (exact for the piecewise-polynomial integrand) for
    /// B-splines.
    Eigen::MatrixXd gram() const;

    /// Roughness matrix R with entries integral of the order-k derivatives
    /// psi_i^(k) psi_j^(k); k = 0 reduces to gram().
    Eigen::MatrixXd penalty(int derivative_order) const;

    bool operator==(const BasisSystem& other) const;
    bool operator!=(const BasisSystem& other) const { return !(*this == other); }

private:
    BasisKind kind_ = BasisKind::Fourier;
    int size_ = 0;
    double a_ = 0.0;
    double b_ = 1.0;
    int degree_ = 0;             // B-spline only
    std::vector<double> knots_;  // B-spline only, full augmented vector

    void check_point(double t) const;
    Eigen::MatrixXd product_integrals(int derivative_order) const;
};

/// Cross-Gram matrix with entries integral of row_basis_i * col_basis_j over
/// the shared domain.  Exact when both families admit a closed form; generic
/// composite-Simpson quadrature otherwise.  Throws on mismatched domains.
Eigen::MatrixXd cross_gram(const BasisSystem& row_basis, const BasisSystem& col_basis);

/// Coefficients c minimizing sum_j (values_j - sum_l c_l psi_l(grid_j))^2
/// + lambda c' R_k c via the normal equations.  With lambda = 0 the grid must
/// have at least basis.size() points and the design must be well conditioned.
Eigen::VectorXd fit_coefficients(const Eigen::VectorXd& grid, const Eigen::VectorXd& values,
                                 const BasisSystem& basis, double lambda = 0.0,
                                 int penalty_order = 2);

/// Row-wise variant: each row of `values` is one curve sampled on `grid`.
Eigen::MatrixXd fit_coefficients(const Eigen::VectorXd& grid, const Eigen::MatrixXd& values,
                                 const BasisSystem& basis, double lambda = 0.0,
                                 int penalty_order = 2);

}  // namespace funcboost
