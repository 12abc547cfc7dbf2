#include "funcboost/basis.hpp"

#include "funcboost/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace funcboost {

namespace {

constexpr double kPi = std::numbers::pi;

// Relative slack when checking that a point lies inside the domain.
double domain_tolerance(double a, double b) {
    return 1e-12 * std::max({1.0, std::abs(a), std::abs(b), b - a});
}

}  // namespace

std::string to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::Fourier: return "fourier";
        case BasisKind::BSpline: return "bspline";
        case BasisKind::Polynomial: return "polynomial";
    }
    throw std::logic_error("unknown basis kind");
}

BasisKind basis_kind_from_string(const std::string& name) {
    if (name == "fourier") return BasisKind::Fourier;
    if (name == "bspline") return BasisKind::BSpline;
    if (name == "polynomial" || name == "poly") return BasisKind::Polynomial;
    throw std::invalid_argument("unknown basis kind: " + name);
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

QuadratureRule QuadratureRule::gauss_legendre(int num_points, double a, double b) {
    if (num_points < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    if (!(a < b)) throw std::invalid_argument("gauss_legendre: degenerate interval");

    QuadratureRule rule;
    rule.nodes.resize(num_points);
    rule.weights.resize(num_points);

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const int pairs = (num_points + 1) / 2;

    for (int i = 0; i < pairs; ++i) {
        // Newton iteration from the Chebyshev estimate of the i-th root.
        double z = std::cos(kPi * (i + 0.75) / (num_points + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < num_points; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = num_points * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        rule.nodes[i] = mid - half * z;
        rule.nodes[num_points - 1 - i] = mid + half * z;
        const double w = 2.0 * half / ((1.0 - z * z) * pp * pp);
        rule.weights[i] = w;
        rule.weights[num_points - 1 - i] = w;
    }
    return rule;
}

QuadratureRule QuadratureRule::composite_simpson(int intervals, double a, double b) {
    if (intervals < 2 || intervals % 2 != 0)
        throw std::invalid_argument("composite_simpson: interval count must be even and >= 2");
    if (!(a < b)) throw std::invalid_argument("composite_simpson: degenerate interval");

    QuadratureRule rule;
    const int n = intervals + 1;
    const double h = (b - a) / intervals;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int j = 0; j < n; ++j) {
        rule.nodes[j] = a + h * j;
        double c = (j == 0 || j == n - 1) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        rule.weights[j] = c * h / 3.0;
    }
    rule.nodes[n - 1] = b;
    return rule;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

BasisSystem BasisSystem::fourier(int size, double a, double b) {
    if (size < 1) throw std::invalid_argument("fourier basis: size must be >= 1");
    if (!(a < b)) throw std::invalid_argument("fourier basis: degenerate domain");
    BasisSystem basis;
    basis.kind_ = BasisKind::Fourier;
    basis.size_ = size;
    basis.a_ = a;
    basis.b_ = b;
    return basis;
}

BasisSystem BasisSystem::polynomial(int size, double a, double b) {
    if (size < 1) throw std::invalid_argument("polynomial basis: size must be >= 1");
    if (!(a < b)) throw std::invalid_argument("polynomial basis: degenerate domain");
    BasisSystem basis;
    basis.kind_ = BasisKind::Polynomial;
    basis.size_ = size;
    basis.a_ = a;
    basis.b_ = b;
    return basis;
}

BasisSystem BasisSystem::bspline(int degree, std::vector<double> knots) {
    if (degree < 0) throw std::invalid_argument("bspline basis: negative degree");
    const int m = static_cast<int>(knots.size());
    const int size = m - degree - 1;
    if (size < 1)
        throw std::invalid_argument("bspline basis: need at least degree + 2 knots");
    for (int i = 1; i < m; ++i)
        if (knots[i] < knots[i - 1])
            throw std::invalid_argument("bspline basis: knot vector must be non-decreasing");
    const double a = knots[degree];
    const double b = knots[m - 1 - degree];
    if (!(a < b))
        throw std::invalid_argument("bspline basis: degenerate domain (repeated span knots)");

    BasisSystem basis;
    basis.kind_ = BasisKind::BSpline;
    basis.size_ = size;
    basis.a_ = a;
    basis.b_ = b;
    basis.degree_ = degree;
    basis.knots_ = std::move(knots);
    return basis;
}

BasisSystem BasisSystem::bspline_uniform(int size, int degree, double a, double b) {
    if (degree < 0) throw std::invalid_argument("bspline basis: negative degree");
    if (size < degree + 1)
        throw std::invalid_argument("bspline basis: size must be at least degree + 1");
    if (!(a < b)) throw std::invalid_argument("bspline basis: degenerate domain");

    const int breaks = size - degree + 1;  // distinct breakpoints incl. endpoints
    std::vector<double> knots;
    knots.reserve(size + degree + 1);
    for (int i = 0; i < degree; ++i) knots.push_back(a);
    for (int i = 0; i < breaks; ++i)
        knots.push_back(a + (b - a) * static_cast<double>(i) / (breaks - 1));
    for (int i = 0; i < degree; ++i) knots.push_back(b);
    knots[degree] = a;
    knots[knots.size() - 1 - degree] = b;
    return bspline(degree, std::move(knots));
}

int BasisSystem::degree() const {
    if (kind_ != BasisKind::BSpline) throw std::logic_error("degree(): not a B-spline basis");
    return degree_;
}

const std::vector<double>& BasisSystem::knots() const {
    if (kind_ != BasisKind::BSpline) throw std::logic_error("knots(): not a B-spline basis");
    return knots_;
}

bool BasisSystem::operator==(const BasisSystem& other) const {
    return kind_ == other.kind_ && size_ == other.size_ && a_ == other.a_ && b_ == other.b_ &&
           degree_ == other.degree_ && knots_ == other.knots_;
}

void BasisSystem::check_point(double t) const {
    const double tol = domain_tolerance(a_, b_);
    if (t < a_ - tol || t > b_ + tol)
        throw std::invalid_argument("basis evaluation: point outside domain");
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

// Value of the d-th derivative of sin(w t) resp. cos(w t).
double trig_derivative(bool is_sin, double w, double t, int d) {
    const double wt = w * t;
    const double scale = std::pow(w, d);
    const int phase = is_sin ? d % 4 : (d + 1) % 4;
    switch (phase) {
        case 0: return scale * std::sin(wt);
        case 1: return scale * std::cos(wt);
        case 2: return -scale * std::sin(wt);
        default: return -scale * std::cos(wt);
    }
}

double falling_factorial(int l, int d) {
    double f = 1.0;
    for (int i = 0; i < d; ++i) f *= (l - i);
    return f;
}

// Index of the knot span containing t: largest i with knots[i] <= t < knots[i+1],
// clamped so that the right domain endpoint falls into the last proper span.
int find_span(const std::vector<double>& knots, int degree, int size, double t) {
    const int n = size - 1;
    if (t >= knots[n + 1]) return n;
    if (t <= knots[degree]) return degree;
    int low = degree, high = n + 1;
    int mid = (low + high) / 2;
    while (t < knots[mid] || t >= knots[mid + 1]) {
        if (t < knots[mid])
            high = mid;
        else
            low = mid;
        mid = (low + high) / 2;
    }
    return mid;
}

// Values and derivatives up to order nd of the degree+1 B-spline basis
// functions that are nonzero on the given span (Cox-de Boor recurrence with
// the standard derivative triangle).  ders is (nd+1) x (degree+1).
void bspline_ders(const std::vector<double>& knots, int degree, int span, double t, int nd,
                  Eigen::MatrixXd& ders) {
    const int p = degree;
    Eigen::MatrixXd ndu(p + 1, p + 1);
    Eigen::VectorXd left(p + 1), right(p + 1);
    ndu(0, 0) = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = t - knots[span + 1 - j];
        right[j] = knots[span + j] - t;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu(j, r) = right[r + 1] + left[j - r];
            const double temp = ndu(r, j - 1) / ndu(j, r);
            ndu(r, j) = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu(j, j) = saved;
    }

    ders.setZero(nd + 1, p + 1);
    for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);

    Eigen::MatrixXd a(2, p + 1);
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a(0, 0) = 1.0;
        for (int k = 1; k <= nd; ++k) {
            double d = 0.0;
            const int rk = r - k;
            const int pk = p - k;
            if (r >= k) {
                a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
                d = a(s2, 0) * ndu(rk, pk);
            }
            const int j1 = (rk >= -1) ? 1 : -rk;
            const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
                d += a(s2, j) * ndu(rk + j, pk);
            }
            if (r <= pk) {
                a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
                d += a(s2, k) * ndu(r, pk);
            }
            ders(k, r) = d;
            std::swap(s1, s2);
        }
    }

    double factor = p;
    for (int k = 1; k <= nd; ++k) {
        for (int j = 0; j <= p; ++j) ders(k, j) *= factor;
        factor *= (p - k);
    }
}

}  // namespace

Eigen::VectorXd BasisSystem::evaluate_at(double t, int derivative) const {
    Eigen::VectorXd grid(1);
    grid[0] = t;
    return evaluate(grid, derivative).row(0);
}

Eigen::MatrixXd BasisSystem::evaluate(const Eigen::VectorXd& grid, int derivative) const {
    if (derivative < 0) throw std::invalid_argument("basis evaluation: negative derivative order");
    const auto n = grid.size();
    for (Eigen::Index j = 0; j < n; ++j) check_point(grid[j]);

    Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(n, size_);
    switch (kind_) {
        case BasisKind::Fourier: {
            const double period = b_ - a_;
            const double norm0 = 1.0 / std::sqrt(period);
            const double norm = std::sqrt(2.0 / period);
            for (Eigen::Index j = 0; j < n; ++j) {
                phi(j, 0) = derivative == 0 ? norm0 : 0.0;
                for (int l = 1; l < size_; ++l) {
                    const int freq = (l + 1) / 2;
                    const bool is_sin = (l % 2 == 1);
                    const double w = 2.0 * kPi * freq / period;
                    phi(j, l) = norm * trig_derivative(is_sin, w, grid[j], derivative);
                }
            }
            break;
        }
        case BasisKind::Polynomial: {
            for (Eigen::Index j = 0; j < n; ++j) {
                const double t = grid[j];
                for (int l = derivative; l < size_; ++l)
                    phi(j, l) = falling_factorial(l, derivative) * std::pow(t, l - derivative);
            }
            break;
        }
        case BasisKind::BSpline: {
            if (derivative > degree_)
                throw std::invalid_argument(
                    "basis evaluation: derivative order exceeds B-spline degree");
            Eigen::MatrixXd ders;
            for (Eigen::Index j = 0; j < n; ++j) {
                const double t = std::clamp(grid[j], a_, b_);
                const int span = find_span(knots_, degree_, size_, t);
                bspline_ders(knots_, degree_, span, t, derivative, ders);
                for (int i = 0; i <= degree_; ++i)
                    phi(j, span - degree_ + i) = ders(derivative, i);
            }
            break;
        }
    }
    return phi;
}

// ---------------------------------------------------------------------------
// Gram and penalty matrices
// ---------------------------------------------------------------------------

Eigen::MatrixXd BasisSystem::product_integrals(int derivative_order) const {
    const int d = derivative_order;
    switch (kind_) {
        case BasisKind::Fourier: {
            // Orthogonality makes all cross terms vanish over the full period.
            Eigen::MatrixXd r = Eigen::MatrixXd::Zero(size_, size_);
            const double period = b_ - a_;
            r(0, 0) = d == 0 ? 1.0 : 0.0;
            for (int l = 1; l < size_; ++l) {
                const int freq = (l + 1) / 2;
                const double w = 2.0 * kPi * freq / period;
                r(l, l) = std::pow(w, 2 * d);
            }
            return r;
        }
        case BasisKind::Polynomial: {
            Eigen::MatrixXd r = Eigen::MatrixXd::Zero(size_, size_);
            for (int i = d; i < size_; ++i) {
                for (int j = d; j < size_; ++j) {
                    const int power = i + j - 2 * d;
                    const double integral =
                        (std::pow(b_, power + 1) - std::pow(a_, power + 1)) / (power + 1);
                    r(i, j) = falling_factorial(i, d) * falling_factorial(j, d) * integral;
                }
            }
            return r;
        }
        case BasisKind::BSpline: {
            if (d > degree_)
                throw std::invalid_argument("penalty: derivative order exceeds B-spline degree");
            // Gauss-Legendre per knot span, exact for the degree <= 2p integrand.
            Eigen::MatrixXd r = Eigen::MatrixXd::Zero(size_, size_);
            const QuadratureRule ref = QuadratureRule::gauss_legendre(degree_ + 1, 0.0, 1.0);
            for (std::size_t s = 0; s + 1 < knots_.size(); ++s) {
                const double u0 = knots_[s], u1 = knots_[s + 1];
                if (!(u1 > u0) || u1 <= a_ || u0 >= b_) continue;
                const double len = u1 - u0;
                Eigen::VectorXd nodes = (ref.nodes.array() * len + u0).matrix();
                const Eigen::MatrixXd phi = evaluate(nodes, d);
                r.noalias() += phi.transpose() * (ref.weights * len).asDiagonal() * phi;
            }
            // Exact symmetry despite accumulation order.
            return 0.5 * (r + r.transpose());
        }
    }
    throw std::logic_error("unknown basis kind");
}

Eigen::MatrixXd BasisSystem::gram() const { return product_integrals(0); }

Eigen::MatrixXd BasisSystem::penalty(int derivative_order) const {
    if (derivative_order < 0) throw std::invalid_argument("penalty: negative derivative order");
    return product_integrals(derivative_order);
}

Eigen::MatrixXd cross_gram(const BasisSystem& row_basis, const BasisSystem& col_basis) {
    const double tol = domain_tolerance(row_basis.lower(), row_basis.upper());
    if (std::abs(row_basis.lower() - col_basis.lower()) > tol ||
        std::abs(row_basis.upper() - col_basis.upper()) > tol)
        throw std::invalid_argument("cross_gram: bases live on different domains");

    if (row_basis == col_basis) return row_basis.gram();

    const int rows = row_basis.size();
    const int cols = col_basis.size();

    if (row_basis.kind() == col_basis.kind()) {
        // Nested families: the first min(K1, K2) functions coincide.
        if (row_basis.kind() == BasisKind::Fourier) {
            Eigen::MatrixXd j = Eigen::MatrixXd::Zero(rows, cols);
            for (int i = 0; i < std::min(rows, cols); ++i) j(i, i) = 1.0;
            return j;
        }
        if (row_basis.kind() == BasisKind::Polynomial) {
            const double a = row_basis.lower(), b = row_basis.upper();
            Eigen::MatrixXd j(rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int l = 0; l < cols; ++l)
                    j(i, l) = (std::pow(b, i + l + 1) - std::pow(a, i + l + 1)) / (i + l + 1);
            return j;
        }
    }

    const int intervals = std::max(4096, 32 * (rows + cols));
    const QuadratureRule rule = QuadratureRule::composite_simpson(
        intervals + intervals % 2, row_basis.lower(), row_basis.upper());
    const Eigen::MatrixXd phi_row = row_basis.evaluate(rule.nodes);
    const Eigen::MatrixXd phi_col = col_basis.evaluate(rule.nodes);
    return phi_row.transpose() * rule.weights.asDiagonal() * phi_col;
}

// ---------------------------------------------------------------------------
// Coefficient fitting
// ---------------------------------------------------------------------------

Eigen::MatrixXd fit_coefficients(const Eigen::VectorXd& grid, const Eigen::MatrixXd& values,
                                 const BasisSystem& basis, double lambda, int penalty_order) {
    if (grid.size() < 1) throw std::invalid_argument("fit_coefficients: empty grid");
    if (values.cols() != grid.size())
        throw std::invalid_argument("fit_coefficients: value columns must match grid length");
    if (lambda < 0.0) throw std::invalid_argument("fit_coefficients: negative lambda");
    if (lambda == 0.0 && grid.size() < basis.size())
        throw std::invalid_argument(
            "fit_coefficients: underdetermined system (grid smaller than basis, lambda = 0)");

    const Eigen::MatrixXd phi = basis.evaluate(grid);
    Eigen::MatrixXd normal = phi.transpose() * phi;
    if (lambda > 0.0) normal.noalias() += lambda * basis.penalty(penalty_order);
    const Eigen::MatrixXd rhs = phi.transpose() * values.transpose();
    return spd_solve(normal, rhs, "fit_coefficients normal equations").transpose();
}

Eigen::VectorXd fit_coefficients(const Eigen::VectorXd& grid, const Eigen::VectorXd& values,
                                 const BasisSystem& basis, double lambda, int penalty_order) {
    Eigen::MatrixXd row = values.transpose();
    return fit_coefficients(grid, row, basis, lambda, penalty_order).row(0);
}

}  // namespace funcboost
