#include "funcboost/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace funcboost {

Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                          const char* context) {
    if (A.rows() != A.cols() || A.rows() != B.rows())
        throw std::invalid_argument(std::string(context) + ": dimension mismatch");
    if (!A.allFinite() || !B.allFinite())
        throw std::invalid_argument(std::string(context) + ": non-finite input");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error(std::string(context) + ": eigendecomposition failed");

    const Eigen::VectorXd& ev = eig.eigenvalues();
    const double ev_max = ev.maxCoeff();
    const double ev_min = ev.minCoeff();
    if (ev_max <= 0.0 || ev_min <= 0.0 || ev_max / ev_min > 1e12) {
        std::ostringstream msg;
        msg << context << ": matrix is singular or ill-conditioned"
            << " (eigenvalue range [" << ev_min << ", " << ev_max << "])";
        throw std::runtime_error(msg.str());
    }

    const Eigen::MatrixXd& v = eig.eigenvectors();
    Eigen::MatrixXd scaled = v.transpose() * B;
    scaled.array().colwise() /= ev.array();
    return v * scaled;
}

}  // namespace funcboost
