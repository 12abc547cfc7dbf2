#include "funcboost/flm.hpp"

#include "funcboost/linalg.hpp"

#include <stdexcept>

namespace funcboost {

Eigen::MatrixXd design_scores(const FunctionalDataSet& data, const BasisSystem& beta_basis) {
    return data.coef * cross_gram(data.basis, beta_basis);
}

RidgeFit ridge_fit(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, double lambda,
                   const Eigen::MatrixXd& penalty) {
    if (Z.rows() != y.size()) throw std::invalid_argument("ridge_fit: row count mismatch");
    if (lambda < 0.0) throw std::invalid_argument("ridge_fit: negative lambda");
    if (!Z.allFinite() || !y.allFinite())
        throw std::invalid_argument("ridge_fit: non-finite input");
    if (lambda > 0.0 && (penalty.rows() != Z.cols() || penalty.cols() != Z.cols()))
        throw std::invalid_argument("ridge_fit: penalty shape mismatch");

    const Eigen::RowVectorXd z_mean = Z.colwise().mean();
    const double y_mean = y.mean();
    const Eigen::MatrixXd zc = Z.rowwise() - z_mean;
    const Eigen::VectorXd yc = y.array() - y_mean;

    Eigen::MatrixXd normal = zc.transpose() * zc;
    if (lambda > 0.0) normal.noalias() += lambda * penalty;

    RidgeFit fit;
    fit.coef = spd_solve(normal, zc.transpose() * yc, "ridge_fit normal equations");
    fit.intercept = y_mean - z_mean.dot(fit.coef);
    return fit;
}

FunctionalLinearModel fit_flm(const FunctionalDataSet& data, const BasisSystem& beta_basis,
                              double lambda, int penalty_order) {
    if (data.response != ResponseKind::Scalar && data.response != ResponseKind::Label)
        throw std::invalid_argument("fit_flm: dataset has no scalar or label response");

    FunctionalLinearModel model;
    model.beta_basis = beta_basis;
    model.data_basis = data.basis;
    model.score_map = cross_gram(data.basis, beta_basis);
    model.lambda = lambda;
    model.penalty_order = penalty_order;

    const Eigen::MatrixXd scores = data.coef * model.score_map;
    const Eigen::MatrixXd penalty =
        lambda > 0.0 ? beta_basis.penalty(penalty_order) : Eigen::MatrixXd();
    const RidgeFit fit = ridge_fit(scores, data.y, lambda, penalty);
    model.coef = fit.coef;
    model.intercept = fit.intercept;
    return model;
}

FunctionalLinearModel fit_flm(const FunctionalDataSet& data, double lambda, int penalty_order) {
    return fit_flm(data, data.basis, lambda, penalty_order);
}

Eigen::VectorXd predict_flm(const FunctionalLinearModel& model,
                            const Eigen::MatrixXd& coef_rows) {
    if (coef_rows.cols() != model.data_basis.size())
        throw std::invalid_argument("predict_flm: curve not in the training basis");
    return ((coef_rows * model.score_map) * model.coef).array() + model.intercept;
}

double predict_flm(const FunctionalLinearModel& model, const Eigen::VectorXd& curve_coef) {
    return predict_flm(model, Eigen::MatrixXd(curve_coef.transpose()))[0];
}

FunctionOnFunctionModel fit_fof(const FunctionalDataSet& data, double lambda) {
    if (data.response != ResponseKind::Functional)
        throw std::invalid_argument("fit_fof: dataset has no functional response");
    if (lambda < 0.0) throw std::invalid_argument("fit_fof: negative lambda");

    const BasisSystem& xbasis = data.basis;
    const BasisSystem& ybasis = *data.response_basis;
    const int k1 = xbasis.size();
    const int k2 = ybasis.size();
    const int n = data.n();

    // Predicted response coefficients are alpha + B' z with z the predictor
    // scores; the integrated loss weighs coefficient errors by the response
    // Gram.  Diagonalizing the Gram separates the problem into independent
    // ridge fits per transformed response column.
    const Eigen::MatrixXd scores = data.coef * xbasis.gram();
    const Eigen::MatrixXd gram_y = ybasis.gram();

    const Eigen::RowVectorXd z_mean = scores.colwise().mean();
    const Eigen::RowVectorXd d_mean = data.response_coef.colwise().mean();
    const Eigen::MatrixXd zc = scores.rowwise() - z_mean;
    const Eigen::MatrixXd dc = data.response_coef.rowwise() - d_mean;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_y);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("fit_fof: response Gram eigendecomposition failed");
    const Eigen::VectorXd& gram_ev = eig.eigenvalues();
    const Eigen::MatrixXd& q = eig.eigenvectors();

    const Eigen::MatrixXd ztz = zc.transpose() * zc;
    const Eigen::MatrixXd rhs = zc.transpose() * (dc * q);  // k1 x k2
    const double ev_floor = 1e-14 * gram_ev.maxCoeff();

    Eigen::MatrixXd surface_t = Eigen::MatrixXd::Zero(k1, k2);  // B Q
    for (int l = 0; l < k2; ++l) {
        const double g = gram_ev[l];
        if (g <= ev_floor) continue;  // direction carries no integrated loss
        Eigen::MatrixXd normal = g * ztz;
        if (lambda > 0.0) normal.diagonal().array() += lambda;
        surface_t.col(l) = spd_solve(normal, g * rhs.col(l), "fit_fof normal equations");
    }

    FunctionOnFunctionModel model;
    model.predictor_basis = xbasis;
    model.response_basis = ybasis;
    model.lambda = lambda;
    model.surface = surface_t * q.transpose();
    model.alpha = d_mean.transpose() - model.surface.transpose() * z_mean.transpose();

    const Eigen::MatrixXd resid = dc - zc * model.surface;
    model.training_loss = (resid * gram_y).cwiseProduct(resid).sum();
    return model;
}

Eigen::VectorXd predict_fof(const FunctionOnFunctionModel& model,
                            const Eigen::VectorXd& curve_coef) {
    if (curve_coef.size() != model.predictor_basis.size())
        throw std::invalid_argument("predict_fof: curve not in the training basis");
    const Eigen::VectorXd scores = model.predictor_basis.gram() * curve_coef;
    return model.alpha + model.surface.transpose() * scores;
}

}  // namespace funcboost
