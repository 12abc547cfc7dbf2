#pragma once

// Functional linear models.  A scalar-on-function model predicts
// beta_0 + integral of beta(t) x(t) dt with beta expanded over its own basis;
// after expansion the fit reduces to (possibly penalized) least squares on
// the score matrix Z = C J.  The function-on-function variant expands the
// coefficient surface beta(s, t) over a tensor product of both bases.

#include "funcboost/basis.hpp"
#include "funcboost/dataset.hpp"

#include <Eigen/Dense>

namespace funcboost {

/// Projection scores Z = C J_cross with J_cross the cross-Gram between the
/// data basis and the coefficient basis.  When the two bases coincide and
/// are orthonormal, Z equals C.
Eigen::MatrixXd design_scores(const FunctionalDataSet& data, const BasisSystem& beta_basis);

struct RidgeFit {
    Eigen::VectorXd coef;
    double intercept = 0.0;
};

/// Penalized least squares b = (Zc' Zc + lambda R)^-1 Zc' yc on internally
/// centered data; the intercept is recovered from the removed means and the
/// penalty never touches it.  lambda = 0 requires a well-conditioned Zc' Zc.
RidgeFit ridge_fit(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, double lambda,
                   const Eigen::MatrixXd& penalty);

struct FunctionalLinearModel {
    double intercept = 0.0;
    Eigen::VectorXd coef;  // b_l for beta(t) = sum b_l psi_l(t)
    BasisSystem beta_basis;
    BasisSystem data_basis;
    Eigen::MatrixXd score_map;  // cross-Gram, data basis x beta basis
    double lambda = 0.0;
    int penalty_order = 2;
};

FunctionalLinearModel fit_flm(const FunctionalDataSet& data, const BasisSystem& beta_basis,
                              double lambda = 0.0, int penalty_order = 2);
FunctionalLinearModel fit_flm(const FunctionalDataSet& data, double lambda = 0.0,
                              int penalty_order = 2);

/// Prediction for one curve given in the data basis used at fit time.
double predict_flm(const FunctionalLinearModel& model, const Eigen::VectorXd& curve_coef);
/// Row-wise prediction for a coefficient matrix.
Eigen::VectorXd predict_flm(const FunctionalLinearModel& model, const Eigen::MatrixXd& coef_rows);

struct FunctionOnFunctionModel {
    Eigen::VectorXd alpha;    // functional intercept in the response basis
    Eigen::MatrixXd surface;  // b_kl, predictor basis x response basis
    BasisSystem predictor_basis;
    BasisSystem response_basis;
    double lambda = 0.0;
    double training_loss = 0.0;  // summed integrated squared error at fit time
};

/// Fits the function-on-function model by minimizing the summed integrated
/// squared loss plus lambda times the squared Frobenius norm of the surface
/// coefficients (the intercept is unpenalized).
FunctionOnFunctionModel fit_fof(const FunctionalDataSet& data, double lambda = 0.0);

/// Coefficients of the predicted response curve in the response basis.
Eigen::VectorXd predict_fof(const FunctionOnFunctionModel& model,
                            const Eigen::VectorXd& curve_coef);

}  // namespace funcboost
