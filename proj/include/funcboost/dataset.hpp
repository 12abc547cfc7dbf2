#pragma once

#include "funcboost/basis.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace funcboost {

enum class ResponseKind { None, Scalar, Label, Functional };

/// Means removed by center(); kept so intercepts can be recovered later.
struct CenterInfo {
    Eigen::VectorXd coef_mean;
    double response_mean = 0.0;
    Eigen::VectorXd response_coef_mean;  // functional responses only
};

/// A sample of n curves over a shared basis: row i of `coef` holds the
/// expansion coefficients of curve i.  Responses are optional and either
/// scalar, two-class labels in {-1, +1}, or curves over their own basis.
struct FunctionalDataSet {
    BasisSystem basis;
    Eigen::MatrixXd coef;  // n x basis.size()
    ResponseKind response = ResponseKind::None;
    Eigen::VectorXd y;  // scalar or label responses
    std::optional<BasisSystem> response_basis;
    Eigen::MatrixXd response_coef;  // n x response_basis.size()
    std::optional<CenterInfo> centering;

    int n() const { return static_cast<int>(coef.rows()); }

    static FunctionalDataSet unlabeled(BasisSystem basis, Eigen::MatrixXd coef);
    static FunctionalDataSet with_scalar(BasisSystem basis, Eigen::MatrixXd coef,
                                         Eigen::VectorXd y);
    static FunctionalDataSet with_labels(BasisSystem basis, Eigen::MatrixXd coef,
                                         Eigen::VectorXd labels);
    static FunctionalDataSet with_functional(BasisSystem basis, Eigen::MatrixXd coef,
                                             BasisSystem response_basis,
                                             Eigen::MatrixXd response_coef);
};

/// Removes column means from the coefficients (and the response mean for
/// scalar or functional responses; labels are left untouched).  The removed
/// means are recorded in `centering`, composing with any earlier centering so
/// the operation is idempotent.
FunctionalDataSet center(const FunctionalDataSet& data);

/// Row subset in the given order; any centering record is dropped.
FunctionalDataSet subset(const FunctionalDataSet& data, const std::vector<int>& rows);

}  // namespace funcboost
