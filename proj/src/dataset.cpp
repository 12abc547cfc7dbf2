#include "funcboost/dataset.hpp"

#include <stdexcept>
#include <utility>

namespace funcboost {

namespace {

void check_shape(const BasisSystem& basis, const Eigen::MatrixXd& coef) {
    if (coef.rows() < 1) throw std::invalid_argument("dataset: need at least one curve");
    if (coef.cols() != basis.size())
        throw std::invalid_argument("dataset: coefficient columns must match basis size");
    if (!coef.allFinite()) throw std::invalid_argument("dataset: non-finite coefficients");
}

}  // namespace

FunctionalDataSet FunctionalDataSet::unlabeled(BasisSystem basis, Eigen::MatrixXd coef) {
    check_shape(basis, coef);
    FunctionalDataSet data;
    data.basis = std::move(basis);
    data.coef = std::move(coef);
    return data;
}

FunctionalDataSet FunctionalDataSet::with_scalar(BasisSystem basis, Eigen::MatrixXd coef,
                                                 Eigen::VectorXd y) {
    check_shape(basis, coef);
    if (y.size() != coef.rows())
        throw std::invalid_argument("dataset: response length must match curve count");
    if (!y.allFinite()) throw std::invalid_argument("dataset: non-finite response");
    FunctionalDataSet data;
    data.basis = std::move(basis);
    data.coef = std::move(coef);
    data.response = ResponseKind::Scalar;
    data.y = std::move(y);
    return data;
}

FunctionalDataSet FunctionalDataSet::with_labels(BasisSystem basis, Eigen::MatrixXd coef,
                                                 Eigen::VectorXd labels) {
    check_shape(basis, coef);
    if (labels.size() != coef.rows())
        throw std::invalid_argument("dataset: label length must match curve count");
    for (Eigen::Index i = 0; i < labels.size(); ++i)
        if (labels[i] != 1.0 && labels[i] != -1.0)
            throw std::invalid_argument("dataset: labels must be -1 or +1");
    FunctionalDataSet data;
    data.basis = std::move(basis);
    data.coef = std::move(coef);
    data.response = ResponseKind::Label;
    data.y = std::move(labels);
    return data;
}

FunctionalDataSet FunctionalDataSet::with_functional(BasisSystem basis, Eigen::MatrixXd coef,
                                                     BasisSystem response_basis,
                                                     Eigen::MatrixXd response_coef) {
    check_shape(basis, coef);
    check_shape(response_basis, response_coef);
    if (response_coef.rows() != coef.rows())
        throw std::invalid_argument("dataset: response curve count must match predictor count");
    FunctionalDataSet data;
    data.basis = std::move(basis);
    data.coef = std::move(coef);
    data.response = ResponseKind::Functional;
    data.response_basis = std::move(response_basis);
    data.response_coef = std::move(response_coef);
    return data;
}

FunctionalDataSet center(const FunctionalDataSet& data) {
    FunctionalDataSet out = data;

    CenterInfo info;
    if (data.centering) info = *data.centering;
    if (info.coef_mean.size() == 0) info.coef_mean = Eigen::VectorXd::Zero(data.coef.cols());

    const Eigen::RowVectorXd coef_mean = data.coef.colwise().mean();
    out.coef.rowwise() -= coef_mean;
    info.coef_mean += coef_mean.transpose();

    if (data.response == ResponseKind::Scalar) {
        const double y_mean = data.y.mean();
        out.y.array() -= y_mean;
        info.response_mean += y_mean;
    } else if (data.response == ResponseKind::Functional) {
        if (info.response_coef_mean.size() == 0)
            info.response_coef_mean = Eigen::VectorXd::Zero(data.response_coef.cols());
        const Eigen::RowVectorXd resp_mean = data.response_coef.colwise().mean();
        out.response_coef.rowwise() -= resp_mean;
        info.response_coef_mean += resp_mean.transpose();
    }

    out.centering = std::move(info);
    return out;
}

FunctionalDataSet subset(const FunctionalDataSet& data, const std::vector<int>& rows) {
    if (rows.empty()) throw std::invalid_argument("subset: empty row selection");
    const int n = data.n();
    for (int r : rows)
        if (r < 0 || r >= n) throw std::invalid_argument("subset: row index out of range");

    FunctionalDataSet out;
    out.basis = data.basis;
    out.response = data.response;
    out.response_basis = data.response_basis;

    const int m = static_cast<int>(rows.size());
    out.coef.resize(m, data.coef.cols());
    for (int i = 0; i < m; ++i) out.coef.row(i) = data.coef.row(rows[i]);

    if (data.response == ResponseKind::Scalar || data.response == ResponseKind::Label) {
        out.y.resize(m);
        for (int i = 0; i < m; ++i) out.y[i] = data.y[rows[i]];
    } else if (data.response == ResponseKind::Functional) {
        out.response_coef.resize(m, data.response_coef.cols());
        for (int i = 0; i < m; ++i) out.response_coef.row(i) = data.response_coef.row(rows[i]);
    }
    return out;
}

}  // namespace funcboost
