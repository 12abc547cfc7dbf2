#pragma once

// Choosing the number of boosting iterations.  Cross-validation exploits the
// forward-stagewise structure: each fold trains once to M_max and every
// truncation point is scored from the same pass.  For L2Boost with a fixed
// linear smoother S the effective degrees of freedom trace(I - (I - nu S)^m)
// feed AIC/BIC curves as a cheaper alternative to CV.

#include "funcboost/boosting.hpp"
#include "funcboost/dataset.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace funcboost {

struct FoldAssignment {
    int K = 0;
    std::vector<int> assignment;  // fold index in 0..K-1 per observation
    std::uint64_t seed = 0;
    bool stratified = false;

    Eigen::Index n() const { return static_cast<Eigen::Index>(assignment.size()); }
    std::vector<int> fold_rows(int fold) const;
    std::vector<int> complement_rows(int fold) const;
};

/// Seeded shuffle followed by round-robin assignment, so fold sizes differ by
/// at most one.  With labels the round-robin cursor runs through the classes
/// in turn, which also balances every class across folds to within one.
FoldAssignment kfold(Eigen::Index n, int K, std::uint64_t seed,
                     const std::optional<Eigen::VectorXd>& labels = std::nullopt);

enum class SelectionMetric { CvError, Df, Aic, Bic };

std::string to_string(SelectionMetric metric);

struct SelectionCurve {
    SelectionMetric metric = SelectionMetric::CvError;
    Eigen::VectorXd values;  // indexed by m - 1, m = 1..M
    int best_m = 1;          // smallest m attaining the minimum
    double best_value = 0.0;
};

/// Wrap a value sequence, locating the first minimum.
SelectionCurve make_selection_curve(SelectionMetric metric, const Eigen::VectorXd& values);

/// Per-m error averaged over folds: misclassification rate for labeled data,
/// mean squared error for scalar responses.  Folds train concurrently, capped
/// by the FUNCBOOST_THREADS environment variable.
SelectionCurve cross_validate(const FunctionalDataSet& data, const BoostConfig& config,
                              const FoldAssignment& folds, int M_max);

/// df_m = trace(I - (I - nu S)^m) for the boosting operator built from a
/// fixed linear smoother S.
double l2boost_df(const Eigen::MatrixXd& S, int m, double nu = 1.0);
Eigen::VectorXd l2boost_df_curve(const Eigen::MatrixXd& S, int M, double nu = 1.0);

/// The smoother S = Z (Z'Z + lambda R)^-1 Z' that an L2Boost model with the
/// penalized learner applied at every iteration, reconstructed from the
/// model's training record on the given (training) dataset.
Eigen::MatrixXd l2boost_smoother(const FunctionalDataSet& data, const BoostedModel& model);

/// Residual sum of squares of the truncated model at each m on a dataset
/// with scalar response.
Eigen::VectorXd training_rss_curve(const BoostedModel& model, const FunctionalDataSet& data);

/// AIC_m = n log(RSS_m / n) + 2 df_m and the BIC analogue with log(n) df_m.
SelectionCurve aic_curve(const Eigen::VectorXd& df, const Eigen::VectorXd& rss, Eigen::Index n);
SelectionCurve bic_curve(const Eigen::VectorXd& df, const Eigen::VectorXd& rss, Eigen::Index n);

}  // namespace funcboost
