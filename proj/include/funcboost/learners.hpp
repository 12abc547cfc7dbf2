#pragma once

// Weak learners over the projection-score representation of functional data.
// Every learner consumes the score matrix Z (one row per curve, one column
// per coefficient-basis function) plus targets and nonnegative weights, and
// yields a FittedBase evaluable on new score rows.

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <variant>

namespace funcboost {

struct WeakLearnerSpec {
    enum class Kind { PenalizedLS, Componentwise, Stump };

    Kind kind = Kind::Stump;
    double lambda = 1.0;              // penalized-ls; 0 is the degenerate projection learner
    int penalty_order = 2;            // penalized-ls roughness order
    std::optional<double> df_target;  // penalized-ls: resolve lambda to hit this df
    double min_leaf_weight = 0.0;     // stump: smallest admissible leaf weight fraction

    static WeakLearnerSpec penalized(double lambda, int penalty_order = 2);
    static WeakLearnerSpec penalized_df(double df_target, int penalty_order = 2);
    static WeakLearnerSpec componentwise();
    static WeakLearnerSpec stump(double min_leaf_weight = 0.0);
};

std::string to_string(WeakLearnerSpec::Kind kind);
WeakLearnerSpec::Kind learner_kind_from_string(const std::string& name);

/// Linear fit in score space: g(z) = z . coef.
struct PenalizedBase {
    Eigen::VectorXd coef;
};

/// Single-component fit: g(z) = slope * z[index].
struct ComponentwiseBase {
    int index = 0;
    double slope = 0.0;
};

/// One-split tree on a score column: g(z) = z[feature] <= threshold ? left : right.
/// A single-leaf stump (all columns constant) always answers `left`.
struct StumpBase {
    int feature = 0;
    double threshold = 0.0;
    double left = 0.0;
    double right = 0.0;
    bool single_leaf = false;
};

using FittedBase = std::variant<PenalizedBase, ComponentwiseBase, StumpBase>;

/// Evaluate a fitted base on one score row (any vector-shaped expression).
template <typename Derived>
double evaluate_base(const FittedBase& base, const Eigen::MatrixBase<Derived>& scores) {
    return std::visit(
        [&](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, PenalizedBase>) {
                return scores.dot(b.coef);
            } else if constexpr (std::is_same_v<T, ComponentwiseBase>) {
                return b.slope * scores(b.index);
            } else {
                if (b.single_leaf) return b.left;
                return scores(b.feature) <= b.threshold ? b.left : b.right;
            }
        },
        base);
}

Eigen::VectorXd evaluate_base(const FittedBase& base, const Eigen::MatrixXd& score_rows);

/// Weighted penalized least squares b = (Z'WZ + lambda R)^-1 Z'W u.
FittedBase fit_penalized(const Eigen::MatrixXd& Z, const Eigen::VectorXd& targets,
                         const Eigen::VectorXd& weights, double lambda,
                         const Eigen::MatrixXd& penalty);

/// Picks the single column whose 1-d weighted least-squares fit minimizes the
/// weighted squared risk; ties break toward the smallest column index.
FittedBase fit_componentwise(const Eigen::MatrixXd& Z, const Eigen::VectorXd& targets,
                             const Eigen::VectorXd& weights);

enum class StumpMode { Regression, Classification };

/// Exhaustive one-split search over every column and every midpoint between
/// consecutive distinct values.  Regression leaves hold weighted means and
/// minimize weighted squared error; classification leaves hold weighted
/// majority labels and minimize weighted misclassification.  Ties break
/// toward the smaller column, then the smaller threshold.
FittedBase fit_stump(const Eigen::MatrixXd& Z, const Eigen::VectorXd& targets,
                     const Eigen::VectorXd& weights, StumpMode mode = StumpMode::Regression,
                     double min_leaf_weight = 0.0);

/// Smoother matrix S = Z (Z'Z + lambda R)^-1 Z' of the penalized learner on
/// the unweighted design.
Eigen::MatrixXd hat_matrix(const Eigen::MatrixXd& Z, double lambda,
                           const Eigen::MatrixXd& penalty);

/// trace(S) without forming the n x n smoother.
double smoother_df(const Eigen::MatrixXd& Z, double lambda, const Eigen::MatrixXd& penalty);

/// Bisects lambda so that the smoother degrees of freedom hit `df_target`
/// within `tol`.
double lambda_for_df(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& penalty, double df_target,
                     double tol = 0.01);

}  // namespace funcboost
