#include "funcboost/learners.hpp"

#include "funcboost/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace funcboost {

WeakLearnerSpec WeakLearnerSpec::penalized(double lambda, int penalty_order) {
    if (lambda < 0.0) throw std::invalid_argument("penalized learner: negative lambda");
    WeakLearnerSpec spec;
    spec.kind = Kind::PenalizedLS;
    spec.lambda = lambda;
    spec.penalty_order = penalty_order;
    return spec;
}

WeakLearnerSpec WeakLearnerSpec::penalized_df(double df_target, int penalty_order) {
    if (df_target <= 0.0) throw std::invalid_argument("penalized learner: df target must be > 0");
    WeakLearnerSpec spec;
    spec.kind = Kind::PenalizedLS;
    spec.df_target = df_target;
    spec.penalty_order = penalty_order;
    return spec;
}

WeakLearnerSpec WeakLearnerSpec::componentwise() {
    WeakLearnerSpec spec;
    spec.kind = Kind::Componentwise;
    return spec;
}

WeakLearnerSpec WeakLearnerSpec::stump(double min_leaf_weight) {
    if (min_leaf_weight < 0.0) throw std::invalid_argument("stump learner: negative leaf weight");
    WeakLearnerSpec spec;
    spec.kind = Kind::Stump;
    spec.min_leaf_weight = min_leaf_weight;
    return spec;
}

std::string to_string(WeakLearnerSpec::Kind kind) {
    switch (kind) {
        case WeakLearnerSpec::Kind::PenalizedLS: return "penalized";
        case WeakLearnerSpec::Kind::Componentwise: return "componentwise";
        case WeakLearnerSpec::Kind::Stump: return "stump";
    }
    throw std::invalid_argument("unknown learner kind");
}

WeakLearnerSpec::Kind learner_kind_from_string(const std::string& name) {
    if (name == "penalized") return WeakLearnerSpec::Kind::PenalizedLS;
    if (name == "componentwise") return WeakLearnerSpec::Kind::Componentwise;
    if (name == "stump") return WeakLearnerSpec::Kind::Stump;
    throw std::invalid_argument("unknown learner kind: " + name);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

Eigen::VectorXd evaluate_base(const FittedBase& base, const Eigen::MatrixXd& score_rows) {
    Eigen::VectorXd out(score_rows.rows());
    for (Eigen::Index i = 0; i < score_rows.rows(); ++i)
        out[i] = evaluate_base(base, score_rows.row(i));
    return out;
}

// ---------------------------------------------------------------------------
// Penalized least squares
// ---------------------------------------------------------------------------

namespace {

void check_weights(const Eigen::VectorXd& weights, Eigen::Index n) {
    if (weights.size() != n) throw std::invalid_argument("learner: weight length mismatch");
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(weights[i] >= 0.0))
            throw std::invalid_argument("learner: weights must be nonnegative");
        total += weights[i];
    }
    if (total <= 0.0) throw std::invalid_argument("learner: all weights are zero");
}

}  // namespace

FittedBase fit_penalized(const Eigen::MatrixXd& Z, const Eigen::VectorXd& targets,
                         const Eigen::VectorXd& weights, double lambda,
                         const Eigen::MatrixXd& penalty) {
    if (Z.rows() != targets.size()) throw std::invalid_argument("fit_penalized: row mismatch");
    check_weights(weights, Z.rows());
    if (lambda < 0.0) throw std::invalid_argument("fit_penalized: negative lambda");
    if (lambda > 0.0 && (penalty.rows() != Z.cols() || penalty.cols() != Z.cols()))
        throw std::invalid_argument("fit_penalized: penalty shape mismatch");

    const Eigen::MatrixXd zw = weights.asDiagonal() * Z;
    Eigen::MatrixXd normal = Z.transpose() * zw;
    if (lambda > 0.0) normal.noalias() += lambda * penalty;
    PenalizedBase base;
    base.coef = spd_solve(normal, zw.transpose() * targets, "fit_penalized normal equations");
    return base;
}

Eigen::MatrixXd hat_matrix(const Eigen::MatrixXd& Z, double lambda,
                           const Eigen::MatrixXd& penalty) {
    Eigen::MatrixXd normal = Z.transpose() * Z;
    if (lambda > 0.0) normal.noalias() += lambda * penalty;
    return Z * spd_solve(normal, Z.transpose(), "hat_matrix normal equations");
}

double smoother_df(const Eigen::MatrixXd& Z, double lambda, const Eigen::MatrixXd& penalty) {
    const Eigen::MatrixXd ztz = Z.transpose() * Z;
    Eigen::MatrixXd normal = ztz;
    if (lambda > 0.0) normal.noalias() += lambda * penalty;
    return spd_solve(normal, ztz, "smoother_df normal equations").trace();
}

double lambda_for_df(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& penalty, double df_target,
                     double tol) {
    if (df_target <= 0.0 || df_target > Z.cols())
        throw std::invalid_argument("lambda_for_df: df target outside (0, K]");

    const double scale = (Z.transpose() * Z).trace() / Z.cols();
    double lo = 1e-10 * scale;
    double hi = scale;
    const double df_lo = smoother_df(Z, lo, penalty);
    if (df_target > df_lo + tol)
        throw std::invalid_argument("lambda_for_df: df target exceeds the design rank");

    while (smoother_df(Z, hi, penalty) > df_target && hi < 1e15 * scale) hi *= 10.0;
    if (smoother_df(Z, hi, penalty) > df_target + tol)
        throw std::invalid_argument(
            "lambda_for_df: df target unreachable (penalty null space too large)");

    for (int iter = 0; iter < 200; ++iter) {
        const double mid = std::sqrt(lo * hi);
        const double df = smoother_df(Z, mid, penalty);
        if (std::abs(df - df_target) <= tol) return mid;
        if (df > df_target)
            lo = mid;
        else
            hi = mid;
    }
    return std::sqrt(lo * hi);
}

// ---------------------------------------------------------------------------
// Componentwise selection
// ---------------------------------------------------------------------------

FittedBase fit_componentwise(const Eigen::MatrixXd& Z, const Eigen::VectorXd& targets,
                             const Eigen::VectorXd& weights) {
    if (Z.rows() != targets.size())
        throw std::invalid_argument("fit_componentwise: row mismatch");
    check_weights(weights, Z.rows());
    if (Z.cols() < 1) throw std::invalid_argument("fit_componentwise: no columns");

    const Eigen::VectorXd w = weights / weights.sum();
    const double base_risk = w.dot(targets.cwiseProduct(targets));

    ComponentwiseBase best;
    double best_risk = std::numeric_limits<double>::infinity();
    bool any_column = false;
    for (int j = 0; j < Z.cols(); ++j) {
        const Eigen::VectorXd& col = Z.col(j);
        const double sxx = w.dot(col.cwiseProduct(col));
        double slope = 0.0;
        double risk = base_risk;
        if (sxx > 0.0) {
            any_column = true;
            const double sxy = w.dot(col.cwiseProduct(targets));
            slope = sxy / sxx;
            risk = base_risk - slope * sxy;
        }
        if (risk < best_risk) {
            best_risk = risk;
            best.index = j;
            best.slope = slope;
        }
    }
    if (!any_column)
        throw std::invalid_argument("fit_componentwise: every column is identically zero");
    return best;
}

// ---------------------------------------------------------------------------
// Stumps
// ---------------------------------------------------------------------------

FittedBase fit_stump(const Eigen::MatrixXd& Z, const Eigen::VectorXd& targets,
                     const Eigen::VectorXd& weights, StumpMode mode, double min_leaf_weight) {
    const Eigen::Index n = Z.rows();
    if (n < 2) throw std::invalid_argument("fit_stump: need at least two rows");
    if (targets.size() != n) throw std::invalid_argument("fit_stump: row mismatch");
    check_weights(weights, n);
    if (mode == StumpMode::Classification)
        for (Eigen::Index i = 0; i < n; ++i)
            if (targets[i] != 1.0 && targets[i] != -1.0)
                throw std::invalid_argument("fit_stump: classification targets must be -1 or +1");

    const Eigen::VectorXd w = weights / weights.sum();

    // Totals for leaf fallbacks and the no-split case.
    const double total_wu = w.dot(targets);
    const double total_wu2 = w.dot(targets.cwiseProduct(targets));
    const double mean_value = total_wu;  // weights sum to one
    const double majority = total_wu >= 0.0 ? 1.0 : -1.0;
    const double fallback = mode == StumpMode::Regression ? mean_value : majority;

    StumpBase best;
    best.single_leaf = true;
    best.left = fallback;
    best.right = fallback;
    double best_score = std::numeric_limits<double>::infinity();
    bool found_split = false;

    std::vector<int> order(n);
    for (int j = 0; j < Z.cols(); ++j) {
        std::iota(order.begin(), order.end(), 0);
        const Eigen::VectorXd& col = Z.col(j);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return col[a] < col[b]; });

        double wl = 0.0, wul = 0.0, wu2l = 0.0;  // left accumulators
        double wposl = 0.0, wnegl = 0.0;
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            const int idx = order[i];
            wl += w[idx];
            wul += w[idx] * targets[idx];
            wu2l += w[idx] * targets[idx] * targets[idx];
            if (mode == StumpMode::Classification) {
                if (targets[idx] > 0)
                    wposl += w[idx];
                else
                    wnegl += w[idx];
            }
            const double lo = col[order[i]];
            const double hi = col[order[i + 1]];
            if (!(hi > lo)) continue;  // duplicate value, no admissible threshold

            const double wr = 1.0 - wl;
            if (wl < min_leaf_weight || wr < min_leaf_weight) continue;

            double score;
            if (mode == StumpMode::Regression) {
                const double sse_left = wl > 0.0 ? wu2l - wul * wul / wl : 0.0;
                const double wur = total_wu - wul;
                const double wu2r = total_wu2 - wu2l;
                const double sse_right = wr > 0.0 ? wu2r - wur * wur / wr : 0.0;
                score = sse_left + sse_right;
            } else {
                // weights sum to one, so wpos + wneg = 1 and wpos - wneg = total_wu
                const double pos_r = ((1.0 + total_wu) * 0.5) - wposl;
                const double neg_r = ((1.0 - total_wu) * 0.5) - wnegl;
                const double err_left = wposl >= wnegl ? wnegl : wposl;
                const double err_right = pos_r >= neg_r ? neg_r : pos_r;
                score = err_left + err_right;
            }

            if (score < best_score) {
                best_score = score;
                found_split = true;
                best.single_leaf = false;
                best.feature = j;
                best.threshold = 0.5 * (lo + hi);
                if (mode == StumpMode::Regression) {
                    const double wr2 = 1.0 - wl;
                    best.left = wl > 0.0 ? wul / wl : fallback;
                    best.right = wr2 > 0.0 ? (total_wu - wul) / wr2 : fallback;
                } else {
                    const double pos_r2 = ((1.0 + total_wu) * 0.5) - wposl;
                    const double neg_r2 = ((1.0 - total_wu) * 0.5) - wnegl;
                    best.left = wposl >= wnegl ? 1.0 : -1.0;
                    best.right = pos_r2 >= neg_r2 ? 1.0 : -1.0;
                }
            }
        }
    }

    if (!found_split) {
        // Every admissible column is constant; answer the weighted mean or
        // majority from a single leaf.
        return best;
    }
    return best;
}

}  // namespace funcboost
