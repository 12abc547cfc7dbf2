#pragma once

// Boosting engines over functional weak learners.  All three engines share
// the forward-stagewise shape f_M = offset + sum alpha_m g_m applied to the
// projection scores z = c J of a curve; they differ in how targets and
// weights evolve between iterations.
//
//   AdaBoost    reweighting (or resampling) of a classification learner,
//               alpha_m = ln((1 - eps_m)/eps_m)
//   L2Boost     repeated least-squares fitting of residuals, alpha_m = nu
//   LogitBoost  weighted Newton steps on the binomial log-likelihood,
//               alpha_m = 1/2
//
// Truncating the stage list at any m <= M reproduces the model after m
// iterations exactly, which the model-selection module relies on.

#include "funcboost/basis.hpp"
#include "funcboost/dataset.hpp"
#include "funcboost/learners.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace funcboost {

enum class Loss { Quadratic, Logistic };

double loss_value(Loss loss, double y, double f);
double negative_gradient(Loss loss, double y, double f);
Eigen::VectorXd negative_gradient(Loss loss, const Eigen::VectorXd& y,
                                  const Eigen::VectorXd& f);

enum class Engine { AdaBoost, L2Boost, LogitBoost };
enum class AdaBoostMode { Reweight, Resample };

std::string to_string(Engine engine);
Engine engine_from_string(const std::string& name);
std::string to_string(AdaBoostMode mode);
AdaBoostMode adaboost_mode_from_string(const std::string& name);

/// sign with the tie convention sign(0) = +1.
inline double sign_pm(double x) { return x < 0.0 ? -1.0 : 1.0; }

/// alpha_m = ln((1 - eps)/eps); callers cap eps away from {0, 1}.
double alpha_from_error(double eps);

/// Half the log-odds f mapped to a probability, clamped to (0, 1).
double probability_from_score(double score);

struct BoostStage {
    double alpha = 0.0;
    FittedBase base;
};

struct BoostedModel {
    Engine engine = Engine::L2Boost;
    Loss loss = Loss::Quadratic;
    std::vector<BoostStage> stages;
    BasisSystem data_basis;
    BasisSystem beta_basis;
    Eigen::MatrixXd score_map;  // cross-Gram, data basis x beta basis
    double offset = 0.0;        // added to every score (response mean for regression)
    bool sign_stages = false;   // AdaBoost evaluates sign(g_m) instead of g_m

    // Training record, carried for persistence and reporting.
    WeakLearnerSpec learner;
    double resolved_lambda = 0.0;  // lambda actually used after any df targeting
    double shrinkage = 1.0;
    AdaBoostMode mode = AdaBoostMode::Reweight;
    std::uint64_t seed = 1;

    int iterations() const { return static_cast<int>(stages.size()); }
};

struct BoostConfig {
    Engine engine = Engine::LogitBoost;
    WeakLearnerSpec learner = WeakLearnerSpec::stump();
    int iterations = 100;
    double shrinkage = 1.0;  // L2Boost step size nu in (0, 1]
    AdaBoostMode mode = AdaBoostMode::Reweight;
    std::uint64_t seed = 1;  // resampling only
    std::optional<BasisSystem> beta_basis;  // defaults to the data basis
    bool center_response = true;  // L2Boost: move the response mean into offset
};

/// Algorithm: start from the uniform distribution D_1 = 1/n, fit the learner
/// to the weighted (or resampled) labels, weight the vote by
/// ln((1 - eps_m)/eps_m) and reweight so the just-fitted learner scores
/// exactly 1/2 under D_{m+1}.  eps_m >= 1/2 stops before adding the learner;
/// eps_m <= 1e-10 adds it with a capped alpha and stops.
BoostedModel adaboost(const FunctionalDataSet& data, const WeakLearnerSpec& learner, int M,
                      AdaBoostMode mode = AdaBoostMode::Reweight, std::uint64_t seed = 1,
                      const std::optional<BasisSystem>& beta_basis = std::nullopt);

/// Repeated least squares on residuals: u_m = y - f_m, f_{m+1} = f_m + nu g.
BoostedModel l2boost(const FunctionalDataSet& data, const WeakLearnerSpec& learner, int M,
                     double shrinkage = 1.0,
                     const std::optional<BasisSystem>& beta_basis = std::nullopt);

/// Weighted Newton steps: weights p(1-p) floored at 1e-10, working response
/// (y* - p)/w clamped to |u| <= 4, update f += g/2, p = (1 + exp(-2f))^-1.
BoostedModel logitboost(const FunctionalDataSet& data, const WeakLearnerSpec& learner, int M,
                        const std::optional<BasisSystem>& beta_basis = std::nullopt);

/// Engine dispatch plus the shared preamble: basis resolution, df-targeted
/// lambda selection and (for regression) response centering.
BoostedModel fit_boosted(const FunctionalDataSet& data, const BoostConfig& config);

enum class PredictKind { Score, Label, Probability };

std::string to_string(PredictKind kind);
PredictKind predict_kind_from_string(const std::string& name);

/// Evaluate the model truncated after m_opt stages (all stages when absent).
/// Probability output is only defined for logistic-loss models.
double predict_boosted(const BoostedModel& model, const Eigen::RowVectorXd& coef_row,
                       std::optional<int> m_opt = std::nullopt,
                       PredictKind kind = PredictKind::Score);
Eigen::VectorXd predict_boosted(const BoostedModel& model, const Eigen::MatrixXd& coef_rows,
                                std::optional<int> m_opt = std::nullopt,
                                PredictKind kind = PredictKind::Score);

/// n x M matrix whose column m-1 holds the scores truncated after m stages;
/// one pass over the stages serves every truncation point at once.
Eigen::MatrixXd score_path(const BoostedModel& model, const Eigen::MatrixXd& coef_rows);

/// For linear stage payloads (penalized or componentwise, not sign-wrapped)
/// the whole ensemble collapses to a single coefficient vector
/// b = sum alpha_m b_m over the beta basis.
Eigen::VectorXd aggregate_linear_coefficients(const BoostedModel& model);

}  // namespace funcboost
