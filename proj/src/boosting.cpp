#include "funcboost/boosting.hpp"

#include "funcboost/flm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace funcboost {

// ---------------------------------------------------------------------------
// Losses
// ---------------------------------------------------------------------------

double loss_value(Loss loss, double y, double f) {
    if (loss == Loss::Quadratic) {
        const double r = y - f;
        return 0.5 * r * r;
    }
    // log(1 + exp(-y f)) without overflow for large |f|
    const double t = -y * f;
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double negative_gradient(Loss loss, double y, double f) {
    if (loss == Loss::Quadratic) return y - f;
    return y / (1.0 + std::exp(y * f));
}

Eigen::VectorXd negative_gradient(Loss loss, const Eigen::VectorXd& y,
                                  const Eigen::VectorXd& f) {
    if (y.size() != f.size()) throw std::invalid_argument("negative_gradient: size mismatch");
    Eigen::VectorXd u(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) u[i] = negative_gradient(loss, y[i], f[i]);
    return u;
}

// ---------------------------------------------------------------------------
// Enum names
// ---------------------------------------------------------------------------

std::string to_string(Engine engine) {
    switch (engine) {
        case Engine::AdaBoost: return "adaboost";
        case Engine::L2Boost: return "l2boost";
        case Engine::LogitBoost: return "logitboost";
    }
    throw std::invalid_argument("unknown engine");
}

Engine engine_from_string(const std::string& name) {
    if (name == "adaboost") return Engine::AdaBoost;
    if (name == "l2boost") return Engine::L2Boost;
    if (name == "logitboost") return Engine::LogitBoost;
    throw std::invalid_argument("unknown engine: " + name);
}

std::string to_string(AdaBoostMode mode) {
    return mode == AdaBoostMode::Reweight ? "reweight" : "resample";
}

AdaBoostMode adaboost_mode_from_string(const std::string& name) {
    if (name == "reweight") return AdaBoostMode::Reweight;
    if (name == "resample") return AdaBoostMode::Resample;
    throw std::invalid_argument("unknown adaboost mode: " + name);
}

std::string to_string(PredictKind kind) {
    switch (kind) {
        case PredictKind::Score: return "score";
        case PredictKind::Label: return "label";
        case PredictKind::Probability: return "prob";
    }
    throw std::invalid_argument("unknown prediction kind");
}

PredictKind predict_kind_from_string(const std::string& name) {
    if (name == "score") return PredictKind::Score;
    if (name == "label") return PredictKind::Label;
    if (name == "prob") return PredictKind::Probability;
    throw std::invalid_argument("unknown prediction kind: " + name);
}

double alpha_from_error(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("alpha_from_error: eps outside (0, 1)");
    return std::log((1.0 - eps) / eps);
}

double probability_from_score(double score) {
    const double p = 1.0 / (1.0 + std::exp(-2.0 * score));
    return std::clamp(p, 1e-12, 1.0 - 1e-12);
}

// ---------------------------------------------------------------------------
// Shared preamble
// ---------------------------------------------------------------------------

namespace {

constexpr double kEpsFloor = 1e-10;

struct Prepared {
    BasisSystem beta;
    Eigen::MatrixXd score_map;
    Eigen::MatrixXd Z;
    Eigen::MatrixXd penalty;  // only filled for the penalized learner
    double lambda = 0.0;
};

Prepared prepare(const FunctionalDataSet& data, const WeakLearnerSpec& learner,
                 const std::optional<BasisSystem>& beta_basis) {
    Prepared prep;
    prep.beta = beta_basis.value_or(data.basis);
    prep.score_map = cross_gram(data.basis, prep.beta);
    prep.Z = data.coef * prep.score_map;
    if (learner.kind == WeakLearnerSpec::Kind::PenalizedLS) {
        prep.penalty = prep.beta.penalty(learner.penalty_order);
        prep.lambda = learner.df_target
                          ? lambda_for_df(prep.Z, prep.penalty, *learner.df_target)
                          : learner.lambda;
    }
    return prep;
}

FittedBase fit_weak(const WeakLearnerSpec& spec, const Prepared& prep, const Eigen::MatrixXd& Z,
                    const Eigen::VectorXd& targets, const Eigen::VectorXd& weights,
                    StumpMode stump_mode) {
    switch (spec.kind) {
        case WeakLearnerSpec::Kind::PenalizedLS:
            return fit_penalized(Z, targets, weights, prep.lambda, prep.penalty);
        case WeakLearnerSpec::Kind::Componentwise:
            return fit_componentwise(Z, targets, weights);
        case WeakLearnerSpec::Kind::Stump:
            return fit_stump(Z, targets, weights, stump_mode, spec.min_leaf_weight);
    }
    throw std::invalid_argument("unknown learner kind");
}

void stamp_record(BoostedModel& model, const FunctionalDataSet& data, const Prepared& prep,
                  const WeakLearnerSpec& learner) {
    model.data_basis = data.basis;
    model.beta_basis = prep.beta;
    model.score_map = prep.score_map;
    model.learner = learner;
    model.resolved_lambda = prep.lambda;
}

void require_iterations(int M) {
    if (M < 1) throw std::invalid_argument("boosting: need at least one iteration");
}

}  // namespace

// ---------------------------------------------------------------------------
// AdaBoost
// ---------------------------------------------------------------------------

BoostedModel adaboost(const FunctionalDataSet& data, const WeakLearnerSpec& learner, int M,
                      AdaBoostMode mode, std::uint64_t seed,
                      const std::optional<BasisSystem>& beta_basis) {
    require_iterations(M);
    if (data.response != ResponseKind::Label)
        throw std::invalid_argument("adaboost: dataset has no -1/+1 labels");
    const Prepared prep = prepare(data, learner, beta_basis);
    const Eigen::Index n = prep.Z.rows();
    const Eigen::VectorXd& y = data.y;

    BoostedModel model;
    model.engine = Engine::AdaBoost;
    model.loss = Loss::Logistic;  // closest housed loss; probabilities stay disabled
    model.sign_stages = true;
    model.mode = mode;
    model.seed = seed;
    stamp_record(model, data, prep, learner);

    std::mt19937_64 rng(seed);
    // 53-bit uniform in [0, 1); kept explicit so resampling is reproducible
    // independent of the standard library's distribution internals.
    auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    Eigen::VectorXd D = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);

    for (int m = 0; m < M; ++m) {
        FittedBase base;
        if (mode == AdaBoostMode::Reweight) {
            base = fit_weak(learner, prep, prep.Z, y, D, StumpMode::Classification);
        } else {
            // Draw n indices i.i.d. from D by inverting the cumulative sums,
            // then fit the learner unweighted on the resampled rows.
            Eigen::VectorXd cum(n);
            double acc = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                acc += D[i];
                cum[i] = acc;
            }
            cum[n - 1] = 1.0;
            Eigen::MatrixXd zs(n, prep.Z.cols());
            Eigen::VectorXd ys(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                const double r = unit();
                const Eigen::Index pick =
                    std::upper_bound(cum.data(), cum.data() + n, r) - cum.data();
                zs.row(i) = prep.Z.row(std::min(pick, n - 1));
                ys[i] = y[std::min(pick, n - 1)];
            }
            base = fit_weak(learner, prep, zs, ys, ones, StumpMode::Classification);
        }

        Eigen::VectorXd pred(n);
        for (Eigen::Index i = 0; i < n; ++i)
            pred[i] = sign_pm(evaluate_base(base, prep.Z.row(i)));
        double eps = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (pred[i] != y[i]) eps += D[i];

        if (eps >= 0.5) break;  // no better than chance: stop without this learner
        if (eps <= kEpsFloor) {
            model.stages.push_back({alpha_from_error(kEpsFloor), std::move(base)});
            break;
        }

        const double alpha = alpha_from_error(eps);
        model.stages.push_back({alpha, base});

        // Half-exponent reweighting: correctly classified points shrink by
        // exp(-alpha/2), mistakes grow by exp(alpha/2); after renormalizing,
        // the learner just fitted scores exactly 1/2.
        for (Eigen::Index i = 0; i < n; ++i)
            D[i] *= std::exp(-0.5 * alpha * y[i] * pred[i]);
        D /= D.sum();
    }

    if (model.stages.empty())
        throw std::runtime_error("adaboost: first weak learner is no better than chance");
    return model;
}

// ---------------------------------------------------------------------------
// L2Boost
// ---------------------------------------------------------------------------

BoostedModel l2boost(const FunctionalDataSet& data, const WeakLearnerSpec& learner, int M,
                     double shrinkage, const std::optional<BasisSystem>& beta_basis) {
    require_iterations(M);
    if (data.response != ResponseKind::Scalar)
        throw std::invalid_argument("l2boost: dataset has no scalar response");
    if (!(shrinkage > 0.0 && shrinkage <= 1.0))
        throw std::invalid_argument("l2boost: shrinkage outside (0, 1]");
    const Prepared prep = prepare(data, learner, beta_basis);
    const Eigen::Index n = prep.Z.rows();

    BoostedModel model;
    model.engine = Engine::L2Boost;
    model.loss = Loss::Quadratic;
    model.shrinkage = shrinkage;
    stamp_record(model, data, prep, learner);

    const Eigen::VectorXd weights = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
    for (int m = 0; m < M; ++m) {
        const Eigen::VectorXd u = data.y - f;
        FittedBase base = fit_weak(learner, prep, prep.Z, u, weights, StumpMode::Regression);
        f += shrinkage * evaluate_base(base, prep.Z);
        model.stages.push_back({shrinkage, std::move(base)});
    }
    return model;
}

// ---------------------------------------------------------------------------
// LogitBoost
// ---------------------------------------------------------------------------

BoostedModel logitboost(const FunctionalDataSet& data, const WeakLearnerSpec& learner, int M,
                        const std::optional<BasisSystem>& beta_basis) {
    require_iterations(M);
    if (data.response != ResponseKind::Label)
        throw std::invalid_argument("logitboost: dataset has no -1/+1 labels");
    const Prepared prep = prepare(data, learner, beta_basis);
    const Eigen::Index n = prep.Z.rows();

    BoostedModel model;
    model.engine = Engine::LogitBoost;
    model.loss = Loss::Logistic;
    stamp_record(model, data, prep, learner);

    // Labels move to {0,1} so y - p is the usual binomial residual.
    Eigen::VectorXd ystar(n);
    for (Eigen::Index i = 0; i < n; ++i) ystar[i] = 0.5 * (data.y[i] + 1.0);

    Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd p = Eigen::VectorXd::Constant(n, 0.5);
    Eigen::VectorXd w(n), u(n);
    for (int m = 0; m < M; ++m) {
        for (Eigen::Index i = 0; i < n; ++i) {
            w[i] = std::max(p[i] * (1.0 - p[i]), 1e-10);
            u[i] = std::clamp((ystar[i] - p[i]) / w[i], -4.0, 4.0);
        }
        FittedBase base = fit_weak(learner, prep, prep.Z, u, w, StumpMode::Regression);
        f += 0.5 * evaluate_base(base, prep.Z);
        for (Eigen::Index i = 0; i < n; ++i) p[i] = 1.0 / (1.0 + std::exp(-2.0 * f[i]));
        model.stages.push_back({0.5, std::move(base)});
    }
    return model;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

BoostedModel fit_boosted(const FunctionalDataSet& data, const BoostConfig& config) {
    switch (config.engine) {
        case Engine::AdaBoost: {
            BoostedModel model = adaboost(data, config.learner, config.iterations, config.mode,
                                          config.seed, config.beta_basis);
            return model;
        }
        case Engine::LogitBoost:
            return logitboost(data, config.learner, config.iterations, config.beta_basis);
        case Engine::L2Boost: {
            if (config.center_response) {
                if (data.response != ResponseKind::Scalar)
                    throw std::invalid_argument("l2boost: dataset has no scalar response");
                FunctionalDataSet shifted = data;
                const double mean = shifted.y.mean();
                shifted.y.array() -= mean;
                BoostedModel model = l2boost(shifted, config.learner, config.iterations,
                                             config.shrinkage, config.beta_basis);
                model.offset = mean;
                return model;
            }
            return l2boost(data, config.learner, config.iterations, config.shrinkage,
                           config.beta_basis);
        }
    }
    throw std::invalid_argument("unknown engine");
}

// ---------------------------------------------------------------------------
// Prediction
// ---------------------------------------------------------------------------

namespace {

int resolve_truncation(const BoostedModel& model, std::optional<int> m_opt) {
    const int M = model.iterations();
    if (M < 1) throw std::invalid_argument("predict: model has no stages");
    const int m = m_opt.value_or(M);
    if (m < 1 || m > M) throw std::invalid_argument("predict: truncation point outside 1..M");
    return m;
}

double stage_value(const BoostedModel& model, const BoostStage& stage,
                   const Eigen::RowVectorXd& z) {
    const double g = evaluate_base(stage.base, z);
    return stage.alpha * (model.sign_stages ? sign_pm(g) : g);
}

double finalize(const BoostedModel& model, double score, PredictKind kind) {
    switch (kind) {
        case PredictKind::Score: return score;
        case PredictKind::Label: return sign_pm(score);
        case PredictKind::Probability:
            if (model.loss != Loss::Logistic || model.engine == Engine::AdaBoost)
                throw std::invalid_argument("predict: probabilities need a logistic-loss model");
            return probability_from_score(score);
    }
    throw std::invalid_argument("unknown prediction kind");
}

}  // namespace

double predict_boosted(const BoostedModel& model, const Eigen::RowVectorXd& coef_row,
                       std::optional<int> m_opt, PredictKind kind) {
    const int m = resolve_truncation(model, m_opt);
    const Eigen::RowVectorXd z = coef_row * model.score_map;
    double score = model.offset;
    for (int k = 0; k < m; ++k) score += stage_value(model, model.stages[k], z);
    return finalize(model, score, kind);
}

Eigen::VectorXd predict_boosted(const BoostedModel& model, const Eigen::MatrixXd& coef_rows,
                                std::optional<int> m_opt, PredictKind kind) {
    const int m = resolve_truncation(model, m_opt);
    const Eigen::MatrixXd Z = coef_rows * model.score_map;
    Eigen::VectorXd out(coef_rows.rows());
    for (Eigen::Index i = 0; i < coef_rows.rows(); ++i) {
        double score = model.offset;
        for (int k = 0; k < m; ++k) score += stage_value(model, model.stages[k], Z.row(i));
        out[i] = finalize(model, score, kind);
    }
    return out;
}

Eigen::MatrixXd score_path(const BoostedModel& model, const Eigen::MatrixXd& coef_rows) {
    const int M = model.iterations();
    const Eigen::MatrixXd Z = coef_rows * model.score_map;
    Eigen::MatrixXd path(coef_rows.rows(), M);
    Eigen::VectorXd cum = Eigen::VectorXd::Constant(coef_rows.rows(), model.offset);
    for (int m = 0; m < M; ++m) {
        for (Eigen::Index i = 0; i < Z.rows(); ++i)
            cum[i] += stage_value(model, model.stages[m], Z.row(i));
        path.col(m) = cum;
    }
    return path;
}

Eigen::VectorXd aggregate_linear_coefficients(const BoostedModel& model) {
    if (model.sign_stages)
        throw std::invalid_argument(
            "aggregate_linear_coefficients: sign-wrapped stages are not linear");
    Eigen::VectorXd total = Eigen::VectorXd::Zero(model.beta_basis.size());
    for (const BoostStage& stage : model.stages) {
        if (const auto* pls = std::get_if<PenalizedBase>(&stage.base)) {
            total += stage.alpha * pls->coef;
        } else if (const auto* cw = std::get_if<ComponentwiseBase>(&stage.base)) {
            total[cw->index] += stage.alpha * cw->slope;
        } else {
            throw std::invalid_argument(
                "aggregate_linear_coefficients: stump stages are not linear");
        }
    }
    return total;
}

}  // namespace funcboost
