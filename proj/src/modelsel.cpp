#include "funcboost/modelsel.hpp"

#include "funcboost/learners.hpp"
#include "funcboost/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace funcboost {

std::vector<int> FoldAssignment::fold_rows(int fold) const {
    std::vector<int> rows;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] == fold) rows.push_back(static_cast<int>(i));
    return rows;
}

std::vector<int> FoldAssignment::complement_rows(int fold) const {
    std::vector<int> rows;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] != fold) rows.push_back(static_cast<int>(i));
    return rows;
}

namespace {

// Fisher-Yates with explicit index draws, so the partition does not depend on
// the standard library's shuffle or distribution internals.
void seeded_shuffle(std::vector<int>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace

FoldAssignment kfold(Eigen::Index n, int K, std::uint64_t seed,
                     const std::optional<Eigen::VectorXd>& labels) {
    if (K < 2 || K > n) throw std::invalid_argument("kfold: need 2 <= K <= n");
    if (labels && labels->size() != n)
        throw std::invalid_argument("kfold: label length mismatch");

    FoldAssignment folds;
    folds.K = K;
    folds.seed = seed;
    folds.stratified = labels.has_value();
    folds.assignment.assign(static_cast<std::size_t>(n), 0);

    std::mt19937_64 rng(seed);
    if (!labels) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        seeded_shuffle(perm, rng);
        for (std::size_t i = 0; i < perm.size(); ++i)
            folds.assignment[static_cast<std::size_t>(perm[i])] = static_cast<int>(i) % K;
        return folds;
    }

    // Group by class value (sorted for determinism), shuffle within each
    // class and deal the classes out in turn with one continuing cursor, so
    // both the overall fold sizes and every class stay balanced within one.
    std::map<double, std::vector<int>> classes;
    for (Eigen::Index i = 0; i < n; ++i)
        classes[(*labels)[i]].push_back(static_cast<int>(i));
    int cursor = 0;
    for (auto& [value, members] : classes) {
        seeded_shuffle(members, rng);
        for (int idx : members) folds.assignment[static_cast<std::size_t>(idx)] = cursor++ % K;
    }
    return folds;
}

std::string to_string(SelectionMetric metric) {
    switch (metric) {
        case SelectionMetric::CvError: return "cv_error";
        case SelectionMetric::Df: return "df";
        case SelectionMetric::Aic: return "aic";
        case SelectionMetric::Bic: return "bic";
    }
    throw std::invalid_argument("unknown selection metric");
}

SelectionCurve make_selection_curve(SelectionMetric metric, const Eigen::VectorXd& values) {
    if (values.size() < 1) throw std::invalid_argument("selection curve: empty value list");
    SelectionCurve curve;
    curve.metric = metric;
    curve.values = values;
    curve.best_m = 1;
    curve.best_value = values[0];
    for (Eigen::Index m = 1; m < values.size(); ++m)
        if (values[m] < curve.best_value) {  // strict: first minimum wins ties
            curve.best_value = values[m];
            curve.best_m = static_cast<int>(m) + 1;
        }
    return curve;
}

// ---------------------------------------------------------------------------
// Cross-validation
// ---------------------------------------------------------------------------

namespace {

int thread_cap(int folds) {
    int cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
    if (const char* env = std::getenv("FUNCBOOST_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && parsed >= 1)
            cap = static_cast<int>(std::min<long>(parsed, 1024));
    }
    return std::min(cap, folds);
}

Eigen::VectorXd fold_errors(const FunctionalDataSet& data, const BoostConfig& config,
                            const FoldAssignment& folds, int fold, int M_max) {
    BoostConfig fold_config = config;
    fold_config.iterations = M_max;
    // Decorrelate any resampling streams across folds while staying
    // reproducible from the run seed.
    fold_config.seed = config.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(fold + 1);

    const FunctionalDataSet train = subset(data, folds.complement_rows(fold));
    const std::vector<int> test_rows = folds.fold_rows(fold);
    const BoostedModel model = fit_boosted(train, fold_config);

    Eigen::MatrixXd test_coef(test_rows.size(), data.coef.cols());
    Eigen::VectorXd test_y(test_rows.size());
    for (std::size_t i = 0; i < test_rows.size(); ++i) {
        test_coef.row(static_cast<Eigen::Index>(i)) = data.coef.row(test_rows[i]);
        test_y[static_cast<Eigen::Index>(i)] = data.y[test_rows[i]];
    }

    const Eigen::MatrixXd path = score_path(model, test_coef);
    const int trained = static_cast<int>(path.cols());  // may stop short of M_max

    Eigen::VectorXd errors(M_max);
    const double inv_n = 1.0 / static_cast<double>(test_y.size());
    for (int m = 0; m < M_max; ++m) {
        const Eigen::VectorXd scores = path.col(std::min(m, trained - 1));
        double err = 0.0;
        if (data.response == ResponseKind::Label) {
            for (Eigen::Index i = 0; i < test_y.size(); ++i)
                if (sign_pm(scores[i]) != test_y[i]) err += 1.0;
        } else {
            for (Eigen::Index i = 0; i < test_y.size(); ++i) {
                const double r = test_y[i] - scores[i];
                err += r * r;
            }
        }
        errors[m] = err * inv_n;
    }
    return errors;
}

}  // namespace

SelectionCurve cross_validate(const FunctionalDataSet& data, const BoostConfig& config,
                              const FoldAssignment& folds, int M_max) {
    if (M_max < 1) throw std::invalid_argument("cross_validate: need M_max >= 1");
    if (folds.n() != data.n()) throw std::invalid_argument("cross_validate: fold size mismatch");
    if (data.response != ResponseKind::Label && data.response != ResponseKind::Scalar)
        throw std::invalid_argument("cross_validate: dataset has no response");

    const int K = folds.K;
    Eigen::MatrixXd per_fold(M_max, K);
    std::vector<std::string> failures(static_cast<std::size_t>(K));
    std::atomic<int> next{0};

    auto worker = [&]() {
        for (int fold = next.fetch_add(1); fold < K; fold = next.fetch_add(1)) {
            try {
                per_fold.col(fold) = fold_errors(data, config, folds, fold, M_max);
            } catch (const std::exception& e) {
                failures[static_cast<std::size_t>(fold)] =
                    "cross_validate: fold " + std::to_string(fold) + " failed: " + e.what();
            }
        }
    };

    const int threads = thread_cap(K);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    for (const std::string& failure : failures)
        if (!failure.empty()) throw std::runtime_error(failure);

    return make_selection_curve(SelectionMetric::CvError,
                                per_fold.rowwise().mean());
}

// ---------------------------------------------------------------------------
// Degrees of freedom and information criteria
// ---------------------------------------------------------------------------

Eigen::VectorXd l2boost_df_curve(const Eigen::MatrixXd& S, int M, double nu) {
    if (S.rows() != S.cols()) throw std::invalid_argument("l2boost_df: smoother not square");
    if (M < 1) throw std::invalid_argument("l2boost_df: need m >= 1");
    if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("l2boost_df: nu outside (0, 1]");

    const Eigen::Index n = S.rows();
    Eigen::VectorXd df(M);
    const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
    if (asym <= 1e-10 * std::max(1.0, S.cwiseAbs().maxCoeff())) {
        // Symmetric smoother: df_m = sum_i 1 - (1 - nu s_i)^m over eigenvalues.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S);
        if (eig.info() != Eigen::Success)
            throw std::runtime_error("l2boost_df: eigendecomposition failed");
        const Eigen::VectorXd& s = eig.eigenvalues();
        for (int m = 1; m <= M; ++m) {
            double total = 0.0;
            for (Eigen::Index i = 0; i < n; ++i)
                total += 1.0 - std::pow(1.0 - nu * s[i], m);
            df[m - 1] = total;
        }
        return df;
    }
    // General linear smoother: accumulate powers of I - nu S directly.
    const Eigen::MatrixXd step = Eigen::MatrixXd::Identity(n, n) - nu * S;
    Eigen::MatrixXd power = step;
    for (int m = 1; m <= M; ++m) {
        df[m - 1] = static_cast<double>(n) - power.trace();
        if (m < M) power *= step;
    }
    return df;
}

double l2boost_df(const Eigen::MatrixXd& S, int m, double nu) {
    return l2boost_df_curve(S, m, nu)[m - 1];
}

Eigen::MatrixXd l2boost_smoother(const FunctionalDataSet& data, const BoostedModel& model) {
    if (model.learner.kind != WeakLearnerSpec::Kind::PenalizedLS)
        throw std::invalid_argument(
            "l2boost_smoother: only the penalized learner is a fixed linear smoother");
    const Eigen::MatrixXd Z = data.coef * model.score_map;
    const Eigen::MatrixXd R = model.beta_basis.penalty(model.learner.penalty_order);
    return hat_matrix(Z, model.resolved_lambda, R);
}

Eigen::VectorXd training_rss_curve(const BoostedModel& model, const FunctionalDataSet& data) {
    if (data.response != ResponseKind::Scalar)
        throw std::invalid_argument("training_rss_curve: dataset has no scalar response");
    const Eigen::MatrixXd path = score_path(model, data.coef);
    Eigen::VectorXd rss(path.cols());
    for (Eigen::Index m = 0; m < path.cols(); ++m)
        rss[m] = (data.y - path.col(m)).squaredNorm();
    return rss;
}

namespace {

SelectionCurve information_curve(SelectionMetric metric, const Eigen::VectorXd& df,
                                 const Eigen::VectorXd& rss, Eigen::Index n,
                                 double complexity_weight) {
    if (df.size() != rss.size())
        throw std::invalid_argument("information criterion: df/RSS length mismatch");
    if (n < 1) throw std::invalid_argument("information criterion: empty sample");
    Eigen::VectorXd values(df.size());
    for (Eigen::Index m = 0; m < df.size(); ++m) {
        const double mean_rss = std::max(rss[m], 1e-300) / static_cast<double>(n);
        values[m] = static_cast<double>(n) * std::log(mean_rss) + complexity_weight * df[m];
    }
    return make_selection_curve(metric, values);
}

}  // namespace

SelectionCurve aic_curve(const Eigen::VectorXd& df, const Eigen::VectorXd& rss,
                         Eigen::Index n) {
    return information_curve(SelectionMetric::Aic, df, rss, n, 2.0);
}

SelectionCurve bic_curve(const Eigen::VectorXd& df, const Eigen::VectorXd& rss,
                         Eigen::Index n) {
    return information_curve(SelectionMetric::Bic, df, rss, n,
                             std::log(static_cast<double>(n)));
}

}  // namespace funcboost
