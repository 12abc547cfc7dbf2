// Acceptance gate for the library: eight end-to-end criteria, one line of
// output each ([PASS]/[FAIL]/[SKIP]), exit 0 only if nothing failed.  Every
// tolerance is pinned here as a literal.

#include "funcboost/basis.hpp"
#include "funcboost/boosting.hpp"
#include "funcboost/csv.hpp"
#include "funcboost/learners.hpp"
#include "funcboost/modelsel.hpp"
#include "oracles.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace funcboost;

namespace {

struct Result {
    enum class State { Pass, Fail, Skip };
    State state = State::Fail;
    std::string detail;
};

Result pass(const std::string& detail) { return {Result::State::Pass, detail}; }
Result fail(const std::string& detail) { return {Result::State::Fail, detail}; }
Result skip(const std::string& detail) { return {Result::State::Skip, detail}; }

std::string num(double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.3g", x);
    return buffer;
}

Eigen::MatrixXd random_matrix(std::mt19937& rng, int rows, int cols) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd out(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out(i, j) = gauss(rng);
    return out;
}

Eigen::VectorXd random_vector(std::mt19937& rng, int n) {
    return random_matrix(rng, n, 1);
}

Eigen::VectorXd random_weights(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> unif(0.05, 1.05);
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w[i] = unif(rng);
    return w;
}

FunctionalDataSet label_data(int n, int K, unsigned seed, int flips) {
    std::mt19937 rng(seed);
    Eigen::MatrixXd coef = random_matrix(rng, n, K);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y[i] = coef(i, 0) >= 0.0 ? 1.0 : -1.0;
    for (int i = 0; i < flips; ++i) y[i * (n / flips)] *= -1.0;
    return FunctionalDataSet::with_labels(BasisSystem::fourier(K, 0.0, 1.0), std::move(coef),
                                          std::move(y));
}

// ---------------------------------------------------------------------------
// 1. Basis layer
// ---------------------------------------------------------------------------

Result criterion1() {
    double worst = 0.0;
    for (int K : {1, 2, 3, 10, 51, 101}) {
        const Eigen::MatrixXd J = BasisSystem::fourier(K, 0.0, 1.0).gram();
        const double dev = (J - Eigen::MatrixXd::Identity(K, K)).cwiseAbs().maxCoeff();
        worst = std::max(worst, dev);
        if (dev > 1e-10)
            return fail("Fourier Gram K=" + std::to_string(K) + " off identity by " + num(dev));
    }

    // Independent orthonormality witness: dense Simpson quadrature of the
    // evaluated functions themselves, not the library's Gram routine.
    {
        const int cells = 4096;
        const BasisSystem basis = BasisSystem::fourier(101, 0.0, 1.0);
        const Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(cells + 1, 0.0, 1.0);
        Eigen::VectorXd w(cells + 1);
        const double h = 1.0 / cells;
        for (int i = 0; i <= cells; ++i)
            w[i] = (i == 0 || i == cells) ? h / 3.0 : (i % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
        const Eigen::MatrixXd phi = basis.evaluate(grid);
        const Eigen::MatrixXd numeric = phi.transpose() * w.asDiagonal() * phi;
        const double dev =
            (numeric - Eigen::MatrixXd::Identity(101, 101)).cwiseAbs().maxCoeff();
        worst = std::max(worst, dev);
        if (dev > 1e-8) return fail("numeric orthonormality check off by " + num(dev));
    }

    for (const BasisSystem& basis :
         {BasisSystem::fourier(7, 0.0, 1.0), BasisSystem::polynomial(5, 0.0, 1.0),
          BasisSystem::bspline_uniform(9, 3, 0.0, 1.0)}) {
        for (const Eigen::MatrixXd& A : {basis.gram(), basis.penalty(2)}) {
            const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
            if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
                return fail("asymmetric Gram/penalty matrix");
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
            if (eig.eigenvalues().minCoeff() < -1e-8 * scale)
                return fail("indefinite Gram/penalty matrix, min eigenvalue " +
                            num(eig.eigenvalues().minCoeff()));
        }
    }

    struct QuadratureCase {
        BasisSystem basis;
        int derivative;
        int intervals;
    };
    // 4000 intervals align Simpson cells with the uniform B-spline knots.
    const QuadratureCase cases[] = {{BasisSystem::fourier(5, 0.0, 1.0), 0, 4096},
                                    {BasisSystem::fourier(4, 0.0, 1.0), 2, 4096},
                                    {BasisSystem::polynomial(4, 0.0, 1.0), 0, 4096},
                                    {BasisSystem::polynomial(4, 0.0, 1.0), 2, 4096},
                                    {BasisSystem::bspline_uniform(8, 3, 0.0, 1.0), 0, 4000},
                                    {BasisSystem::bspline_uniform(8, 3, 0.0, 1.0), 2, 4000}};
    for (const QuadratureCase& c : cases) {
        const Eigen::MatrixXd A = c.derivative == 0 ? c.basis.gram() : c.basis.penalty(c.derivative);
        const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
        for (int i = 0; i < c.basis.size(); ++i)
            for (int j = i; j < c.basis.size(); ++j) {
                const double dev = std::abs(
                    A(i, j) -
                    oracle::product_integral(c.basis, i, c.basis, j, c.derivative, c.intervals));
                worst = std::max(worst, dev / scale);
                if (dev > 1e-8 * scale)
                    return fail("quadrature oracle disagrees by " + num(dev) + " (scale " +
                                num(scale) + ")");
            }
    }
    return pass("max deviation " + num(worst));
}

// ---------------------------------------------------------------------------
// 2. Boosting identities
// ---------------------------------------------------------------------------

Result criterion2() {
    std::mt19937 rng(202);

    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::VectorXd y = random_vector(rng, 10);
        const Eigen::VectorXd f = random_vector(rng, 10);
        if (negative_gradient(Loss::Quadratic, y, f) != y - f)
            return fail("quadratic negative gradient is not exactly the residual");
    }

    for (double y : {-1.0, 1.0})
        for (double f : {-2.5, -0.3, 0.0, 0.8, 3.1}) {
            const double fd = oracle::central_difference(
                [&](double s) { return loss_value(Loss::Logistic, y, s); }, f, 1e-6);
            if (std::abs(negative_gradient(Loss::Logistic, y, f) + fd) >
                1e-6 * std::max(1.0, std::abs(fd)))
                return fail("logistic gradient misses the finite difference at f=" + num(f));
        }

    // Reweighting balance: rebuild the weight path from the stored stages and
    // confirm each just-fitted learner scores exactly 1/2 afterwards.
    for (unsigned seed : {31u, 32u, 33u}) {
        const FunctionalDataSet data = label_data(24, 3, seed, 5);
        const BoostedModel model = adaboost(data, WeakLearnerSpec::stump(), 8);
        const Eigen::Index n = data.n();
        Eigen::VectorXd D = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
        for (const BoostStage& stage : model.stages) {
            Eigen::VectorXd pred(n);
            for (Eigen::Index i = 0; i < n; ++i)
                pred[i] = sign_pm(evaluate_base(stage.base, data.coef.row(i)));
            for (Eigen::Index i = 0; i < n; ++i)
                D[i] *= std::exp(-0.5 * stage.alpha * data.y[i] * pred[i]);
            D /= D.sum();
            if (std::abs(D.sum() - 1.0) > 1e-12)
                return fail("weight distribution drifted from total 1");
            double err = 0.0;
            for (Eigen::Index i = 0; i < n; ++i)
                if (pred[i] != data.y[i]) err += D[i];
            if (std::abs(err - 0.5) > 1e-10)
                return fail("post-update weighted error " + num(err) + " is not 1/2");
        }
    }

    {
        const FunctionalDataSet data = label_data(30, 3, 41, 6);
        const BoostedModel model = logitboost(data, WeakLearnerSpec::stump(), 40);
        const Eigen::VectorXd p =
            predict_boosted(model, data.coef, std::nullopt, PredictKind::Probability);
        if (!(p.minCoeff() > 0.0 && p.maxCoeff() < 1.0))
            return fail("probability left the open unit interval");
    }

    for (int trial = 0; trial < 200; ++trial) {
        const int n = 6 + static_cast<int>(rng() % 10);
        const int K = 2 + static_cast<int>(rng() % 3);
        FunctionalDataSet data = FunctionalDataSet::with_scalar(
            BasisSystem::fourier(K, 0.0, 1.0), random_matrix(rng, n, K),
            random_vector(rng, n));
        const WeakLearnerSpec learner =
            trial % 2 == 0 ? WeakLearnerSpec::componentwise() : WeakLearnerSpec::stump();
        const double nu = trial % 3 == 0 ? 0.4 : 1.0;
        const BoostedModel model = l2boost(data, learner, 8, nu);
        const Eigen::MatrixXd path = score_path(model, data.coef);
        double last = data.y.squaredNorm();
        for (int m = 0; m < path.cols(); ++m) {
            const double rss = (data.y - path.col(m)).squaredNorm();
            if (rss > last + 1e-10)
                return fail("training RSS rose at instance " + std::to_string(trial));
            last = rss;
        }
    }
    return pass("gradients, reweighting, probabilities and RSS all in order");
}

// ---------------------------------------------------------------------------
// 3. Projection-learner degeneracy
// ---------------------------------------------------------------------------

Result criterion3() {
    std::mt19937 rng(303);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 15 + static_cast<int>(rng() % 10);
        const int K = 3 + static_cast<int>(rng() % 3);
        FunctionalDataSet data = FunctionalDataSet::with_scalar(
            BasisSystem::fourier(K, 0.0, 1.0), random_matrix(rng, n, K),
            random_vector(rng, n));
        const BoostedModel model = l2boost(data, WeakLearnerSpec::penalized(0.0), 50, 1.0);
        const Eigen::MatrixXd path = score_path(model, data.coef);
        for (int m = 1; m < 50; ++m) {
            const double dev = (path.col(m) - path.col(0)).cwiseAbs().maxCoeff();
            worst = std::max(worst, dev);
            if (dev > 1e-10)
                return fail("stage " + std::to_string(m + 1) + " moved the fit by " + num(dev));
        }
    }
    return pass("max drift past the first stage " + num(worst));
}

// ---------------------------------------------------------------------------
// 4. Oracle equivalence
// ---------------------------------------------------------------------------

Result criterion4() {
    std::mt19937 rng(404);

    for (int trial = 0; trial < 200; ++trial) {
        const int n = 5 + static_cast<int>(rng() % 16);  // n <= 20
        const int K = 2 + static_cast<int>(rng() % 7);   // K <= 8
        const Eigen::MatrixXd Z = random_matrix(rng, n, K);
        const Eigen::VectorXd u = random_vector(rng, n);
        const Eigen::VectorXd w = random_weights(rng, n);
        const auto fit = std::get<ComponentwiseBase>(fit_componentwise(Z, u, w));
        const oracle::ComponentwisePick ref = oracle::componentwise_enumeration(Z, u, w);
        if (fit.index != ref.index || std::abs(fit.slope - ref.slope) > 1e-10)
            return fail("componentwise pick differs from enumeration");
    }

    for (int trial = 0; trial < 200; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 12);  // n <= 15
        const int K = 1 + static_cast<int>(rng() % 3);
        const Eigen::MatrixXd Z = random_matrix(rng, n, K);
        const Eigen::VectorXd w = random_weights(rng, n);
        const bool classify = trial % 2 == 1;
        Eigen::VectorXd u = random_vector(rng, n);
        if (classify)
            for (int i = 0; i < n; ++i) u[i] = u[i] >= 0.0 ? 1.0 : -1.0;
        const auto fit = std::get<StumpBase>(fit_stump(
            Z, u, w, classify ? StumpMode::Classification : StumpMode::Regression));
        const oracle::StumpPick ref = oracle::stump_bruteforce(Z, u, w, classify);
        // exact risk ties between splits are broken by summation order, so the
        // binding requirement is matching the brute-force optimum risk
        const double achieved = oracle::stump_partition_risk(
            Z, u, w, classify, fit.feature, fit.threshold, fit.single_leaf);
        if (std::abs(achieved - ref.risk) > 1e-9 * std::max(1.0, ref.risk))
            return fail("stump risk differs from brute-force optimum");
    }

    for (int trial = 0; trial < 30; ++trial) {
        const int n = 8 + static_cast<int>(rng() % 8);
        const int K = 3 + static_cast<int>(rng() % 3);
        const Eigen::MatrixXd Z = random_matrix(rng, n, K);
        const Eigen::VectorXd u = random_vector(rng, n);
        const Eigen::VectorXd w = random_weights(rng, n);
        Eigen::MatrixXd R = random_matrix(rng, K, K);
        R = (R * R.transpose()).eval();
        const double lambda = 0.5 + 2.0 * static_cast<double>(trial % 4);
        const Eigen::VectorXd b =
            std::get<PenalizedBase>(fit_penalized(Z, u, w, lambda, R)).coef;
        const Eigen::VectorXd ref = oracle::penalized_by_qr(Z, u, w, lambda, R);
        if ((b - ref).cwiseAbs().maxCoeff() > 1e-6)
            return fail("penalized LS differs from the QR route");
        const double at_fit = oracle::penalized_objective(Z, u, w, lambda, R, b);
        for (int probe = 0; probe < 10; ++probe) {
            const Eigen::VectorXd shifted = b + 1e-3 * random_vector(rng, K);
            if (oracle::penalized_objective(Z, u, w, lambda, R, shifted) < at_fit - 1e-12)
                return fail("penalized LS objective is not minimal at the fit");
        }
    }

    for (int trial = 0; trial < 20; ++trial) {
        const int n = 8 + static_cast<int>(rng() % 10);
        const int K = 2 + static_cast<int>(rng() % 4);
        FunctionalDataSet data = FunctionalDataSet::with_scalar(
            BasisSystem::fourier(K, 0.0, 1.0), random_matrix(rng, n, K),
            random_vector(rng, n));
        const double nu = trial % 2 == 0 ? 1.0 : 0.25;
        const BoostedModel model = l2boost(data, WeakLearnerSpec::componentwise(), 20, nu);
        const Eigen::MatrixXd path = score_path(model, data.coef);
        const Eigen::MatrixXd ref =
            oracle::l2boost_componentwise_reference(data.coef, data.y, 20, nu);
        if ((path - ref).cwiseAbs().maxCoeff() > 1e-10)
            return fail("sequential reimplementation disagrees with the stage path");
    }
    return pass("all four learner/path oracles agree");
}

// ---------------------------------------------------------------------------
// 5. Synthetic end-to-end regression
// ---------------------------------------------------------------------------

struct Regression {
    FunctionalDataSet data;
    Eigen::VectorXd beta;
};

Regression synthetic_regression() {
    const int n = 200, K = 41;
    std::mt19937 rng(7001);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd coef = random_matrix(rng, n, K);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(K);
    beta[2] = 1.5;
    beta[5] = -2.0;
    beta[8] = 1.0;
    Eigen::VectorXd y = coef * beta;
    for (int i = 0; i < n; ++i) y[i] += 0.5 * gauss(rng);
    return {FunctionalDataSet::with_scalar(BasisSystem::fourier(K, 0.0, 1.0), std::move(coef),
                                           std::move(y)),
            std::move(beta)};
}

Result criterion5() {
    const Regression reg = synthetic_regression();
    const int M = 250;

    BoostConfig config;
    config.engine = Engine::L2Boost;
    config.learner = WeakLearnerSpec::componentwise();
    config.shrinkage = 0.1;
    const SelectionCurve curve =
        cross_validate(reg.data, config, kfold(reg.data.n(), 5, 1), M);

    config.iterations = M;
    BoostedModel model = fit_boosted(reg.data, config);
    model.stages.resize(static_cast<std::size_t>(curve.best_m));
    const Eigen::VectorXd bhat = aggregate_linear_coefficients(model);
    // orthonormal basis: integrated squared error is the coefficient distance
    const double ise_boost = (bhat - reg.beta).squaredNorm();

    const Eigen::MatrixXd& Z = reg.data.coef;
    const Eigen::VectorXd centered = reg.data.y.array() - reg.data.y.mean();
    const Eigen::VectorXd ols =
        (Z.transpose() * Z).ldlt().solve(Z.transpose() * centered);
    const double ise_proj = (ols - reg.beta).squaredNorm();

    const double ratio = ise_boost / ise_proj;
    const std::string detail = "cv chose m=" + std::to_string(curve.best_m) + ", error ratio " +
                               num(ratio) + " (boost " + num(ise_boost) + " vs projection " +
                               num(ise_proj) + ", threshold 0.5)";
    return ratio <= 0.5 ? pass(detail) : fail(detail);
}

// ---------------------------------------------------------------------------
// 6. Synthetic end-to-end classification
// ---------------------------------------------------------------------------

Result criterion6() {
    const int n = 100, G = 128, K = 21, M = 150;
    const double sigma = 1.0;
    std::mt19937 rng(7002);
    std::normal_distribution<double> gauss;

    const Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(G, 0.0, 1.0);
    Eigen::VectorXd y(n);
    Eigen::MatrixXd values(n, G);
    for (int i = 0; i < n; ++i) {
        y[i] = i % 2 == 0 ? 1.0 : -1.0;
        for (int g = 0; g < G; ++g) {
            // class mean curves +-sigma * sqrt(2) sin(2 pi t): separation 2 sigma
            const double mean = y[i] * sigma * std::sqrt(2.0) * std::sin(2.0 * M_PI * grid[g]);
            values(i, g) = mean + sigma * gauss(rng);
        }
    }
    const BasisSystem basis = BasisSystem::fourier(K, 0.0, 1.0);
    const FunctionalDataSet data = FunctionalDataSet::with_labels(
        basis, fit_coefficients(grid, values, basis), std::move(y));

    BoostConfig config;
    config.engine = Engine::LogitBoost;
    config.learner = WeakLearnerSpec::stump();
    const SelectionCurve curve =
        cross_validate(data, config, kfold(n, 10, 2, data.y), M);

    if (curve.best_value > 0.15)
        return fail("cv minimum " + num(curve.best_value) + " exceeds 0.15");
    if (curve.best_m + 50 > M)
        return fail("minimum at m=" + std::to_string(curve.best_m) +
                    " leaves no 50-iteration window");
    double flat_dev = 0.0;
    for (int m = curve.best_m; m <= curve.best_m + 50; ++m)
        flat_dev = std::max(flat_dev, curve.values[m - 1] - curve.best_value);
    if (flat_dev > 0.03)
        return fail("curve rises by " + num(flat_dev) + " within 50 iterations of the minimum");
    return pass("cv minimum " + num(curve.best_value) + " at m=" + std::to_string(curve.best_m) +
                ", post-minimum rise " + num(flat_dev));
}

// ---------------------------------------------------------------------------
// 7. Speech data reproduction (conditional)
// ---------------------------------------------------------------------------

Result criterion7() {
    std::vector<std::string> candidates;
    if (const char* env = std::getenv("FUNCBOOST_SPEECH_CSV"); env && *env)
        candidates.push_back(env);
    candidates.push_back("data/speech.csv");
    candidates.push_back("../data/speech.csv");
    std::string path;
    for (const std::string& candidate : candidates)
        if (std::filesystem::exists(candidate)) {
            path = candidate;
            break;
        }
    if (path.empty())
        return skip("speech dataset not found (set FUNCBOOST_SPEECH_CSV to enable)");

    const CurveTable table = load_curves(path);
    if (table.response != ResponseKind::Label)
        return fail("'" + path + "' has no label column");
    const BasisSystem basis =
        BasisSystem::fourier(100, table.grid[0], table.grid[table.grid.size() - 1]);
    const FunctionalDataSet data = FunctionalDataSet::with_labels(
        basis, fit_coefficients(table.grid, table.values, basis), table.y);

    BoostConfig config;
    config.engine = Engine::LogitBoost;
    config.learner = WeakLearnerSpec::stump();
    const int M = 80;
    Eigen::VectorXd averaged = Eigen::VectorXd::Zero(M);
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        config.seed = seed;
        averaged += cross_validate(data, config, kfold(data.n(), 10, seed, data.y), M).values;
    }
    averaged /= 3.0;
    const SelectionCurve curve = make_selection_curve(SelectionMetric::CvError, averaged);

    const bool level_ok = curve.best_value >= 0.05 && curve.best_value <= 0.15;
    const bool location_ok = curve.best_m >= 10 && curve.best_m <= 60;
    const std::string detail = "averaged cv minimum " + num(curve.best_value) + " at m=" +
                               std::to_string(curve.best_m) +
                               " (need 0.05..0.15 at m in 10..60)";
    return level_ok && location_ok ? pass(detail) : fail(detail);
}

// ---------------------------------------------------------------------------
// 8. Degrees of freedom and information criteria
// ---------------------------------------------------------------------------

Result criterion8() {
    std::mt19937 rng(808);

    {
        const Eigen::MatrixXd Z = random_matrix(rng, 12, 4);
        const Eigen::MatrixXd S = hat_matrix(Z, 0.0, Eigen::MatrixXd::Identity(4, 4));
        const Eigen::VectorXd df = l2boost_df_curve(S, 30, 1.0);
        for (int m = 0; m < 30; ++m)
            if (std::abs(df[m] - 4.0) > 1e-6)
                return fail("projection df " + num(df[m]) + " at m=" + std::to_string(m + 1) +
                            " is not the rank 4");
    }

    {
        const int n = 25;
        const Eigen::MatrixXd A = random_matrix(rng, n, n);
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
        const Eigen::MatrixXd Q = qr.householderQ();
        std::uniform_real_distribution<double> unif(0.05, 0.95);
        Eigen::VectorXd eigs(n);
        for (int i = 0; i < n; ++i) eigs[i] = unif(rng);
        const Eigen::MatrixXd S = Q * eigs.asDiagonal() * Q.transpose();
        const Eigen::VectorXd df = l2boost_df_curve(S, 2000, 1.0);
        // strict growth is only representable until the per-step increments
        // fall below the ulp of n, after which the curve sits exactly at n
        for (int m = 1; m <= 400; ++m)
            if (!(df[m] > df[m - 1])) return fail("df curve is not strictly increasing");
        for (int m = 1; m < 2000; ++m)
            if (!(df[m] >= df[m - 1])) return fail("df curve decreased");
        if (std::abs(df[1999] - n) > 1e-3)
            return fail("df limit " + num(df[1999]) + " misses n=" + std::to_string(n));
    }

    const Regression reg = synthetic_regression();
    // a moderately strong smoother keeps the error curve well peaked, so the
    // two selectors land on the same neighbourhood instead of wandering along
    // a flat valley; 10 folds keeps the cv risk estimate close to in-sample
    const int M = 150;
    BoostConfig config;
    config.engine = Engine::L2Boost;
    config.learner = WeakLearnerSpec::penalized_df(12.0);
    config.shrinkage = 0.2;
    config.iterations = M;
    const BoostedModel model = fit_boosted(reg.data, config);
    const Eigen::MatrixXd S = l2boost_smoother(reg.data, model);
    const Eigen::VectorXd df = l2boost_df_curve(S, M, config.shrinkage);
    const Eigen::VectorXd rss = training_rss_curve(model, reg.data);
    const SelectionCurve aic = aic_curve(df, rss, reg.data.n());
    const SelectionCurve cv =
        cross_validate(reg.data, config, kfold(reg.data.n(), 10, 3), M);

    const int gap = std::abs(aic.best_m - cv.best_m);
    const std::string detail = "aic m=" + std::to_string(aic.best_m) + " vs cv m=" +
                               std::to_string(cv.best_m) + " (gap " + std::to_string(gap) +
                               ", allowed 10)";
    return gap <= 10 ? pass(detail) : fail(detail);
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<Result()> check;
    };
    const std::vector<Criterion> criteria = {
        {1, "basis layer: orthonormality, symmetric PSD forms, quadrature agreement",
         criterion1},
        {2, "boosting identities: gradients, weight balance, probabilities, monotone RSS",
         criterion2},
        {3, "projection learner: later stages change nothing", criterion3},
        {4, "oracle equivalence: componentwise, stump, penalized LS, sequential path",
         criterion4},
        {5, "synthetic regression: boosted coefficient error beats the projection fit",
         criterion5},
        {6, "synthetic classification: low cv error, flat past the minimum", criterion6},
        {7, "speech data: averaged cv minimum level and location", criterion7},
        {8, "degrees of freedom and AIC versus cross-validation", criterion8},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        Result result;
        try {
            result = criterion.check();
        } catch (const std::exception& e) {
            result = fail(std::string("exception: ") + e.what());
        }
        const char* tag = result.state == Result::State::Pass   ? "PASS"
                          : result.state == Result::State::Skip ? "SKIP"
                                                                : "FAIL";
        std::printf("[%s] %d. %s%s%s\n", tag, criterion.id, criterion.title,
                    result.detail.empty() ? "" : " -- ", result.detail.c_str());
        if (result.state == Result::State::Fail) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
