// funcboost: basis expansion, boosted training, prediction and
// cross-validation sweeps over curve tables.
//
// The zero-configuration path mirrors the phoneme-style workflow: Fourier
// expansion of dimension 100, LogitBoost over stumps, 10-fold CV.
//
// Exit codes: 0 success, 1 usage error, 2 data or numerical error.

#include "funcboost/boosting.hpp"
#include "funcboost/csv.hpp"
#include "funcboost/flm.hpp"
#include "funcboost/model_io.hpp"
#include "funcboost/modelsel.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace funcboost;

struct Options {
    std::string input;
    std::string out;
    std::string model_path;
    std::string basis = "fourier";
    int nbasis = 100;
    double lambda = 1.0;
    double expand_lambda = 0.0;
    int penalty_order = 2;
    std::string algo = "logitboost";
    std::string learner = "stump";
    double df_target = 0.0;  // 0 = not requested
    int m = 100;
    int mmax = 200;
    int folds = 10;
    std::uint64_t seed = 1;
    std::string mode = "reweight";
    double shrinkage = 1.0;
    std::string output_kind = "score";
    int truncate = 0;  // predict: 0 = use every stage
};

BasisSystem make_basis(const Options& opt, double a, double b) {
    switch (basis_kind_from_string(opt.basis)) {
        case BasisKind::Fourier: return BasisSystem::fourier(opt.nbasis, a, b);
        case BasisKind::Polynomial: return BasisSystem::polynomial(opt.nbasis, a, b);
        case BasisKind::BSpline: return BasisSystem::bspline_uniform(opt.nbasis, 3, a, b);
    }
    throw std::invalid_argument("unknown basis kind");
}

FunctionalDataSet make_dataset(const CurveTable& table, const BasisSystem& basis,
                               double expand_lambda = 0.0, int penalty_order = 2) {
    Eigen::MatrixXd coef =
        fit_coefficients(table.grid, table.values, basis, expand_lambda, penalty_order);
    switch (table.response) {
        case ResponseKind::Scalar:
            return FunctionalDataSet::with_scalar(basis, std::move(coef), table.y);
        case ResponseKind::Label:
            return FunctionalDataSet::with_labels(basis, std::move(coef), table.y);
        default:
            return FunctionalDataSet::unlabeled(basis, std::move(coef));
    }
}

WeakLearnerSpec make_learner(const Options& opt) {
    switch (learner_kind_from_string(opt.learner)) {
        case WeakLearnerSpec::Kind::Stump: return WeakLearnerSpec::stump();
        case WeakLearnerSpec::Kind::Componentwise: return WeakLearnerSpec::componentwise();
        case WeakLearnerSpec::Kind::PenalizedLS:
            return opt.df_target > 0.0
                       ? WeakLearnerSpec::penalized_df(opt.df_target, opt.penalty_order)
                       : WeakLearnerSpec::penalized(opt.lambda, opt.penalty_order);
    }
    throw std::invalid_argument("unknown learner");
}

BoostConfig make_config(const Options& opt) {
    BoostConfig config;
    config.engine = engine_from_string(opt.algo);
    config.learner = make_learner(opt);
    config.iterations = opt.m;
    config.shrinkage = opt.shrinkage;
    config.mode = adaboost_mode_from_string(opt.mode);
    config.seed = opt.seed;
    return config;
}

void run_expand(const Options& opt) {
    const CurveTable table = load_curves(opt.input);
    const BasisSystem basis =
        make_basis(opt, table.grid[0], table.grid[table.grid.size() - 1]);
    const FunctionalDataSet data =
        make_dataset(table, basis, opt.expand_lambda, opt.penalty_order);

    std::vector<std::string> header;
    for (int j = 1; j <= basis.size(); ++j) header.push_back("c" + std::to_string(j));
    Eigen::MatrixXd rows = data.coef;
    if (table.response != ResponseKind::None) {
        header.push_back(table.response == ResponseKind::Label ? "label" : "y");
        rows.conservativeResize(Eigen::NoChange, rows.cols() + 1);
        rows.col(rows.cols() - 1) = table.y;
    }
    write_csv(opt.out, header, rows);
}

void run_fit(const Options& opt) {
    const CurveTable table = load_curves(opt.input);
    if (table.response == ResponseKind::None)
        throw DataError("fit: '" + opt.input + "' has no label or y column");
    const BasisSystem basis =
        make_basis(opt, table.grid[0], table.grid[table.grid.size() - 1]);
    const BoostedModel model = fit_boosted(make_dataset(table, basis), make_config(opt));
    save_model(model, opt.out);
}

void run_predict(const Options& opt) {
    const BoostedModel model = load_model(opt.model_path);
    const CurveTable table = load_curves(opt.input);
    const Eigen::MatrixXd coef = fit_coefficients(table.grid, table.values, model.data_basis);

    const std::optional<int> m_opt =
        opt.truncate > 0 ? std::optional<int>(opt.truncate) : std::nullopt;
    const PredictKind kind = predict_kind_from_string(opt.output_kind);
    const Eigen::VectorXd values = predict_boosted(model, coef, m_opt, kind);
    write_csv(opt.out, {to_string(kind)}, values);
}

void run_cv(const Options& opt) {
    const CurveTable table = load_curves(opt.input);
    if (table.response == ResponseKind::None)
        throw DataError("cv: '" + opt.input + "' has no label or y column");
    const BasisSystem basis =
        make_basis(opt, table.grid[0], table.grid[table.grid.size() - 1]);
    const FunctionalDataSet data = make_dataset(table, basis);

    const std::optional<Eigen::VectorXd> labels =
        table.response == ResponseKind::Label ? std::optional<Eigen::VectorXd>(data.y)
                                              : std::nullopt;
    const FoldAssignment folds = kfold(data.n(), opt.folds, opt.seed, labels);
    const SelectionCurve curve = cross_validate(data, make_config(opt), folds, opt.mmax);

    Eigen::MatrixXd rows(curve.values.size(), 2);
    for (Eigen::Index i = 0; i < curve.values.size(); ++i) {
        rows(i, 0) = static_cast<double>(i + 1);
        rows(i, 1) = curve.values[i];
    }
    write_csv(opt.out, {"m", "error"}, rows);
    std::cout << "m_opt " << curve.best_m << "\n"
              << "error " << format_double(curve.best_value) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boosting for curves in basis expansion"};
    app.require_subcommand(1);
    Options opt;

    const auto add_io = [&](CLI::App* cmd, bool needs_out) {
        cmd->add_option("--input", opt.input, "curve table (wide CSV)")->required();
        auto* out = cmd->add_option("--out", opt.out, "output path");
        if (needs_out) out->required();
    };
    const auto add_basis = [&](CLI::App* cmd) {
        cmd->add_option("--basis", opt.basis, "basis family")
            ->check(CLI::IsMember({"fourier", "bspline", "poly"}));
        cmd->add_option("--nbasis", opt.nbasis, "basis dimension")->check(CLI::Range(1, 100000));
    };
    const auto add_engine = [&](CLI::App* cmd) {
        cmd->add_option("--algo", opt.algo, "boosting engine")
            ->check(CLI::IsMember({"adaboost", "l2boost", "logitboost"}));
        cmd->add_option("--learner", opt.learner, "weak learner")
            ->check(CLI::IsMember({"stump", "componentwise", "penalized"}));
        cmd->add_option("--lambda", opt.lambda, "ridge penalty of the penalized learner")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--penalty-order", opt.penalty_order, "roughness derivative order")
            ->check(CLI::Range(0, 10));
        cmd->add_option("--df-target", opt.df_target,
                        "choose the penalized learner's lambda to hit this df")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--seed", opt.seed, "random seed");
        cmd->add_option("--mode", opt.mode, "adaboost weighting mode")
            ->check(CLI::IsMember({"reweight", "resample"}));
        cmd->add_option("--shrinkage", opt.shrinkage, "l2boost step size in (0,1]")
            ->check(CLI::Range(1e-6, 1.0));
    };

    CLI::App* expand = app.add_subcommand("expand", "write basis-expansion coefficients");
    add_io(expand, true);
    add_basis(expand);
    expand->add_option("--lambda", opt.expand_lambda, "roughness penalty for the expansion")
        ->check(CLI::NonNegativeNumber);
    expand->add_option("--penalty-order", opt.penalty_order, "roughness derivative order")
        ->check(CLI::Range(0, 10));

    CLI::App* fit = app.add_subcommand("fit", "train a boosted model");
    add_io(fit, true);
    add_basis(fit);
    add_engine(fit);
    fit->add_option("--m", opt.m, "boosting iterations")->check(CLI::Range(1, 1000000));

    CLI::App* predict = app.add_subcommand("predict", "apply a trained model");
    add_io(predict, true);
    predict->add_option("--model", opt.model_path, "model file from fit")->required();
    predict->add_option("--m", opt.truncate, "evaluate only the first m stages")
        ->check(CLI::Range(1, 1000000));
    predict->add_option("--output-kind", opt.output_kind, "score, label or prob")
        ->check(CLI::IsMember({"score", "label", "prob"}));

    CLI::App* cv = app.add_subcommand("cv", "cross-validate the iteration count");
    add_io(cv, true);
    add_basis(cv);
    add_engine(cv);
    cv->add_option("--mmax", opt.mmax, "largest iteration count to score")
        ->check(CLI::Range(1, 1000000));
    cv->add_option("--folds", opt.folds, "number of folds")->check(CLI::Range(2, 1000000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // --help exits cleanly; any parse failure is usage
    }

    try {
        if (expand->parsed()) run_expand(opt);
        if (fit->parsed()) run_fit(opt);
        if (predict->parsed()) run_predict(opt);
        if (cv->parsed()) run_cv(opt);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
