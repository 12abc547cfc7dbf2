#include "funcboost/model_io.hpp"

#include "funcboost/csv.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace funcboost {

namespace {

using nlohmann::json;
// Sorted object keys make the canonical form; nlohmann's default object type
// already sorts, and its float printing is shortest-exact, so dumping the
// parse of a dump reproduces it byte for byte.

json vector_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
    Eigen::VectorXd v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = arr[i];
    return v;
}

json basis_to_json(const BasisSystem& basis) {
    json spec;
    spec["kind"] = to_string(basis.kind());
    spec["size"] = basis.size();
    spec["lower"] = basis.lower();
    spec["upper"] = basis.upper();
    if (basis.kind() == BasisKind::BSpline) {
        spec["degree"] = basis.degree();
        spec["knots"] = basis.knots();
    }
    return spec;
}

BasisSystem basis_from_json(const json& spec) {
    const BasisKind kind = basis_kind_from_string(spec.at("kind"));
    const int size = spec.at("size");
    switch (kind) {
        case BasisKind::Fourier:
            return BasisSystem::fourier(size, spec.at("lower"), spec.at("upper"));
        case BasisKind::Polynomial:
            return BasisSystem::polynomial(size, spec.at("lower"), spec.at("upper"));
        case BasisKind::BSpline: {
            BasisSystem basis = BasisSystem::bspline(
                spec.at("degree"), spec.at("knots").get<std::vector<double>>());
            if (basis.size() != size)
                throw DataError("model file: B-spline size disagrees with its knots");
            return basis;
        }
    }
    throw DataError("model file: unknown basis kind");
}

json stage_to_json(const BoostStage& stage) {
    json record;
    record["alpha"] = stage.alpha;
    if (const auto* pls = std::get_if<PenalizedBase>(&stage.base)) {
        record["kind"] = "penalized";
        record["coef"] = vector_to_json(pls->coef);
    } else if (const auto* cw = std::get_if<ComponentwiseBase>(&stage.base)) {
        record["kind"] = "componentwise";
        record["index"] = cw->index;
        record["slope"] = cw->slope;
    } else {
        const auto& stump = std::get<StumpBase>(stage.base);
        record["kind"] = "stump";
        record["feature"] = stump.feature;
        record["threshold"] = stump.threshold;
        record["left"] = stump.left;
        record["right"] = stump.right;
        record["single_leaf"] = stump.single_leaf;
    }
    return record;
}

BoostStage stage_from_json(const json& record) {
    BoostStage stage;
    stage.alpha = record.at("alpha");
    const std::string kind = record.at("kind");
    if (kind == "penalized") {
        PenalizedBase base;
        base.coef = vector_from_json(record.at("coef"));
        stage.base = std::move(base);
    } else if (kind == "componentwise") {
        ComponentwiseBase base;
        base.index = record.at("index");
        base.slope = record.at("slope");
        stage.base = base;
    } else if (kind == "stump") {
        StumpBase base;
        base.feature = record.at("feature");
        base.threshold = record.at("threshold");
        base.left = record.at("left");
        base.right = record.at("right");
        base.single_leaf = record.at("single_leaf");
        stage.base = base;
    } else {
        throw DataError("model file: unknown stage kind '" + kind + "'");
    }
    return stage;
}

std::string loss_name(const BoostedModel& model) {
    if (model.engine == Engine::AdaBoost) return "exponential";
    return model.loss == Loss::Quadratic ? "quadratic" : "logistic";
}

}  // namespace

std::string model_to_string(const BoostedModel& model) {
    json doc;
    doc["version"] = kModelFileVersion;
    doc["engine"] = to_string(model.engine);
    doc["loss"] = loss_name(model);
    doc["offset"] = model.offset;
    doc["sign_stages"] = model.sign_stages;
    doc["data_basis"] = basis_to_json(model.data_basis);
    doc["beta_basis"] = basis_to_json(model.beta_basis);
    if (model.engine != Engine::L2Boost)
        doc["labels"] = {{"negative", -1.0}, {"positive", 1.0}};

    json learner;
    learner["kind"] = to_string(model.learner.kind);
    learner["lambda"] = model.learner.lambda;
    learner["penalty_order"] = model.learner.penalty_order;
    learner["min_leaf_weight"] = model.learner.min_leaf_weight;
    if (model.learner.df_target) learner["df_target"] = *model.learner.df_target;
    doc["learner"] = learner;

    json meta;
    meta["iterations"] = model.iterations();
    meta["lambda"] = model.resolved_lambda;
    meta["penalty_order"] = model.learner.penalty_order;
    meta["seed"] = model.seed;
    meta["shrinkage"] = model.shrinkage;
    meta["mode"] = to_string(model.mode);
    doc["metadata"] = meta;

    json stages = json::array();
    for (const BoostStage& stage : model.stages) stages.push_back(stage_to_json(stage));
    doc["stages"] = stages;

    return doc.dump(2) + "\n";
}

BoostedModel model_from_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("model file: invalid JSON: ") + e.what());
    }
    try {
        if (!doc.contains("version")) throw DataError("model file: missing version field");
        if (doc.at("version") != kModelFileVersion)
            throw DataError("model file: unsupported version");

        BoostedModel model;
        model.engine = engine_from_string(doc.at("engine"));
        const std::string loss = doc.at("loss");
        model.loss = loss == "quadratic" ? Loss::Quadratic : Loss::Logistic;
        model.offset = doc.at("offset");
        model.sign_stages = doc.at("sign_stages");
        model.data_basis = basis_from_json(doc.at("data_basis"));
        model.beta_basis = basis_from_json(doc.at("beta_basis"));
        model.score_map = cross_gram(model.data_basis, model.beta_basis);

        const json& learner = doc.at("learner");
        model.learner.kind = learner_kind_from_string(learner.at("kind"));
        model.learner.lambda = learner.at("lambda");
        model.learner.penalty_order = learner.at("penalty_order");
        model.learner.min_leaf_weight = learner.at("min_leaf_weight");
        if (learner.contains("df_target"))
            model.learner.df_target = learner.at("df_target").get<double>();

        const json& meta = doc.at("metadata");
        model.resolved_lambda = meta.at("lambda");
        model.seed = meta.at("seed");
        model.shrinkage = meta.at("shrinkage");
        model.mode = adaboost_mode_from_string(meta.at("mode"));

        for (const json& record : doc.at("stages"))
            model.stages.push_back(stage_from_json(record));
        if (model.stages.empty()) throw DataError("model file: no stages");
        return model;
    } catch (const json::exception& e) {
        throw DataError(std::string("model file: malformed document: ") + e.what());
    }
}

void save_model(const BoostedModel& model, const std::string& path) {
    atomic_write_text(path, model_to_string(model));
}

BoostedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return model_from_string(buffer.str());
}

}  // namespace funcboost
