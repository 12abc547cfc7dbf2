#pragma once

// Versioned JSON persistence for boosted models.  Serialization is canonical
// (sorted keys, shortest exact number forms), so save -> load -> save is
// byte-identical; the score map is recomputed from the two stored bases on
// load rather than persisted.

#include "funcboost/boosting.hpp"

#include <string>

namespace funcboost {

inline constexpr int kModelFileVersion = 1;

std::string model_to_string(const BoostedModel& model);
BoostedModel model_from_string(const std::string& text);

void save_model(const BoostedModel& model, const std::string& path);
BoostedModel load_model(const std::string& path);

}  // namespace funcboost
