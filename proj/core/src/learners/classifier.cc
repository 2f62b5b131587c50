#include "essmart/learners/classifier.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "essmart/common/error.h"
#include "essmart/common/random.h"
#include "models.h"

namespace essmart::learners {

double param_number(const Parameters& p, const std::string& name, double fallback) {
  auto it = p.find(name);
  if (it == p.end()) return fallback;
  if (const double* v = std::get_if<double>(&it->second)) {
    if (!std::isfinite(*v)) {
      throw Error(ErrorCode::kInvalidParameter, name + " must be finite");
    }
    return *v;
  }
  throw Error(ErrorCode::kInvalidParameter, name + " must be a number");
}

std::string param_string(const Parameters& p, const std::string& name,
                         const std::string& fallback) {
  auto it = p.find(name);
  if (it == p.end()) return fallback;
  if (const std::string* v = std::get_if<std::string>(&it->second)) return *v;
  throw Error(ErrorCode::kInvalidParameter, name + " must be a string");
}

void check_known(const Parameters& p, std::initializer_list<const char*> names) {
  for (const auto& [key, value] : p) {
    bool known = std::any_of(names.begin(), names.end(),
                             [&](const char* n) { return key == n; });
    if (!known) throw Error(ErrorCode::kInvalidParameter, "unknown parameter " + key);
  }
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::kNaiveBayes: return "naive_bayes";
    case Family::kSvm: return "svm";
    case Family::kRandomForest: return "random_forest";
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  if (name == "nb" || name == "naive_bayes") return Family::kNaiveBayes;
  if (name == "svm") return Family::kSvm;
  if (name == "rf" || name == "random_forest") return Family::kRandomForest;
  throw Error(ErrorCode::kInvalidArgument, "unknown classifier family " + std::string(name));
}

std::string to_string(const ParamValue& value) {
  if (const std::string* s = std::get_if<std::string>(&value)) return *s;
  std::ostringstream out;
  out << std::get<double>(value);
  return out.str();
}

std::string to_string(const Parameters& params) {
  std::string out;
  for (const auto& [key, value] : params) {
    if (!out.empty()) out += ',';
    out += key + '=' + to_string(value);
  }
  return out;
}

namespace {

double logistic(double v) { return 1.0 / (1.0 + std::exp(-v)); }

nlohmann::json params_to_json(const Parameters& p) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [key, value] : p) {
    std::visit([&](const auto& v) { out[key] = v; }, value);
  }
  return out;
}

Parameters params_from_json(const nlohmann::json& j) {
  Parameters p;
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      p[key] = value.get<std::string>();
    } else {
      p[key] = value.get<double>();
    }
  }
  return p;
}

}  // namespace

ClassifierModel::ClassifierModel(std::shared_ptr<const FittedState> state)
    : state_(std::move(state)) {}

Family ClassifierModel::family() const { return state_->family; }
const Parameters& ClassifierModel::parameters() const { return state_->parameters; }
const std::vector<std::string>& ClassifierModel::feature_names() const {
  return state_->feature_names;
}
const std::vector<FeatureKind>& ClassifierModel::feature_kinds() const {
  return state_->feature_kinds;
}
const std::vector<std::string>& ClassifierModel::label_domain() const {
  return state_->label_domain;
}
std::uint64_t ClassifierModel::seed() const { return state_->seed; }

std::vector<double> ClassifierModel::scores(std::span<const double> features) const {
  if (features.size() != width()) {
    throw Error(ErrorCode::kWidthMismatch, "expected " + std::to_string(width()) +
                                               " features, got " +
                                               std::to_string(features.size()));
  }
  const std::size_t k = state_->label_domain.size();
  return std::visit(
      [&](const auto& s) -> std::vector<double> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NaiveBayesState>) {
          return s.posterior(features);
        } else if constexpr (std::is_same_v<T, SvmState>) {
          std::vector<double> d = s.decision(features);
          if (k == 2) {
            double positive = logistic(d.front());
            return {1.0 - positive, positive};
          }
          for (double& v : d) v = logistic(v);
          return d;
        } else {
          return s.votes(features, k);
        }
      },
      state_->state);
}

Prediction ClassifierModel::predict(std::span<const double> features) const {
  std::vector<double> s = scores(features);
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] > s[best]) best = i;
  }
  return {state_->label_domain[best], std::clamp(s[best], 0.0, 1.0)};
}

nlohmann::json ClassifierModel::to_json() const {
  nlohmann::json kinds = nlohmann::json::array();
  for (FeatureKind kind : state_->feature_kinds) kinds.push_back(std::string(learners::to_string(kind)));
  nlohmann::json state = std::visit([](const auto& s) { return s.to_json(); }, state_->state);
  return {{"format_version", kFormatVersion},
          {"family", std::string(learners::to_string(state_->family))},
          {"parameters", params_to_json(state_->parameters)},
          {"feature_names", state_->feature_names},
          {"feature_kinds", kinds},
          {"label_domain", state_->label_domain},
          {"seed", state_->seed},
          {"state", state}};
}

ClassifierModel ClassifierModel::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("format_version")) {
    throw Error(ErrorCode::kCorruptArtifact, "classifier artifact lacks format_version");
  }
  const int version = j.at("format_version").get<int>();
  if (version != kFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "classifier format_version " + std::to_string(version) +
                    " is not supported (expected " + std::to_string(kFormatVersion) + ")");
  }
  try {
    auto fitted = std::make_shared<FittedState>();
    fitted->family = family_from_string(j.at("family").get<std::string>());
    fitted->parameters = params_from_json(j.at("parameters"));
    fitted->feature_names = j.at("feature_names").get<std::vector<std::string>>();
    for (const auto& kind : j.at("feature_kinds")) {
      fitted->feature_kinds.push_back(feature_kind_from_string(kind.get<std::string>()));
    }
    fitted->label_domain = j.at("label_domain").get<std::vector<std::string>>();
    fitted->seed = j.at("seed").get<std::uint64_t>();
    const auto& state = j.at("state");
    switch (fitted->family) {
      case Family::kNaiveBayes: fitted->state = NaiveBayesState::from_json(state); break;
      case Family::kSvm: fitted->state = SvmState::from_json(state); break;
      case Family::kRandomForest: fitted->state = RandomForestState::from_json(state); break;
    }
    if (fitted->feature_kinds.size() != fitted->feature_names.size() ||
        fitted->label_domain.size() < 2) {
      throw Error(ErrorCode::kCorruptArtifact, "inconsistent classifier artifact");
    }
    return ClassifierModel(std::move(fitted));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptArtifact, std::string("classifier artifact: ") + e.what());
  }
}

ClassifierModel train(Family family, const Dataset& dataset, const Parameters& parameters,
                      std::uint64_t seed) {
  if (dataset.size() == 0) throw Error(ErrorCode::kEmptyInput, "no training rows");
  if (dataset.label_domain.size() < 2) {
    throw Error(ErrorCode::kSingleClass, "training data has a single label");
  }
  auto fitted = std::make_shared<FittedState>();
  fitted->family = family;
  fitted->parameters = parameters;
  fitted->feature_names = dataset.feature_names;
  fitted->feature_kinds = dataset.feature_kinds;
  fitted->label_domain = dataset.label_domain;
  fitted->seed = seed;
  Rng rng(seed);
  switch (family) {
    case Family::kNaiveBayes:
      fitted->state = NaiveBayesState::fit(dataset, parameters);
      break;
    case Family::kSvm:
      fitted->state = SvmState::fit(dataset, parameters, rng);
      break;
    case Family::kRandomForest:
      fitted->state = RandomForestState::fit(dataset, parameters, rng);
      break;
  }
  return ClassifierModel(std::move(fitted));
}

Prediction predict(const ClassifierModel& model, std::span<const double> features) {
  return model.predict(features);
}

}  // namespace essmart::learners
