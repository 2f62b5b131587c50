#include <algorithm>

#include "essmart/common/error.h"
#include "essmart/triage/triage.h"

namespace essmart::triage {

std::string_view to_string(Task task) {
  switch (task) {
    case Task::kEscalation: return "escalation";
    case Task::kPriority: return "priority";
    case Task::kAssignment: return "assignment";
  }
  return "escalation";
}

Task task_from_string(std::string_view name) {
  for (Task t : {Task::kEscalation, Task::kPriority, Task::kAssignment}) {
    if (to_string(t) == name) return t;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown task " + std::string(name));
}

std::string_view to_string(TextSource source) {
  switch (source) {
    case TextSource::kConversation: return "conversation";
    case TextSource::kAbstractiveSummary: return "abstractive_summary";
    case TextSource::kExtractiveSummary: return "extractive_summary";
  }
  return "conversation";
}

std::string_view to_string(CategoricalAttr attr) {
  return attr == CategoricalAttr::kOrganization ? "organization" : "brand_name";
}

TextSource text_source_from_string(std::string_view name) {
  for (TextSource s : {TextSource::kConversation, TextSource::kAbstractiveSummary,
                       TextSource::kExtractiveSummary}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown text source " + std::string(name));
}

CategoricalAttr categorical_attr_from_string(std::string_view name) {
  if (name == "organization") return CategoricalAttr::kOrganization;
  if (name == "brand_name") return CategoricalAttr::kBrandName;
  throw Error(ErrorCode::kInvalidArgument, "unknown categorical attribute " + std::string(name));
}

std::string FeatureRecipe::label() const {
  if (!name.empty()) return name;
  std::vector<std::string> parts;
  if (uses(TextSource::kConversation)) parts.push_back("Conversation");
  if (uses(TextSource::kAbstractiveSummary)) parts.push_back("Abstractive summary");
  if (uses(TextSource::kExtractiveSummary)) parts.push_back("Extractive summary");
  if (categorical.contains(CategoricalAttr::kOrganization)) parts.push_back("Organization");
  if (categorical.contains(CategoricalAttr::kBrandName)) parts.push_back("Brand name");
  if (normalization == text::Normalization::kLemmatize) parts.push_back("Lemmatization");
  if (normalization == text::Normalization::kStem) parts.push_back("Stemming");
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " + ") + p;
  if (vector_mode == text::VectorMode::kBow) out += " (BOW)";
  if (stopword_profile != "default") out += " [stopwords: " + stopword_profile + "]";
  return out;
}

void FeatureRecipe::validate() const {
  if (text_sources.empty() && categorical.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "feature recipe has no text source or attribute");
  }
  text::stopword_profile(stopword_profile);
}

nlohmann::json FeatureRecipe::to_json() const {
  nlohmann::json sources = nlohmann::json::array();
  for (TextSource s : text_sources) sources.push_back(std::string(to_string(s)));
  nlohmann::json attrs = nlohmann::json::array();
  for (CategoricalAttr a : categorical) attrs.push_back(std::string(to_string(a)));
  nlohmann::json out = {{"text_sources", sources},
                        {"normalization", std::string(text::to_string(normalization))},
                        {"vector_mode", std::string(text::to_string(vector_mode))},
                        {"categorical_attrs", attrs},
                        {"stopword_profile", stopword_profile}};
  if (!name.empty()) out["name"] = name;
  return out;
}

FeatureRecipe FeatureRecipe::from_json(const nlohmann::json& j) {
  FeatureRecipe r;
  try {
    for (const auto& s : j.value("text_sources", nlohmann::json::array())) {
      r.text_sources.insert(text_source_from_string(s.get<std::string>()));
    }
    for (const auto& a : j.value("categorical_attrs", nlohmann::json::array())) {
      r.categorical.insert(categorical_attr_from_string(a.get<std::string>()));
    }
    r.normalization = text::normalization_from_string(
        j.value("normalization", std::string(text::to_string(r.normalization))));
    r.vector_mode = text::vector_mode_from_string(
        j.value("vector_mode", std::string(text::to_string(r.vector_mode))));
    r.stopword_profile = j.value("stopword_profile", r.stopword_profile);
    r.name = j.value("name", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("feature recipe: ") + e.what());
  }
  r.validate();
  return r;
}

std::vector<FeatureRecipe> standard_recipes(Task task) {
  using enum TextSource;
  auto recipe = [](std::set<TextSource> sources, text::Normalization norm,
                   std::set<CategoricalAttr> attrs = {}) {
    FeatureRecipe r;
    r.text_sources = std::move(sources);
    r.normalization = norm;
    r.categorical = std::move(attrs);
    return r;
  };
  constexpr auto kNone = text::Normalization::kNone;
  constexpr auto kLemma = text::Normalization::kLemmatize;
  if (task == Task::kEscalation) {
    return {recipe({kConversation}, kNone), recipe({kConversation}, kLemma),
            recipe({kExtractiveSummary}, kLemma),
            recipe({kConversation, kExtractiveSummary}, kLemma)};
  }
  // Every priority and assignment row is lemmatized, so the tables leave the
  // step out of the row labels.
  std::set<CategoricalAttr> attrs{CategoricalAttr::kBrandName};
  if (task == Task::kPriority) attrs.insert(CategoricalAttr::kOrganization);
  std::vector<FeatureRecipe> rows{
      recipe({kConversation}, kLemma),
      recipe({kExtractiveSummary}, kLemma),
      recipe({kConversation, kExtractiveSummary}, kLemma),
      recipe({kAbstractiveSummary, kExtractiveSummary}, kLemma),
      recipe({kConversation, kAbstractiveSummary, kExtractiveSummary}, kLemma),
      recipe({kAbstractiveSummary, kExtractiveSummary}, kLemma, attrs)};
  for (auto& r : rows) {
    r.name = r.label();
    const std::string suffix = " + Lemmatization";
    r.name.erase(r.name.size() - suffix.size());
  }
  return rows;
}

FeatureRecipe default_recipe(Task task) { return standard_recipes(task).back(); }

learners::Family default_family(Task task) {
  return task == Task::kEscalation ? learners::Family::kRandomForest
                                   : learners::Family::kNaiveBayes;
}

}  // namespace essmart::triage
