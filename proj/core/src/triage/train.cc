#include <algorithm>
#include <cstdio>
#include <set>

#include "essmart/common/error.h"
#include "essmart/corpus/sampling.h"
#include "essmart/triage/triage.h"

namespace essmart::triage {
namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string family_title(learners::Family f) {
  switch (f) {
    case learners::Family::kNaiveBayes: return "Naive Bayes";
    case learners::Family::kSvm: return "Support Vector Machine";
    case learners::Family::kRandomForest: return "Random Forest";
  }
  return "";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::optional<std::string> task_label(Task task, const corpus::UserRequest& r) {
  if (task == Task::kEscalation) {
    if (!r.escalated) return std::nullopt;
    return *r.escalated ? "true" : "false";
  }
  if (r.escalated != true || !r.ticket) return std::nullopt;
  if (task == Task::kPriority) return std::string(corpus::to_string(r.ticket->priority));
  if (!r.ticket->assignee.empty()) return r.ticket->assignee;
  if (r.assignee && !r.assignee->empty()) return *r.assignee;
  return std::nullopt;
}

learners::Prediction TaskModel::predict(const corpus::UserRequest& request,
                                        const SourceTexts& sources) const {
  return classifier.predict(featurizer.build(request, sources));
}

nlohmann::json TaskModel::to_json() const {
  return {{"task", std::string(to_string(task))},
          {"family", std::string(learners::to_string(family))},
          {"featurizer", featurizer.to_json()},
          {"classifier", classifier.to_json()},
          {"report", report.to_json()}};
}

TaskModel TaskModel::from_json(const nlohmann::json& j) {
  try {
    TaskModel m{task_from_string(j.at("task").get<std::string>()),
                learners::family_from_string(j.at("family").get<std::string>()),
                Featurizer::from_json(j.at("featurizer")),
                learners::ClassifierModel::from_json(j.at("classifier")),
                {},
                {}};
    m.best_parameters = m.classifier.parameters();
    if (m.classifier.width() != m.featurizer.width()) {
      throw Error(ErrorCode::kCorruptArtifact, "classifier width differs from its featurizer");
    }
    m.report = learners::EvalReport::from_json(j.at("report"));
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptArtifact, std::string("task model: ") + e.what());
  }
}

TaskModel train_task(Task task, std::span<const corpus::UserRequest> requests,
                     const FeatureRecipe& recipe, learners::Family family, std::uint64_t seed,
                     const TrainOptions& options) {
  recipe.validate();
  std::vector<corpus::UserRequest> labeled;
  for (const auto& r : requests) {
    if (task_label(task, r)) labeled.push_back(r);
  }
  if (task == Task::kEscalation && options.downsample_ratio > 0.0) {
    labeled = corpus::downsample_majority(labeled, options.downsample_ratio, seed);
  }
  std::vector<std::string> labels;
  for (const auto& r : labeled) labels.push_back(*task_label(task, r));
  if (std::set<std::string>(labels.begin(), labels.end()).size() < 2) {
    throw Error(ErrorCode::kSingleClass,
                std::string(to_string(task)) + " training data has fewer than two labels");
  }

  std::vector<SourceTexts> sources;
  for (const auto& r : labeled) {
    sources.push_back(compute_sources(r, recipe.uses(TextSource::kExtractiveSummary),
                                      recipe.uses(TextSource::kAbstractiveSummary),
                                      options.sources));
  }
  Featurizer featurizer = fit_featurizer(recipe, labeled, sources);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    rows.push_back(featurizer.build(labeled[i], sources[i]));
  }
  auto dataset = learners::Dataset::make(std::move(rows), std::move(labels),
                                         featurizer.feature_names(), featurizer.feature_kinds());
  auto result = learners::grid_search_cv(
      family, dataset, options.grid ? *options.grid : learners::default_grid(family),
      options.folds, seed);
  return {task, family, std::move(featurizer), std::move(result.model),
          std::move(result.best_parameters), std::move(result.report)};
}

TaskModel train_escalation(std::span<const corpus::UserRequest> requests,
                           const FeatureRecipe& recipe, learners::Family family,
                           std::uint64_t seed, const TrainOptions& options) {
  return train_task(Task::kEscalation, requests, recipe, family, seed, options);
}

TaskModel train_priority(std::span<const corpus::UserRequest> requests,
                         const FeatureRecipe& recipe, learners::Family family,
                         std::uint64_t seed, const TrainOptions& options) {
  return train_task(Task::kPriority, requests, recipe, family, seed, options);
}

TaskModel train_assignment(std::span<const corpus::UserRequest> requests,
                           const FeatureRecipe& recipe, learners::Family family,
                           std::uint64_t seed, const TrainOptions& options) {
  return train_task(Task::kAssignment, requests, recipe, family, seed, options);
}

bool TriagePredictors::needs(TextSource source) const {
  for (const auto* m : {&escalation, &priority, &assignment}) {
    if (*m && (*m)->featurizer.recipe().uses(source)) return true;
  }
  return false;
}

EscalationPrediction predict_escalation(const TriagePredictors& predictors,
                                        const corpus::UserRequest& request,
                                        const SourceTexts& sources) {
  if (!predictors.escalation) {
    throw Error(ErrorCode::kNotTrained, "no escalation model has been trained");
  }
  const auto p = predictors.escalation->predict(request, sources);
  return {p.label == "true", p.confidence};
}

AblationReport ablation_benchmark(std::span<const corpus::UserRequest> requests, Task task,
                                  std::span<const learners::Family> families,
                                  std::span<const FeatureRecipe> recipes, std::uint64_t seed,
                                  const TrainOptions& options) {
  if (families.empty() || recipes.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "ablation needs at least one family and recipe");
  }
  AblationReport report;
  report.task = task;
  report.seed = seed;
  for (learners::Family family : families) {
    for (const auto& recipe : recipes) {
      const TaskModel m = train_task(task, requests, recipe, family, seed, options);
      report.rows.push_back({family, recipe.label(), m.report.precision, m.report.recall,
                             m.report.f1});
    }
  }
  double best_p = 0.0, best_r = 0.0, best_f = 0.0;
  for (const auto& r : report.rows) {
    best_p = std::max(best_p, r.precision);
    best_r = std::max(best_r, r.recall);
    best_f = std::max(best_f, r.f1);
  }
  for (auto& r : report.rows) {
    r.top_precision = r.precision == best_p;
    r.top_recall = r.recall == best_r;
    r.top_f1 = r.f1 == best_f;
  }
  return report;
}

std::string AblationReport::to_text() const {
  std::size_t width = 10;
  for (const auto& r : rows) width = std::max(width, r.recipe.size());
  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
  };
  auto cell = [&](double v, bool top) { return pad(fixed2(v) + (top ? "*" : ""), 11); };
  std::string out = "# task=" + std::string(to_string(task)) + " seed=" + std::to_string(seed) +
                    " (* marks the top value of a column)\n";
  std::optional<learners::Family> section;
  for (const auto& r : rows) {
    if (section != r.family) {
      section = r.family;
      out += pad(family_title(r.family), width + 2) + pad("Precision", 11) + pad("Recall", 11) +
             "F1\n";
    }
    out += pad(r.recipe, width + 2) + cell(r.precision, r.top_precision) +
           cell(r.recall, r.top_recall) + fixed2(r.f1) + (r.top_f1 ? "*" : "") + '\n';
  }
  return out;
}

std::string AblationReport::to_csv() const {
  std::string out = "task,family,recipe,precision,recall,f1,top_precision,top_recall,top_f1\n";
  for (const auto& r : rows) {
    out += std::string(to_string(task)) + ',' + std::string(learners::to_string(r.family)) + ',' +
           csv_field(r.recipe) + ',' + full(r.precision) + ',' + full(r.recall) + ',' + full(r.f1) +
           ',' + (r.top_precision ? "1" : "0") + ',' + (r.top_recall ? "1" : "0") + ',' +
           (r.top_f1 ? "1" : "0") + '\n';
  }
  return out;
}

nlohmann::json AblationReport::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"family", std::string(learners::to_string(r.family))},
                   {"recipe", r.recipe},
                   {"precision", r.precision},
                   {"recall", r.recall},
                   {"f1", r.f1},
                   {"top", {{"precision", r.top_precision},
                            {"recall", r.top_recall},
                            {"f1", r.top_f1}}}});
  }
  return {{"task", std::string(to_string(task))}, {"seed", seed}, {"rows", out}};
}

learners::Dataset attribute_dataset(std::span<const corpus::UserRequest> requests, Task task) {
  std::vector<const corpus::UserRequest*> kept;
  std::vector<std::string> labels;
  for (const auto& r : requests) {
    if (auto l = task_label(task, r)) {
      kept.push_back(&r);
      labels.push_back(*l);
    }
  }
  using Getter = std::string (*)(const corpus::UserRequest&);
  const std::vector<std::pair<std::string, Getter>> categorical{
      {"requester", [](const corpus::UserRequest& r) { return r.requester; }},
      {"ticket_type", [](const corpus::UserRequest& r) { return r.ticket_type; }},
      {"via", [](const corpus::UserRequest& r) { return r.via; }},
      {"severity", [](const corpus::UserRequest& r) { return r.severity; }},
      {"assignee", [](const corpus::UserRequest& r) { return r.assignee.value_or(""); }},
      {"brand_name", [](const corpus::UserRequest& r) { return r.brand_name; }},
      {"organization", [](const corpus::UserRequest& r) { return r.organization; }},
  };
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows(kept.size());
  for (const auto& [name, get] : categorical) {
    std::set<std::string> values;
    for (const auto* r : kept) values.insert(get(*r));
    const std::vector<std::string> sorted(values.begin(), values.end());
    names.push_back(name);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      rows[i].push_back(static_cast<double>(
          std::lower_bound(sorted.begin(), sorted.end(), get(*kept[i])) - sorted.begin()));
    }
  }
  names.insert(names.end(), {"tag_count", "time_open", "time_to_assign", "subject_words"});
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const auto& r = *kept[i];
    rows[i].push_back(static_cast<double>(r.tags.size()));
    rows[i].push_back(r.time_open ? static_cast<double>(r.time_open->time_since_epoch().count())
                                  : -1.0);
    rows[i].push_back(r.time_to_assign ? static_cast<double>(*r.time_to_assign) : -1.0);
    rows[i].push_back(static_cast<double>(corpus::word_count(r.subject)));
  }
  return learners::Dataset::make(std::move(rows), std::move(labels), std::move(names));
}

}  // namespace essmart::triage
