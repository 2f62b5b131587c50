#ifndef ESSMART_TRIAGE_TRIAGE_H_
#define ESSMART_TRIAGE_TRIAGE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "essmart/corpus/types.h"
#include "essmart/extractive/summarizers.h"
#include "essmart/learners/classifier.h"
#include "essmart/learners/grid_search.h"
#include "essmart/learners/metrics.h"
#include "essmart/learners/mrmr.h"
#include "essmart/textproc/vectorizer.h"
#include "essmart/ticketgen/title.h"

namespace essmart::triage {

enum class Task { kEscalation, kPriority, kAssignment };
std::string_view to_string(Task task);
Task task_from_string(std::string_view name);

enum class TextSource { kConversation, kAbstractiveSummary, kExtractiveSummary };
enum class CategoricalAttr { kOrganization, kBrandName };
std::string_view to_string(TextSource source);
std::string_view to_string(CategoricalAttr attr);
TextSource text_source_from_string(std::string_view name);
CategoricalAttr categorical_attr_from_string(std::string_view name);

struct FeatureRecipe {
  std::set<TextSource> text_sources;
  text::Normalization normalization = text::Normalization::kLemmatize;
  text::VectorMode vector_mode = text::VectorMode::kTfidf;
  std::set<CategoricalAttr> categorical;
  std::string stopword_profile = "default";
  std::string name;  // display label; generated when empty

  // "Conversation + Extractive summary + Lemmatization" style label.
  std::string label() const;
  bool uses(TextSource source) const { return text_sources.contains(source); }
  // Throws InvalidArgument when the recipe has no block at all.
  void validate() const;
  nlohmann::json to_json() const;
  static FeatureRecipe from_json(const nlohmann::json& j);
  bool operator==(const FeatureRecipe&) const = default;
};

// Rows of the published ablation tables for each task, in table order.
std::vector<FeatureRecipe> standard_recipes(Task task);
FeatureRecipe default_recipe(Task task);
learners::Family default_family(Task task);

// Token lists for the derived text sources of one request; a source that
// was not computed stays empty.
struct SourceTexts {
  std::optional<std::vector<std::string>> extractive;
  std::optional<std::vector<std::string>> abstractive;
};

struct SourceOptions {
  extractive::SummarizerConfig summarizer;
  ticketgen::TitleParams title;
};

// Computes the extractive summary and/or the generated title of a request.
// An empty conversation yields empty token lists.
SourceTexts compute_sources(const corpus::UserRequest& request, bool extractive,
                            bool abstractive, const SourceOptions& options);

// Concatenated feature blocks: one text block per source sharing a single
// vocabulary, then one one-hot block per categorical attribute.
class Featurizer {
 public:
  struct Block {
    std::string name;
    std::size_t offset = 0;
    std::size_t width = 0;
    bool categorical = false;
  };

  Featurizer() = default;
  const FeatureRecipe& recipe() const { return recipe_; }
  const std::optional<text::VectorizerModel>& vectorizer() const { return vectorizer_; }
  const std::map<CategoricalAttr, std::vector<std::string>>& categories() const {
    return categories_;
  }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t width() const;
  std::vector<std::string> feature_names() const;
  std::vector<learners::FeatureKind> feature_kinds() const;

  // Throws MissingSource when the recipe needs a source absent from `sources`.
  std::vector<double> build(const corpus::UserRequest& request, const SourceTexts& sources) const;

  nlohmann::json to_json() const;
  static Featurizer from_json(const nlohmann::json& j);

  friend Featurizer fit_featurizer(const FeatureRecipe& recipe,
                                   std::span<const corpus::UserRequest> requests,
                                   std::span<const SourceTexts> sources);

 private:
  void layout();

  FeatureRecipe recipe_;
  std::optional<text::VectorizerModel> vectorizer_;
  std::map<CategoricalAttr, std::vector<std::string>> categories_;
  std::vector<Block> blocks_;
};

Featurizer fit_featurizer(const FeatureRecipe& recipe,
                          std::span<const corpus::UserRequest> requests,
                          std::span<const SourceTexts> sources);

std::vector<double> build_features(const corpus::UserRequest& request,
                                   const Featurizer& featurizer, const SourceTexts& sources);

// Gold label of a request for a task, if it has one: "true"/"false" for
// escalation, the ticket priority, or the ticket (else request) assignee.
// Priority and assignment labels exist only for escalated requests.
std::optional<std::string> task_label(Task task, const corpus::UserRequest& request);

struct TrainOptions {
  std::size_t folds = 5;
  std::optional<learners::ParamGrid> grid;  // family default when empty
  double downsample_ratio = 1.0;            // escalation only; <= 0 disables
  SourceOptions sources;
};

struct TaskModel {
  Task task = Task::kEscalation;
  learners::Family family = learners::Family::kRandomForest;
  Featurizer featurizer;
  learners::ClassifierModel classifier;
  learners::Parameters best_parameters;
  learners::EvalReport report;  // cross-validated

  learners::Prediction predict(const corpus::UserRequest& request,
                               const SourceTexts& sources) const;
  nlohmann::json to_json() const;
  static TaskModel from_json(const nlohmann::json& j);
};

// Collects labeled requests, computes the needed sources, fits the
// featurizer and grid-searches the classifier.
TaskModel train_task(Task task, std::span<const corpus::UserRequest> requests,
                     const FeatureRecipe& recipe, learners::Family family, std::uint64_t seed,
                     const TrainOptions& options = {});

TaskModel train_escalation(std::span<const corpus::UserRequest> requests,
                           const FeatureRecipe& recipe, learners::Family family,
                           std::uint64_t seed, const TrainOptions& options = {});
TaskModel train_priority(std::span<const corpus::UserRequest> requests,
                         const FeatureRecipe& recipe, learners::Family family,
                         std::uint64_t seed, const TrainOptions& options = {});
TaskModel train_assignment(std::span<const corpus::UserRequest> requests,
                           const FeatureRecipe& recipe, learners::Family family,
                           std::uint64_t seed, const TrainOptions& options = {});

struct TriagePredictors {
  std::optional<TaskModel> escalation;
  std::optional<TaskModel> priority;
  std::optional<TaskModel> assignment;

  bool needs(TextSource source) const;
};

struct EscalationPrediction {
  bool escalate = false;
  double confidence = 0.0;
};

// Throws NotTrained without an escalation model.
EscalationPrediction predict_escalation(const TriagePredictors& predictors,
                                        const corpus::UserRequest& request,
                                        const SourceTexts& sources);

struct AblationRow {
  learners::Family family = learners::Family::kNaiveBayes;
  std::string recipe;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool top_precision = false;
  bool top_recall = false;
  bool top_f1 = false;
};

struct AblationReport {
  Task task = Task::kEscalation;
  std::uint64_t seed = 0;
  std::vector<AblationRow> rows;  // grouped by family, recipes in order

  std::string to_text() const;
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

// Every family x recipe combination, scored by cross-validated weighted
// P/R/F1. The best value of each column over the whole table is flagged.
AblationReport ablation_benchmark(std::span<const corpus::UserRequest> requests, Task task,
                                  std::span<const learners::Family> families,
                                  std::span<const FeatureRecipe> recipes, std::uint64_t seed,
                                  const TrainOptions& options = {});

// Non-text request attributes as a dataset for mRMR ranking against a task
// label: categorical attributes are integer-coded, timings in seconds.
learners::Dataset attribute_dataset(std::span<const corpus::UserRequest> requests, Task task);

}  // namespace essmart::triage

#endif  // ESSMART_TRIAGE_TRIAGE_H_
