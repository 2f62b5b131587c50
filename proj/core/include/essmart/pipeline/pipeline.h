#ifndef ESSMART_PIPELINE_PIPELINE_H_
#define ESSMART_PIPELINE_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "essmart/common/error.h"
#include "essmart/corpus/types.h"
#include "essmart/extractive/summarizers.h"
#include "essmart/ticketgen/thesaurus.h"
#include "essmart/ticketgen/title.h"
#include "essmart/triage/triage.h"

namespace essmart::pipeline {

inline constexpr int kBundleFormatVersion = 1;
inline constexpr const char* kPipelineVersion = "essmart-1.0.0";

struct TaskConfig {
  learners::Family family = learners::Family::kNaiveBayes;
  triage::FeatureRecipe recipe;
  std::optional<learners::ParamGrid> grid;  // family default when empty

  nlohmann::json to_json() const;
  static TaskConfig from_json(const nlohmann::json& j);
};

struct PipelineConfig {
  // Empty means: supervised when the corpus has gold summaries, else TextRank.
  std::optional<extractive::Method> summarizer;
  std::size_t budget = extractive::kDefaultBudget;
  TaskConfig escalation;
  TaskConfig priority;
  TaskConfig assignment;
  std::size_t folds = 5;
  double downsample_ratio = 1.0;
  ticketgen::TitleParams title;
  ticketgen::ThesaurusParams thesaurus;

  // Task defaults: RF for escalation, NB for priority and assignment, each
  // with the last row of its ablation table as recipe.
  static PipelineConfig defaults();
  nlohmann::json to_json() const;
  // Missing keys keep their defaults.
  static PipelineConfig from_json(const nlohmann::json& j);
};

struct TrainingCorpus {
  std::vector<corpus::UserRequest> requests;
  std::vector<corpus::SourceDocument> documents;
  std::vector<std::pair<std::string, std::string>> personnel;  // name, role
};

struct PipelineBundle {
  PipelineConfig config;
  extractive::SummarizerConfig summarizer;
  triage::TriagePredictors predictors;
  ticketgen::Thesaurus thesaurus;
  std::uint64_t seed = 0;
  std::string version = kPipelineVersion;
  // Set when no gold summaries were available and TextRank was used instead.
  bool summarizer_fallback = false;
  // Training stages that were skipped for lack of labels, with the reason.
  std::vector<std::pair<std::string, std::string>> skipped;
};

// Throws StageFailed naming the failing stage; the message keeps the
// underlying error. The assignment model is skipped when fewer than two
// assignees are labeled.
PipelineBundle train_all(const TrainingCorpus& corpus, const PipelineConfig& config,
                         std::uint64_t seed);

struct StepTiming {
  int step = 0;
  std::string name;
  double ms = 0.0;
};

struct StepError {
  int step = 0;
  std::string name;
  ErrorCode code = ErrorCode::kInvalidArgument;
  std::string message;
};

struct TriageSuggestion {
  std::string request_id;
  std::optional<extractive::ExtractiveSummary> summary;
  bool escalate = false;
  double escalation_confidence = 0.0;
  std::optional<corpus::DevelopmentTicket> ticket;  // present iff escalate
  double priority_confidence = 0.0;
  double assignment_confidence = 0.0;
  bool title_fallback = false;
  std::string pipeline_version;
  std::vector<StepTiming> timings;
  double total_ms = 0.0;
  std::optional<StepError> error;

  // Everything but the timings, which are the only nondeterministic part.
  nlohmann::json decision_json() const;
  nlohmann::json to_json() const;
};

inline constexpr const char* kStepNames[] = {"summarize", "escalation", "title", "content",
                                             "priority_assignment"};

// Runs the five steps in order; steps 3 to 5 only for escalated requests.
// A failing step ends the run with an error record instead of throwing.
TriageSuggestion process_request(const PipelineBundle& bundle,
                                 const corpus::UserRequest& request);

// Directory with manifest.json, config.json, summarizer.json, thesaurus.json
// and one file per trained task model. The manifest lists every file with
// its FNV-1a checksum.
void save_bundle(const PipelineBundle& bundle, const std::filesystem::path& dir);
// Throws VersionMismatch for another format version and CorruptArtifact for
// a missing, altered or unparsable file.
PipelineBundle load_bundle(const std::filesystem::path& dir);

}  // namespace essmart::pipeline

#endif  // ESSMART_PIPELINE_PIPELINE_H_
