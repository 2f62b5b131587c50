#include "essmart/pipeline/pipeline.h"

#include <chrono>
#include <set>

#include "essmart/common/io.h"
#include "essmart/corpus/io.h"
#include "essmart/textproc/tokenizer.h"
#include "essmart/ticketgen/content.h"

namespace essmart::pipeline {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

nlohmann::json grid_to_json(const learners::ParamGrid& grid) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [name, values] : grid) {
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : values) {
      if (const auto* d = std::get_if<double>(&v)) {
        vs.push_back(*d);
      } else {
        vs.push_back(std::get<std::string>(v));
      }
    }
    out.push_back({{"name", name}, {"values", vs}});
  }
  return out;
}

learners::ParamGrid grid_from_json(const nlohmann::json& j) {
  learners::ParamGrid grid;
  for (const auto& axis : j) {
    std::vector<learners::ParamValue> values;
    for (const auto& v : axis.at("values")) {
      if (v.is_number()) {
        values.emplace_back(v.get<double>());
      } else {
        values.emplace_back(v.get<std::string>());
      }
    }
    grid.emplace_back(axis.at("name").get<std::string>(), std::move(values));
  }
  return grid;
}

template <typename F>
auto run_stage(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(ErrorCode::kStageFailed, "stage '" + stage + "' failed: " +
                                             std::string(to_string(e.code())) + ": " + e.what());
  }
}

std::size_t distinct_labels(triage::Task task, const std::vector<corpus::UserRequest>& requests) {
  std::set<std::string> labels;
  for (const auto& r : requests) {
    if (auto l = triage::task_label(task, r)) labels.insert(*l);
  }
  return labels.size();
}

}  // namespace

nlohmann::json TaskConfig::to_json() const {
  nlohmann::json j{{"family", std::string(learners::to_string(family))},
                   {"recipe", recipe.to_json()}};
  if (grid) j["grid"] = grid_to_json(*grid);
  return j;
}

TaskConfig TaskConfig::from_json(const nlohmann::json& j) {
  TaskConfig c;
  c.family = learners::family_from_string(j.at("family").get<std::string>());
  c.recipe = triage::FeatureRecipe::from_json(j.at("recipe"));
  if (j.contains("grid") && !j.at("grid").is_null()) c.grid = grid_from_json(j.at("grid"));
  return c;
}

PipelineConfig PipelineConfig::defaults() {
  PipelineConfig c;
  for (auto [task, slot] : {std::pair{triage::Task::kEscalation, &c.escalation},
                            std::pair{triage::Task::kPriority, &c.priority},
                            std::pair{triage::Task::kAssignment, &c.assignment}}) {
    slot->family = triage::default_family(task);
    slot->recipe = triage::default_recipe(task);
  }
  return c;
}

nlohmann::json PipelineConfig::to_json() const {
  nlohmann::json j{{"budget", budget},
                   {"escalation", escalation.to_json()},
                   {"priority", priority.to_json()},
                   {"assignment", assignment.to_json()},
                   {"folds", folds},
                   {"downsample_ratio", downsample_ratio},
                   {"title",
                    {{"max_words", title.max_words},
                     {"beam_width", title.beam_width},
                     {"seed", title.seed}}},
                   {"thesaurus",
                    {{"pmi_threshold", thesaurus.pmi_threshold}, {"window", thesaurus.window}}}};
  j["summarizer"] = summarizer ? nlohmann::json(std::string(extractive::to_string(*summarizer)))
                               : nlohmann::json(nullptr);
  return j;
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j) {
  PipelineConfig c = defaults();
  try {
    if (j.contains("summarizer") && !j.at("summarizer").is_null()) {
      c.summarizer = extractive::method_from_string(j.at("summarizer").get<std::string>());
    }
    c.budget = j.value("budget", c.budget);
    if (j.contains("escalation")) c.escalation = TaskConfig::from_json(j.at("escalation"));
    if (j.contains("priority")) c.priority = TaskConfig::from_json(j.at("priority"));
    if (j.contains("assignment")) c.assignment = TaskConfig::from_json(j.at("assignment"));
    c.folds = j.value("folds", c.folds);
    c.downsample_ratio = j.value("downsample_ratio", c.downsample_ratio);
    if (j.contains("title")) {
      const auto& t = j.at("title");
      c.title.max_words = t.value("max_words", c.title.max_words);
      c.title.beam_width = t.value("beam_width", c.title.beam_width);
      c.title.seed = t.value("seed", c.title.seed);
    }
    if (j.contains("thesaurus")) {
      const auto& t = j.at("thesaurus");
      c.thesaurus.pmi_threshold = t.value("pmi_threshold", c.thesaurus.pmi_threshold);
      c.thesaurus.window = t.value("window", c.thesaurus.window);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("pipeline config: ") + e.what());
  }
  if (c.budget == 0) throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
  if (c.title.max_words == 0) throw Error(ErrorCode::kInvalidArgument, "title max_words must be >= 1");
  return c;
}

PipelineBundle train_all(const TrainingCorpus& corpus, const PipelineConfig& config,
                         std::uint64_t seed) {
  PipelineBundle bundle;
  bundle.config = config;
  bundle.seed = seed;

  bundle.summarizer.budget = config.budget;
  bool has_gold = false;
  for (const auto& r : corpus.requests) has_gold = has_gold || r.gold_summary.has_value();
  bundle.summarizer.method = config.summarizer.value_or(
      has_gold ? extractive::Method::kSupervised : extractive::Method::kTextRank);
  bundle.summarizer_fallback = !config.summarizer && !has_gold;
  if (bundle.summarizer.method == extractive::Method::kSupervised) {
    bundle.summarizer.supervised = run_stage("summarizer", [&] {
      return std::make_shared<const extractive::SentenceClassifierModel>(
          extractive::supervised_train(corpus.requests, seed));
    });
  }

  triage::TrainOptions options;
  options.folds = config.folds;
  options.downsample_ratio = config.downsample_ratio;
  options.sources.summarizer = bundle.summarizer;
  options.sources.title = config.title;
  auto train = [&](triage::Task task, const TaskConfig& tc) {
    triage::TrainOptions o = options;
    o.grid = tc.grid;
    return run_stage(std::string(triage::to_string(task)), [&] {
      return triage::train_task(task, corpus.requests, tc.recipe, tc.family, seed, o);
    });
  };
  bundle.predictors.escalation = train(triage::Task::kEscalation, config.escalation);
  bundle.predictors.priority = train(triage::Task::kPriority, config.priority);
  if (distinct_labels(triage::Task::kAssignment, corpus.requests) < 2) {
    bundle.skipped.emplace_back("assignment", "fewer than two assignees are labeled");
  } else {
    bundle.predictors.assignment = train(triage::Task::kAssignment, config.assignment);
  }

  bundle.thesaurus = run_stage("thesaurus", [&] {
    if (!corpus.documents.empty()) {
      return ticketgen::build_thesaurus(corpus.documents, corpus.personnel, config.thesaurus);
    }
    ticketgen::Thesaurus t;
    for (const auto& [name, role] : corpus.personnel) t.add_person(name, role, "personnel");
    return t;
  });
  if (corpus.documents.empty()) {
    bundle.skipped.emplace_back("thesaurus_documents", "no source documents; personnel only");
  }
  return bundle;
}

nlohmann::json TriageSuggestion::decision_json() const {
  nlohmann::json j{{"request_id", request_id},
                   {"escalate", escalate},
                   {"escalation_confidence", escalation_confidence},
                   {"priority_confidence", priority_confidence},
                   {"assignment_confidence", assignment_confidence},
                   {"title_fallback", title_fallback},
                   {"pipeline_version", pipeline_version}};
  j["summary"] = summary ? summary->to_json() : nlohmann::json(nullptr);
  j["ticket"] = ticket ? corpus::to_json(*ticket) : nlohmann::json(nullptr);
  if (error) {
    j["error"] = {{"step", error->step},
                  {"name", error->name},
                  {"code", std::string(to_string(error->code))},
                  {"message", error->message}};
  } else {
    j["error"] = nullptr;
  }
  return j;
}

nlohmann::json TriageSuggestion::to_json() const {
  nlohmann::json j = decision_json();
  nlohmann::json t = nlohmann::json::array();
  for (const auto& s : timings) t.push_back({{"step", s.step}, {"name", s.name}, {"ms", s.ms}});
  j["timings"] = t;
  j["total_ms"] = total_ms;
  return j;
}

TriageSuggestion process_request(const PipelineBundle& bundle,
                                 const corpus::UserRequest& request) {
  const auto start = Clock::now();
  TriageSuggestion s;
  s.request_id = request.id;
  s.pipeline_version = bundle.version;
  s.timings.reserve(std::size(kStepNames));
  int step = 0;
  // Steps are timed back to back from a shared boundary, so bookkeeping
  // between steps is charged to the next step instead of going unrecorded.
  auto boundary = start;
  auto timed = [&](int number, auto&& body) {
    step = number;
    body();
    const auto now = Clock::now();
    s.timings.push_back(
        {number, kStepNames[number - 1],
         std::chrono::duration<double, std::milli>(now - boundary).count()});
    boundary = now;
  };

  try {
    timed(1, [&] { s.summary = extractive::summarize(request, bundle.summarizer); });

    std::optional<ticketgen::TitleResult> title;
    triage::SourceTexts sources;
    timed(2, [&] {
      if (bundle.predictors.needs(triage::TextSource::kExtractiveSummary)) {
        sources.extractive = text::word_tokens(s.summary->text());
      }
      if (bundle.predictors.needs(triage::TextSource::kAbstractiveSummary)) {
        title = ticketgen::generate_title(s.summary->selected, bundle.config.title);
        sources.abstractive = text::word_tokens(title->title);
      }
      const auto verdict = triage::predict_escalation(bundle.predictors, request, sources);
      s.escalate = verdict.escalate;
      s.escalation_confidence = verdict.confidence;
    });

    if (s.escalate) {
      corpus::DevelopmentTicket ticket;
      ticket.request_id = request.id;
      ticket.source = corpus::TicketSource::kGenerated;
      timed(3, [&] {
        if (!title) title = ticketgen::generate_title(s.summary->selected, bundle.config.title);
        ticket.title = title->title;
        s.title_fallback = title->fallback;
      });
      timed(4, [&] {
        ticket.content =
            ticketgen::transform_content(s.summary->selected, request, bundle.thesaurus);
      });
      timed(5, [&] {
        if (!bundle.predictors.priority) {
          throw Error(ErrorCode::kNotTrained, "no priority model has been trained");
        }
        const auto p = bundle.predictors.priority->predict(request, sources);
        ticket.priority = corpus::priority_from_string(p.label);
        s.priority_confidence = p.confidence;
        if (bundle.predictors.assignment) {
          const auto a = bundle.predictors.assignment->predict(request, sources);
          ticket.assignee = a.label;
          s.assignment_confidence = a.confidence;
        }
      });
      s.ticket = std::move(ticket);
    }
  } catch (const Error& e) {
    s.error = StepError{step, kStepNames[step - 1], e.code(), e.what()};
  } catch (const std::exception& e) {
    s.error = StepError{step, kStepNames[step - 1], ErrorCode::kStageFailed, e.what()};
  }
  if (s.error) {
    // An incomplete run never carries a ticket, so it is not reported as
    // escalated either; the verdict confidence is kept.
    s.escalate = false;
    s.ticket.reset();
  }
  s.total_ms = elapsed_ms(start);
  return s;
}

void save_bundle(const PipelineBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::map<std::string, std::string> files;
  files["config.json"] = bundle.config.to_json().dump(2);
  nlohmann::json summarizer{{"config", bundle.summarizer.to_json()},
                            {"fallback", bundle.summarizer_fallback}};
  summarizer["supervised"] =
      bundle.summarizer.supervised ? bundle.summarizer.supervised->to_json() : nlohmann::json(nullptr);
  files["summarizer.json"] = summarizer.dump();
  files["thesaurus.json"] = bundle.thesaurus.to_json().dump();
  for (const auto& [name, model] : {std::pair{"escalation", &bundle.predictors.escalation},
                                    std::pair{"priority", &bundle.predictors.priority},
                                    std::pair{"assignment", &bundle.predictors.assignment}}) {
    if (*model) files[std::string(name) + ".json"] = (*model)->to_json().dump();
  }

  nlohmann::json manifest{{"format_version", kBundleFormatVersion},
                          {"pipeline_version", bundle.version},
                          {"seed", bundle.seed},
                          {"summarizer_fallback", bundle.summarizer_fallback}};
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& [stage, reason] : bundle.skipped) {
    skipped.push_back({{"stage", stage}, {"reason", reason}});
  }
  manifest["skipped"] = skipped;
  for (const auto& [name, contents] : files) {
    write_file(dir / name, contents);
    manifest["files"][name] = hex64(fnv1a64(contents));
  }
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

PipelineBundle load_bundle(const std::filesystem::path& dir) {
  auto corrupt = [](const std::string& what) {
    return Error(ErrorCode::kCorruptArtifact, "bundle: " + what);
  };
  std::string manifest_text;
  try {
    manifest_text = read_file(dir / "manifest.json");
  } catch (const Error& e) {
    throw corrupt(std::string("cannot read manifest.json: ") + e.what());
  }
  const auto manifest = nlohmann::json::parse(manifest_text, nullptr, false);
  if (manifest.is_discarded() || !manifest.is_object()) throw corrupt("manifest.json is not JSON");
  if (!manifest.contains("format_version") || !manifest["format_version"].is_number_integer()) {
    throw corrupt("manifest.json has no format_version");
  }
  if (manifest["format_version"].get<int>() != kBundleFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "bundle format " + manifest["format_version"].dump() + ", expected " +
                    std::to_string(kBundleFormatVersion));
  }

  try {
    const auto& listed = manifest.at("files");
    for (const char* required : {"config.json", "summarizer.json", "thesaurus.json",
                                 "escalation.json", "priority.json"}) {
      if (!listed.contains(required)) throw corrupt(std::string("manifest lacks ") + required);
    }
    std::map<std::string, nlohmann::json> docs;
    for (const auto& [name, checksum] : listed.items()) {
      if (name.find('/') != std::string::npos || name.find("..") != std::string::npos) {
        throw corrupt("bad file name " + name);
      }
      std::string contents;
      try {
        contents = read_file(dir / name);
      } catch (const Error&) {
        throw corrupt("missing " + name);
      }
      if (hex64(fnv1a64(contents)) != checksum.get<std::string>()) {
        throw corrupt("checksum mismatch for " + name);
      }
      docs[name] = nlohmann::json::parse(contents);
    }

    PipelineBundle b;
    b.version = manifest.at("pipeline_version").get<std::string>();
    b.seed = manifest.at("seed").get<std::uint64_t>();
    b.summarizer_fallback = manifest.at("summarizer_fallback").get<bool>();
    for (const auto& s : manifest.at("skipped")) {
      b.skipped.emplace_back(s.at("stage").get<std::string>(), s.at("reason").get<std::string>());
    }
    b.config = PipelineConfig::from_json(docs.at("config.json"));
    const auto& summarizer = docs.at("summarizer.json");
    b.summarizer = extractive::SummarizerConfig::from_json(summarizer.at("config"));
    if (!summarizer.at("supervised").is_null()) {
      b.summarizer.supervised = std::make_shared<const extractive::SentenceClassifierModel>(
          extractive::SentenceClassifierModel::from_json(summarizer.at("supervised")));
    }
    b.thesaurus = ticketgen::Thesaurus::from_json(docs.at("thesaurus.json"));
    b.predictors.escalation = triage::TaskModel::from_json(docs.at("escalation.json"));
    b.predictors.priority = triage::TaskModel::from_json(docs.at("priority.json"));
    if (docs.contains("assignment.json")) {
      b.predictors.assignment = triage::TaskModel::from_json(docs.at("assignment.json"));
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw corrupt(e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kCorruptArtifact || e.code() == ErrorCode::kVersionMismatch) throw;
    throw corrupt(e.what());
  }
}

}  // namespace essmart::pipeline
