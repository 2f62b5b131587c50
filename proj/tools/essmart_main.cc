#include <csignal>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <pthread.h>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "essmart/common/error.h"
#include "essmart/common/io.h"
#include "essmart/common/random.h"
#include "essmart/corpus/io.h"
#include "essmart/extractive/summarizers.h"
#include "essmart/learners/mrmr.h"
#include "essmart/pipeline/pipeline.h"
#include "essmart/rouge/rouge.h"
#include "essmart/service/http_server.h"
#include "essmart/service/service.h"
#include "essmart/synthetic.h"
#include "essmart/triage/triage.h"

namespace {

using namespace essmart;

struct Common {
  std::string format = "text";
  std::uint64_t seed = 42;
};

void add_common(CLI::App* cmd, Common& c, bool with_format = true) {
  if (with_format) {
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
  }
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
}

std::string header(const Common& c, const std::string& extra) {
  return "# seed=" + std::to_string(c.seed) + (extra.empty() ? "" : " " + extra) + "\n";
}

std::vector<corpus::UserRequest> load_requests(const std::string& path) {
  return corpus::ingest_requests(path);
}

pipeline::TrainingCorpus load_training(const std::string& requests, const std::string& documents,
                                       const std::string& personnel) {
  pipeline::TrainingCorpus c;
  c.requests = load_requests(requests);
  if (!documents.empty()) c.documents = corpus::ingest_documents(documents);
  if (!personnel.empty()) c.personnel = corpus::ingest_personnel(personnel);
  return c;
}

// Requests from a JSONL file, or one customer request built from a plain
// text file with one utterance per non-empty line.
std::vector<corpus::UserRequest> load_summarize_input(const std::string& path) {
  const std::string contents = read_file(path);
  const auto body = trim(contents);
  if (!body.empty() && body.front() == '{') return corpus::parse_requests(contents);
  corpus::UserRequest r;
  r.id = std::filesystem::path(path).stem().string();
  int index = 0;
  for (const auto& line : parse_list(contents)) {
    r.conversation.push_back({SpeakerRole::kCustomer, line, index++});
  }
  return {r};
}

std::vector<std::string> gold_tokens(const corpus::UserRequest& r) {
  std::vector<std::string> out;
  for (const auto& s : corpus::conversation_sentences(r)) {
    if (std::find(r.gold_summary->begin(), r.gold_summary->end(), s.origin) !=
        r.gold_summary->end()) {
      out.insert(out.end(), s.normalized_tokens.begin(), s.normalized_tokens.end());
    }
  }
  return out;
}

// Supervised summaries are produced out of fold so no request is summarized
// by a model that saw its gold summary.
std::map<std::string, extractive::ExtractiveSummary> cross_fitted_supervised(
    const std::vector<corpus::UserRequest>& requests, std::size_t folds, std::uint64_t seed,
    std::size_t budget) {
  std::vector<std::size_t> order(requests.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  std::map<std::string, extractive::ExtractiveSummary> out;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<corpus::UserRequest> train;
    std::vector<const corpus::UserRequest*> held;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (k % folds == f) {
        held.push_back(&requests[order[k]]);
      } else {
        train.push_back(requests[order[k]]);
      }
    }
    if (held.empty()) continue;
    extractive::SummarizerConfig config;
    config.method = extractive::Method::kSupervised;
    config.budget = budget;
    config.supervised = std::make_shared<const extractive::SentenceClassifierModel>(
        extractive::supervised_train(train, seed + f));
    for (const auto* r : held) out[r->id] = extractive::summarize(*r, config);
  }
  return out;
}

int emit_error(const Error& e) {
  nlohmann::json j{{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
  std::cerr << j.dump() << std::endl;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ESSMArT user-request triage engine"};
  app.require_subcommand(1);
  Common common;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Validate a request corpus");
  std::string ingest_file, ingest_docs, ingest_personnel;
  ingest->add_option("file", ingest_file, "Requests JSONL")->required()->check(CLI::ExistingFile);
  ingest->add_option("--documents", ingest_docs, "Source documents JSONL")->check(CLI::ExistingFile);
  ingest->add_option("--personnel", ingest_personnel, "Personnel CSV")->check(CLI::ExistingFile);
  ingest->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));

  // synth
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus");
  std::string synth_out, synth_docs, synth_personnel, synth_shape = "separable";
  synthetic::Params synth_params;
  bool synth_no_gold = false, synth_no_assignees = false;
  synth->add_option("--out", synth_out, "Requests JSONL to write")->required();
  synth->add_option("--documents-out", synth_docs, "Documents JSONL to write");
  synth->add_option("--personnel-out", synth_personnel, "Personnel CSV to write");
  synth->add_option("--requests", synth_params.requests)->capture_default_str();
  synth->add_option("--escalation-rate", synth_params.escalation_rate)->capture_default_str();
  synth->add_option("--shape", synth_shape)
      ->check(CLI::IsMember({"separable", "concentrated"}))
      ->capture_default_str();
  synth->add_flag("--no-gold", synth_no_gold, "Omit gold summaries");
  synth->add_flag("--no-assignees", synth_no_assignees, "Omit assignees");
  add_common(synth, common, false);

  // train
  auto* train = app.add_subcommand("train", "Train every model into a bundle");
  std::string train_corpus, train_docs, train_personnel, train_config, train_out;
  train->add_option("--corpus", train_corpus)->required()->check(CLI::ExistingFile);
  train->add_option("--documents", train_docs)->check(CLI::ExistingFile);
  train->add_option("--personnel", train_personnel)->check(CLI::ExistingFile);
  train->add_option("--config", train_config, "Pipeline config JSON")->check(CLI::ExistingFile);
  train->add_option("--out", train_out, "Bundle directory")->required();
  add_common(train, common);

  // summarize
  auto* summarize = app.add_subcommand("summarize", "Print extractive summaries");
  std::string sum_input, sum_method = "textrank", sum_bundle;
  std::size_t sum_budget = extractive::kDefaultBudget;
  summarize->add_option("input", sum_input, "Requests JSONL or plain text")
      ->required()
      ->check(CLI::ExistingFile);
  summarize->add_option("--method", sum_method)->capture_default_str();
  summarize->add_option("--budget", sum_budget)->capture_default_str()->check(CLI::PositiveNumber);
  summarize->add_option("--bundle", sum_bundle, "Bundle with a supervised summarizer")
      ->check(CLI::ExistingDirectory);
  add_common(summarize, common);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "ROUGE scores and method agreement");
  std::string eval_corpus, eval_variant = "rouge_su";
  std::vector<std::string> eval_methods, eval_summaries;
  std::size_t eval_budget = extractive::kDefaultBudget;
  evaluate->add_option("--corpus", eval_corpus, "Requests JSONL with gold summaries")
      ->check(CLI::ExistingFile);
  evaluate->add_option("--summaries", eval_summaries, "Precomputed summary JSONL files")
      ->check(CLI::ExistingFile);
  evaluate->add_option("--methods", eval_methods, "Methods to run (default: all)")->delimiter(',');
  evaluate->add_option("--variant", eval_variant)->capture_default_str();
  evaluate->add_option("--budget", eval_budget)->capture_default_str()->check(CLI::PositiveNumber);
  add_common(evaluate, common);

  // benchmark
  auto* benchmark = app.add_subcommand("benchmark", "Family x feature-recipe ablation grid");
  std::string bench_corpus, bench_task = "escalation";
  std::vector<std::string> bench_families{"nb", "svm", "rf"};
  std::size_t bench_folds = 5;
  benchmark->add_option("--corpus", bench_corpus)->required()->check(CLI::ExistingFile);
  benchmark->add_option("--task", bench_task)
      ->check(CLI::IsMember({"escalation", "priority", "assignment"}))
      ->capture_default_str();
  benchmark->add_option("--families", bench_families)->delimiter(',')->capture_default_str();
  benchmark->add_option("--folds", bench_folds)->capture_default_str()->check(CLI::Range(2, 100));
  add_common(benchmark, common);

  // mrmr
  auto* mrmr = app.add_subcommand("mrmr", "Rank request attributes by mRMR");
  std::string mrmr_corpus, mrmr_task = "escalation";
  std::size_t mrmr_k = 5, mrmr_bins = 4;
  mrmr->add_option("--corpus", mrmr_corpus)->required()->check(CLI::ExistingFile);
  mrmr->add_option("--task", mrmr_task)
      ->check(CLI::IsMember({"escalation", "priority", "assignment"}))
      ->capture_default_str();
  mrmr->add_option("--k", mrmr_k)->capture_default_str()->check(CLI::PositiveNumber);
  mrmr->add_option("--bins", mrmr_bins)->capture_default_str()->check(CLI::Range(2, 64));
  add_common(mrmr, common);

  // triage
  auto* triage_cmd = app.add_subcommand("triage", "Run the pipeline on requests");
  std::string triage_input, triage_bundle;
  triage_cmd->add_option("request", triage_input, "Request JSON or JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  triage_cmd->add_option("--bundle", triage_bundle)->required()->check(CLI::ExistingDirectory);
  triage_cmd->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));

  // serve
  auto* serve = app.add_subcommand("serve", "Start the HTTP triage service");
  std::string serve_config, serve_bundle, serve_corpus, serve_log, serve_host;
  int serve_port = -1;
  serve->add_option("--config", serve_config, "Service config JSON")->check(CLI::ExistingFile);
  serve->add_option("--bundle", serve_bundle)->check(CLI::ExistingDirectory);
  serve->add_option("--corpus", serve_corpus, "Requests to enqueue")->check(CLI::ExistingFile);
  serve->add_option("--event-log", serve_log);
  serve->add_option("--host", serve_host);
  serve->add_option("--port", serve_port)->check(CLI::Range(0, 65535));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*ingest) {
      const auto requests = load_requests(ingest_file);
      std::size_t escalated = 0, gold = 0, tickets = 0, assignees = 0;
      for (const auto& r : requests) {
        escalated += r.escalated == true;
        gold += r.gold_summary.has_value();
        tickets += r.ticket.has_value();
        assignees += triage::task_label(triage::Task::kAssignment, r).has_value();
      }
      nlohmann::json j{{"requests", requests.size()},
                       {"escalated", escalated},
                       {"gold_summaries", gold},
                       {"tickets", tickets},
                       {"assignee_labels", assignees}};
      if (!ingest_docs.empty()) j["documents"] = corpus::ingest_documents(ingest_docs).size();
      if (!ingest_personnel.empty()) {
        j["personnel"] = corpus::ingest_personnel(ingest_personnel).size();
      }
      if (common.format == "json") {
        std::cout << j.dump(2) << "\n";
      } else {
        for (const auto& [k, v] : j.items()) std::cout << k << ": " << v.dump() << "\n";
      }
      return 0;
    }

    if (*synth) {
      synth_params.shape = synth_shape == "separable" ? synthetic::Shape::kSeparable
                                                      : synthetic::Shape::kSummaryConcentrated;
      synth_params.gold_summaries = !synth_no_gold;
      synth_params.assignees = !synth_no_assignees;
      synth_params.seed = common.seed;
      const auto c = synthetic::generate(synth_params);
      corpus::write_requests(synth_out, c.requests);
      if (!synth_docs.empty()) {
        std::string out;
        for (const auto& d : c.documents) {
          out += nlohmann::json{{"id", d.id}, {"kind", std::string(corpus::to_string(d.kind))},
                                {"text", d.text}}
                     .dump() +
                 "\n";
        }
        write_file(synth_docs, out);
      }
      if (!synth_personnel.empty()) {
        std::string out = "name,role\n";
        for (const auto& [name, role] : c.personnel) out += name + "," + role + "\n";
        write_file(synth_personnel, out);
      }
      std::cerr << "wrote " << c.requests.size() << " requests to " << synth_out << "\n";
      return 0;
    }

    if (*train) {
      const auto corpus = load_training(train_corpus, train_docs, train_personnel);
      const auto config = train_config.empty()
                              ? pipeline::PipelineConfig::defaults()
                              : pipeline::PipelineConfig::from_json(
                                    nlohmann::json::parse(read_file(train_config)));
      const auto bundle = pipeline::train_all(corpus, config, common.seed);
      pipeline::save_bundle(bundle, train_out);
      nlohmann::json j{{"seed", common.seed},
                       {"bundle", train_out},
                       {"summarizer", std::string(extractive::to_string(bundle.summarizer.method))},
                       {"summarizer_fallback", bundle.summarizer_fallback},
                       {"thesaurus_entries", bundle.thesaurus.size()}};
      for (const auto& [name, model] : {std::pair{"escalation", &bundle.predictors.escalation},
                                        std::pair{"priority", &bundle.predictors.priority},
                                        std::pair{"assignment", &bundle.predictors.assignment}}) {
        if (*model) {
          j["models"][name] = {{"family", std::string(learners::to_string((*model)->family))},
                               {"recipe", (*model)->featurizer.recipe().label()},
                               {"parameters", learners::to_string((*model)->best_parameters)},
                               {"cv_f1", (*model)->report.f1}};
        }
      }
      for (const auto& [stage, reason] : bundle.skipped) j["skipped"][stage] = reason;
      if (common.format == "json") {
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << header(common, "bundle=" + train_out);
        for (const auto& [k, v] : j.items()) {
          if (k != "seed" && k != "bundle") std::cout << k << ": " << v.dump() << "\n";
        }
      }
      return 0;
    }

    if (*summarize) {
      extractive::SummarizerConfig config;
      config.method = extractive::method_from_string(sum_method);
      config.budget = sum_budget;
      if (config.method == extractive::Method::kLda) config.lda.seed = common.seed;
      if (config.method == extractive::Method::kSupervised) {
        if (sum_bundle.empty()) {
          throw Error(ErrorCode::kNotTrained, "the supervised method needs --bundle");
        }
        config.supervised = pipeline::load_bundle(sum_bundle).summarizer.supervised;
        if (!config.supervised) {
          throw Error(ErrorCode::kNotTrained, "the bundle has no supervised summarizer");
        }
      }
      const auto requests = load_summarize_input(sum_input);
      if (common.format == "text") std::cout << header(common, "method=" + sum_method);
      if (common.format == "csv") {
        std::cout << header(common, "method=" + sum_method) << "request_id,sentence_index,text\n";
      }
      for (const auto& r : requests) {
        const auto s = extractive::summarize(r, config);
        if (common.format == "json") {
          std::cout << s.to_json().dump() << "\n";
        } else if (common.format == "csv") {
          for (std::size_t i = 0; i < s.selected.size(); ++i) {
            std::string text = s.selected[i].text;
            std::string quoted = "\"";
            for (char ch : text) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            std::cout << r.id << "," << s.selected_indices[i] << "," << quoted << "\"\n";
          }
        } else {
          if (requests.size() > 1) std::cout << "## " << r.id << "\n";
          for (const auto& sentence : s.selected) std::cout << sentence.text << "\n";
        }
      }
      return 0;
    }

    if (*evaluate) {
      const auto variant = rouge::variant_from_string(eval_variant);
      std::vector<rouge::MethodSummaries> methods;
      std::map<std::string, std::vector<std::string>> golds;
      if (!eval_summaries.empty()) {
        for (const auto& path : eval_summaries) {
          rouge::MethodSummaries m;
          m.method = std::filesystem::path(path).stem().string();
          for (const auto& s : extractive::read_summaries_jsonl(path)) {
            m.by_request[s.request_id] = s.tokens();
          }
          methods.push_back(std::move(m));
        }
      }
      if (!eval_corpus.empty()) {
        std::vector<corpus::UserRequest> with_gold;
        for (auto& r : load_requests(eval_corpus)) {
          if (r.gold_summary) with_gold.push_back(std::move(r));
        }
        for (const auto& r : with_gold) golds[r.id] = gold_tokens(r);
        if (eval_summaries.empty()) {
          if (with_gold.empty()) {
            throw Error(ErrorCode::kEmptyInput, "the corpus has no gold summaries");
          }
          std::vector<extractive::Method> run;
          if (eval_methods.empty()) {
            run.assign(std::begin(extractive::kAllMethods), std::end(extractive::kAllMethods));
          } else {
            for (const auto& m : eval_methods) run.push_back(extractive::method_from_string(m));
          }
          for (auto method : run) {
            rouge::MethodSummaries m;
            m.method = std::string(extractive::to_string(method));
            if (method == extractive::Method::kSupervised) {
              for (auto& [id, s] : cross_fitted_supervised(with_gold, 5, common.seed, eval_budget)) {
                m.by_request[id] = s.tokens();
              }
            } else {
              extractive::SummarizerConfig config;
              config.method = method;
              config.budget = eval_budget;
              config.lda.seed = common.seed;
              for (const auto& r : with_gold) {
                m.by_request[r.id] = extractive::summarize(r, config).tokens();
              }
            }
            methods.push_back(std::move(m));
          }
        }
      }
      if (methods.empty()) {
        std::cerr << "evaluate needs --corpus or --summaries\n";
        return 2;
      }
      std::optional<std::vector<rouge::MethodScore>> scores;
      if (!golds.empty()) scores = rouge::score_against_gold(methods, golds, variant);
      std::optional<rouge::ComparisonMatrix> matrix;
      if (methods.size() >= 2) matrix = rouge::pairwise_matrix(methods, variant);
      const std::string info = "variant=" + rouge::to_string(variant);
      if (common.format == "json") {
        nlohmann::json j{{"seed", common.seed}, {"variant", rouge::to_string(variant)}};
        j["gold"] = scores ? rouge::gold_scores_json(*scores) : nlohmann::json(nullptr);
        j["matrix"] = matrix ? matrix->to_json() : nlohmann::json(nullptr);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << header(common, info);
        const bool csv = common.format == "csv";
        if (scores) std::cout << (csv ? rouge::gold_scores_csv(*scores) : rouge::gold_scores_text(*scores));
        if (scores && matrix) std::cout << "\n";
        if (matrix) std::cout << (csv ? matrix->to_csv() : matrix->to_text());
      }
      return 0;
    }

    if (*benchmark) {
      const auto requests = load_requests(bench_corpus);
      const auto task = triage::task_from_string(bench_task);
      std::vector<learners::Family> families;
      for (const auto& f : bench_families) families.push_back(learners::family_from_string(f));
      triage::TrainOptions options;
      options.folds = bench_folds;
      const auto recipes = triage::standard_recipes(task);
      const auto report =
          triage::ablation_benchmark(requests, task, families, recipes, common.seed, options);
      if (common.format == "json") {
        std::cout << report.to_json().dump(2) << "\n";
      } else if (common.format == "csv") {
        std::cout << header(common, "task=" + bench_task) << report.to_csv();
      } else {
        std::cout << report.to_text();
      }
      return 0;
    }

    if (*mrmr) {
      const auto requests = load_requests(mrmr_corpus);
      const auto dataset =
          triage::attribute_dataset(requests, triage::task_from_string(mrmr_task));
      const auto steps = learners::mrmr_select(dataset, mrmr_k, mrmr_bins);
      if (common.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < steps.size(); ++i) {
          rows.push_back({{"rank", i + 1},
                          {"feature", dataset.feature_names[steps[i].feature]},
                          {"relevance", steps[i].relevance},
                          {"redundancy", steps[i].redundancy},
                          {"score", steps[i].score}});
        }
        std::cout << nlohmann::json{{"seed", common.seed}, {"task", mrmr_task}, {"selected", rows}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << header(common, "task=" + mrmr_task);
        const bool csv = common.format == "csv";
        std::cout << (csv ? "rank,feature,relevance,redundancy,score\n"
                          : "rank  feature           relevance  redundancy  score\n");
        for (std::size_t i = 0; i < steps.size(); ++i) {
          char line[160];
          const auto& name = dataset.feature_names[steps[i].feature];
          if (csv) {
            std::snprintf(line, sizeof line, "%zu,%s,%.17g,%.17g,%.17g\n", i + 1, name.c_str(),
                          steps[i].relevance, steps[i].redundancy, steps[i].score);
          } else {
            std::snprintf(line, sizeof line, "%-5zu %-17s %-10.4f %-11.4f %.4f\n", i + 1,
                          name.c_str(), steps[i].relevance, steps[i].redundancy, steps[i].score);
          }
          std::cout << line;
        }
      }
      return 0;
    }

    if (*triage_cmd) {
      const auto bundle = pipeline::load_bundle(triage_bundle);
      const std::string contents = read_file(triage_input);
      std::vector<corpus::UserRequest> requests;
      const auto whole = nlohmann::json::parse(contents, nullptr, false);
      if (!whole.is_discarded() && whole.is_object()) {
        requests.push_back(corpus::request_from_json(whole));
      } else {
        requests = corpus::parse_requests(contents);
      }
      for (const auto& r : requests) {
        const auto s = pipeline::process_request(bundle, r);
        if (common.format == "json") {
          std::cout << s.to_json().dump() << "\n";
        } else {
          std::cout << "request: " << s.request_id << "\n";
          if (s.error) {
            std::cout << "error: step " << s.error->step << " (" << s.error->name
                      << "): " << to_string(s.error->code) << ": " << s.error->message << "\n";
          }
          if (s.summary) {
            std::cout << "summary:\n";
            for (const auto& sentence : s.summary->selected) std::cout << "  " << sentence.text << "\n";
          }
          char conf[64];
          std::snprintf(conf, sizeof conf, "%.2f", s.escalation_confidence);
          std::cout << "escalate: " << (s.escalate ? "yes" : "no") << " (confidence " << conf
                    << ")\n";
          if (s.ticket) {
            std::cout << "title: " << s.ticket->title << "\n"
                      << "content: " << s.ticket->content << "\n"
                      << "priority: " << corpus::to_string(s.ticket->priority) << "\n"
                      << "assignee: " << (s.ticket->assignee.empty() ? "-" : s.ticket->assignee)
                      << "\n";
          }
        }
      }
      return 0;
    }

    if (*serve) {
      service::ServiceConfig config;
      if (!serve_config.empty()) config = service::ServiceConfig::from_file(serve_config);
      config.apply_env();
      if (!serve_bundle.empty()) config.bundle = serve_bundle;
      if (!serve_corpus.empty()) config.corpus = serve_corpus;
      if (!serve_log.empty()) config.event_log = serve_log;
      if (!serve_host.empty()) config.host = serve_host;
      if (serve_port >= 0) config.port = serve_port;

      std::shared_ptr<const pipeline::PipelineBundle> bundle;
      if (config.bundle) {
        bundle = std::make_shared<const pipeline::PipelineBundle>(pipeline::load_bundle(*config.bundle));
      }
      std::vector<corpus::UserRequest> requests;
      if (config.corpus) requests = load_requests(config.corpus->string());
      service::ServiceOptions options;
      options.event_log = config.event_log;
      service::TriageService svc(std::move(requests), bundle, options);
      service::HttpServer server(svc);

      sigset_t signals;
      sigemptyset(&signals);
      sigaddset(&signals, SIGINT);
      sigaddset(&signals, SIGTERM);
      pthread_sigmask(SIG_BLOCK, &signals, nullptr);
      const int port = server.bind(config.host, config.port);
      std::cerr << "listening on " << config.host << ":" << port << std::endl;
      std::thread waiter([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
      });
      server.run();
      pthread_kill(waiter.native_handle(), SIGTERM);
      waiter.join();
      return 0;
    }
  } catch (const Error& e) {
    return emit_error(e);
  } catch (const nlohmann::json::exception& e) {
    return emit_error(Error(ErrorCode::kMalformedRecord, e.what()));
  } catch (const std::exception& e) {
    return emit_error(Error(ErrorCode::kIo, e.what()));
  }
  return 0;
}
