// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "essmart/common/random.h"
#include "essmart/corpus/types.h"
#include "essmart/extractive/summarizers.h"
#include "essmart/learners/classifier.h"
#include "essmart/learners/grid_search.h"
#include "essmart/learners/mrmr.h"
#include "essmart/pipeline/pipeline.h"
#include "essmart/rouge/rouge.h"
#include "essmart/service/service.h"
#include "essmart/synthetic.h"
#include "essmart/textproc/tokenizer.h"
#include "essmart/ticketgen/content.h"
#include "essmart/ticketgen/thesaurus.h"
#include "essmart/ticketgen/title.h"
#include "essmart/triage/triage.h"
#include "test_support.h"

namespace {

using namespace essmart;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

// Collects the first failure of a criterion; later checks still run but only
// the first message is reported.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  const std::string& failure() const { return failure_; }

 private:
  std::string failure_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

void rouge_criterion(Check& c) {
  const auto start = Clock::now();
  const auto s = rouge::rouge_n(text::lower_tokens("the cat sat"),
                                text::lower_tokens("the cat sat on the mat"), 2);
  c.expect(s.p_common == 2 && s.q_reference == 5, "hand bigram counts");
  c.expect(s.precision == 1.0 && s.recall == 0.4, "hand precision/recall");
  c.expect(std::abs(s.f1 - 4.0 / 7.0) < 1e-9 && std::abs(s.f1 - 0.5714) < 5e-5,
           "hand F1 " + fmt(s.f1));
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const auto a = testing::random_tokens(rng, 15, 5);
    const auto b = testing::random_tokens(rng, 15, 5);
    for (const auto& v : {rouge::Variant::rouge_n(1), rouge::Variant::rouge_n(2),
                          rouge::Variant::rouge_su()}) {
      const auto ab = rouge::score(a, b, v), ba = rouge::score(b, a, v);
      c.expect(ab.precision == ba.recall && ab.recall == ba.precision, "swap symmetry");
      for (double x : {ab.precision, ab.recall, ab.f1}) c.expect(x >= 0 && x <= 1, "bounds");
      c.expect(ab.f1 <= std::max(ab.precision, ab.recall) + 1e-15, "F1 above max(P, R)");
    }
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 5.0, "took " + fmt(elapsed) + " s");
}

void content_criterion(Check& c) {
  auto r = testing::simple_request(
      "R1", "John emailed me and wanted a copy of a message note faxed to him.");
  r.requester = "Sarah Connor";
  r.brand_name = "EMR";
  ticketgen::Thesaurus t;
  t.add_person("John", "doctor", "personnel");
  t.add_person("Sarah Connor", "doctor", "personnel");
  const auto out = ticketgen::transform_content(corpus::conversation_sentences(r), r, t);
  c.expect(out ==
               "In the EMR system; a doctor emailed a doctor and wanted a copy of a message "
               "note faxed to him.",
           "got: " + out);
}

// Fixed point of r = (1-d)/n + d * M^T r, solved directly.
std::vector<double> pagerank_solve(const std::vector<std::vector<double>>& sim, double d) {
  const std::size_t n = sim.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = 1.0;
    a[i][n] = (1.0 - d) / double(n);
  }
  for (std::size_t j = 0; j < n; ++j) {
    double out = 0.0;
    for (double w : sim[j]) out += w;
    for (std::size_t i = 0; i < n; ++i) a[i][j] -= d * (out > 0 ? sim[j][i] / out : 1.0 / double(n));
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t k = col; k <= n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

void summarizer_criterion(Check& c) {
  synthetic::Params p;
  p.requests = 120;
  auto model = std::make_shared<extractive::SentenceClassifierModel>(
      extractive::supervised_train(synthetic::generate(p).requests, 42));
  const auto corpus = testing::fuzz_corpus(500, 99);
  for (auto method : extractive::kAllMethods) {
    const std::string name(extractive::to_string(method));
    extractive::SummarizerConfig config;
    config.method = method;
    config.lda.iterations = 50;
    config.supervised = model;
    for (const auto& req : corpus) {
      const auto sentences = corpus::conversation_sentences(req);
      const auto a = extractive::summarize(req, config);
      c.expect(a.to_json() == extractive::summarize(req, config).to_json(), name + " determinism");
      c.expect(a.selected.size() == std::min(extractive::kDefaultBudget, sentences.size()),
               name + " budget on " + req.id);
      c.expect(std::is_sorted(a.selected_indices.begin(), a.selected_indices.end()) &&
                   std::adjacent_find(a.selected_indices.begin(), a.selected_indices.end()) ==
                       a.selected_indices.end(),
               name + " document order");
      for (std::size_t k = 0; k < a.selected.size(); ++k) {
        const auto& src = sentences[a.selected_indices[k]];
        c.expect(a.selected[k].text == src.text &&
                     req.conversation[src.origin.utterance].text.find(src.text) != std::string::npos,
                 name + " verbatim");
      }
    }
  }
  Rng rng(5);
  const extractive::TextRankParams tight{0.85, 1e-13, 10000};
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const auto s = corpus::conversation_sentences(testing::fuzz_request(rng, "T"));
    if (s.size() > 6) continue;
    const auto r = extractive::textrank_ranks(s, tight);
    const auto oracle = pagerank_solve(r.similarity, tight.damping);
    double l1 = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) l1 += std::abs(r.ranks[k] - oracle[k]);
    c.expect(l1 < 1e-6, "TextRank differs from linear solve by " + fmt(l1));
    ++checked;
  }
  c.expect(checked > 50, "too few TextRank oracle cases");
}

learners::Dataset mixed_data(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cls = rng.uniform_index(3);
    rows.push_back({double(cls) + rng.uniform01(), double(rng.uniform_index(4)),
                    cls == 2 ? 1.0 : 0.0});
    labels.push_back("c" + std::to_string(cls));
  }
  return learners::Dataset::make(rows, labels);
}

void classifier_criterion(Check& c) {
  const auto start = Clock::now();
  synthetic::Params p;
  p.requests = 200;
  const auto requests = synthetic::generate(p).requests;
  triage::FeatureRecipe recipe;
  recipe.text_sources = {triage::TextSource::kConversation};
  recipe.normalization = text::Normalization::kLemmatize;
  for (auto f : {learners::Family::kRandomForest, learners::Family::kNaiveBayes}) {
    const auto m = triage::train_escalation(requests, recipe, f, 42);
    c.expect(m.report.f1 >= 0.95,
             std::string(learners::to_string(f)) + " cross-validated F1 " + fmt(m.report.f1));
  }
  const auto d = mixed_data(6, 60);
  const learners::ParamGrid grid{{"trees", {5.0, 20.0}}, {"max_depth", {1.0, 0.0}}};
  const auto result = learners::grid_search_cv(learners::Family::kRandomForest, d, grid, 5, 7);
  const auto folds = learners::stratified_folds(d.labels, 5, 7);
  const auto points = learners::expand_grid(grid);
  std::size_t best = 0;
  std::vector<double> scores;
  for (const auto& params : points) {
    scores.push_back(
        learners::cross_validated_f1(learners::Family::kRandomForest, d, params, folds, 7));
    if (scores.back() > scores[best]) best = scores.size() - 1;
  }
  c.expect(points.size() == 4, "grid size");
  c.expect(result.mean_f1 == scores, "grid scores differ from exhaustive re-evaluation");
  c.expect(result.best_parameters == points[best], "grid winner differs from exhaustive best");
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 60.0, "took " + fmt(elapsed) + " s");
}

void ablation_criterion(Check& c) {
  synthetic::Params p;
  p.shape = synthetic::Shape::kSummaryConcentrated;
  p.requests = 200;
  p.escalation_rate = 0.5;
  const auto requests = synthetic::generate(p).requests;
  const auto recipes = triage::standard_recipes(triage::Task::kEscalation);
  const std::vector<triage::FeatureRecipe> pair{recipes.front(), recipes.back()};
  const std::vector<learners::Family> rf{learners::Family::kRandomForest};
  const auto report =
      triage::ablation_benchmark(requests, triage::Task::kEscalation, rf, pair, 42);
  c.expect(report.rows.size() == 2, "row count");
  c.expect(report.rows[1].f1 >= report.rows[0].f1,
           "summary recipe " + fmt(report.rows[1].f1) + " < conversation-only " +
               fmt(report.rows[0].f1));
}

double mutual_information(const std::vector<int>& x, const std::vector<int>& y) {
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> px, py;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    joint[{x[i], y[i]}] += 1 / n;
    px[x[i]] += 1 / n;
    py[y[i]] += 1 / n;
  }
  double mi = 0.0;
  for (const auto& [k, p] : joint) mi += p * std::log(p / (px[k.first] * py[k.second]));
  return mi;
}

std::vector<std::size_t> exhaustive_mid(const std::vector<std::vector<int>>& cols,
                                        const std::vector<int>& y) {
  std::vector<std::size_t> chosen;
  while (chosen.size() < cols.size()) {
    std::size_t best = cols.size();
    double best_score = 0.0;
    for (std::size_t f = 0; f < cols.size(); ++f) {
      if (std::find(chosen.begin(), chosen.end(), f) != chosen.end()) continue;
      double score = mutual_information(cols[f], y);
      if (!chosen.empty()) {
        double red = 0.0;
        for (auto s : chosen) red += mutual_information(cols[f], cols[s]);
        score -= red / double(chosen.size());
      }
      if (best == cols.size() || score > best_score + 1e-12) {
        best = f;
        best_score = score;
      }
    }
    chosen.push_back(best);
  }
  return chosen;
}

void mrmr_criterion(Check& c) {
  const std::vector<int> y{0, 0, 0, 0, 1, 1, 1, 1};
  const std::vector<std::vector<int>> cols{
      y, y, {0, 0, 0, 1, 1, 1, 1, 0}, {0, 1, 0, 1, 0, 1, 0, 1}, {0, 0, 1, 1, 0, 0, 1, 1}};
  std::vector<std::vector<double>> rows(y.size());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (const auto& col : cols) rows[i].push_back(col[i]);
    labels.push_back(std::to_string(y[i]));
  }
  const auto steps = learners::mrmr_select(learners::Dataset::make(rows, labels), cols.size());
  const auto oracle = exhaustive_mid(cols, y);
  c.expect(steps.size() == oracle.size(), "step count");
  for (std::size_t i = 0; i < std::min(steps.size(), oracle.size()); ++i) {
    c.expect(steps[i].feature == oracle[i], "step " + std::to_string(i) + " differs from oracle");
  }
  c.expect(!steps.empty() && std::abs(steps[0].relevance - std::log(2.0)) < 1e-12,
           "first relevance");
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> r;
    std::vector<std::string> l;
    for (int i = 0; i < 40; ++i) {
      std::vector<double> row;
      for (int f = 0; f < 6; ++f) row.push_back(double(rng.uniform_index(5)));
      l.push_back(row[0] + row[1] > 4 ? "y" : "n");
      r.push_back(row);
    }
    const auto d = learners::Dataset::make(r, l);
    const auto all = learners::mrmr_select(d, 6);
    for (std::size_t k = 1; k <= 6; ++k) {
      const auto part = learners::mrmr_select(d, k);
      bool prefix = part.size() == k;
      for (std::size_t i = 0; prefix && i < k; ++i) prefix = part[i].feature == all[i].feature;
      c.expect(prefix, "selection for k=" + std::to_string(k) + " is not a prefix");
    }
  }
}

void title_criterion(Check& c) {
  for (const auto& r : testing::fuzz_corpus(1000, 4242)) {
    const auto title = ticketgen::generate_title(corpus::conversation_sentences(r));
    c.expect(text::word_tokens(title.title).size() <= corpus::kMaxTitleWords,
             "title over cap for " + r.id);
    c.expect(!title.title.empty(), "empty title for " + r.id);
  }
  Rng rng(17);
  int compared = 0;
  for (int i = 0; i < 400 && compared < 100; ++i) {
    auto s = corpus::conversation_sentences(testing::fuzz_request(rng, "T"));
    s.resize(std::min<std::size_t>(s.size(), 1 + rng.uniform_index(3)));
    const ticketgen::TitleGraph graph(s);
    const auto paths = ticketgen::enumerate_title_paths(graph, corpus::kMaxTitleWords);
    if (paths.size() > 50) continue;
    std::optional<ticketgen::TitlePath> best;
    for (const auto& p : paths) {
      if (ticketgen::valid_title_path(graph, p) && (!best || ticketgen::better_path(p, *best))) {
        best = p;
      }
    }
    const auto beam = ticketgen::beam_search_title(graph, corpus::kMaxTitleWords,
                                                   std::max<std::size_t>(paths.size(), 1));
    c.expect(best ? beam.nodes == best->nodes : beam.nodes.empty(),
             "beam differs from exhaustive search");
    ++compared;
  }
  c.expect(compared >= 30, "too few small title graphs");
}

void pipeline_criterion(Check& c) {
  synthetic::Params p;
  p.requests = 150;
  const auto corpus = synthetic::generate(p);
  const auto bundle = pipeline::train_all(corpus, pipeline::PipelineConfig::defaults(), 42);
  testing::TempDir dir;
  pipeline::save_bundle(bundle, dir.path());
  const auto loaded = pipeline::load_bundle(dir.path());
  for (std::size_t i = 0; i < 20; ++i) {
    const auto& r = corpus.requests[i];
    c.expect(pipeline::process_request(bundle, r).decision_json().dump() ==
                 pipeline::process_request(loaded, r).decision_json().dump(),
             "reloaded bundle differs on " + r.id);
  }
  auto fuzz = testing::fuzz_corpus(300, 12);
  Rng rng(12);
  std::size_t tickets = 0;
  for (auto& r : fuzz) {
    if (rng.uniform_index(3) == 0) r.conversation[0].text += " The app has a crash in the inbox.";
    const auto s = pipeline::process_request(bundle, r);
    c.expect(s.ticket.has_value() == s.escalate, "ticket without escalation on " + r.id);
    tickets += s.ticket.has_value();
  }
  c.expect(tickets > 0, "no request was escalated");
}

std::size_t levenshtein(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  std::vector<std::vector<std::size_t>> d(x.size() + 1, std::vector<std::size_t>(y.size() + 1));
  for (std::size_t i = 0; i <= x.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= y.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1)});
    }
  }
  return d[x.size()][y.size()];
}

void service_criterion(Check& c) {
  Rng rng(500);
  const char* words[] = {"the", "app", "crash", "login", "page", "slow", "inbox", "fax"};
  for (int i = 0; i < 500; ++i) {
    std::vector<std::string> x, y;
    for (std::size_t n = rng.uniform_index(31); n > 0; --n) x.push_back(words[rng.uniform_index(8)]);
    for (std::size_t n = rng.uniform_index(31); n > 0; --n) y.push_back(words[rng.uniform_index(8)]);
    std::string a, b;
    for (const auto& w : x) a += w + " ";
    for (const auto& w : y) b += w + " ";
    c.expect(service::word_diff(a, b) == levenshtein(x, y), "word diff differs from oracle");
  }
  c.expect(service::word_diff("a b c", "a x c") == 1, "single substitution");

  auto now = std::make_shared<service::Millis>(0);
  service::ServiceOptions opts;
  opts.clock = [now] { return *now; };
  std::vector<corpus::UserRequest> requests;
  for (const char* id : {"R1", "R2", "R3", "R4"}) {
    requests.push_back(testing::simple_request(id, "The app crashed."));
  }
  service::TriageService svc(requests, nullptr, opts);
  auto session = [&](const std::string& role, const std::string& id, const std::string& mode,
                     service::Millis start, service::Millis end, const json& decisions) {
    *now = start;
    const auto opened = svc.open_session(
        {{"user", role}, {"role", role}, {"request_id", id}, {"mode", mode}}, "");
    c.expect(opened.status == 201, "open session " + opened.body.dump());
    *now = end;
    const auto sid = opened.body.value("session_id", "");
    c.expect(svc.submit(sid, {{"decisions", decisions}}).status == 200, "submit " + sid);
  };
  const json escalate{{"escalate", true}};
  session("crm_expert", "R1", "manual", 0, 100'000, escalate);
  session("crm_expert", "R2", "manual", 100'000, 240'000, escalate);
  session("crm_expert", "R3", "assisted", 240'000, 290'000, escalate);
  session("crm_expert", "R4", "assisted", 290'000, 360'000, escalate);
  const json ticket{{"title", "App crash"}, {"content", "The app crashed."}, {"priority", "Major"}};
  session("project_manager", "R1", "assisted", 360'000, 400'000, ticket);
  session("project_manager", "R2", "assisted", 400'000, 480'000, ticket);
  const auto t = svc.timing_analytics();
  c.expect(t.escalation_time.count("manual") && t.escalation_time.at("manual").mean_ms == 120'000 &&
               t.escalation_time.at("manual").median_ms == 120'000,
           "manual escalation time");
  c.expect(t.escalation_time.count("assisted") &&
               t.escalation_time.at("assisted").mean_ms == 60'000 &&
               t.escalation_time.at("assisted").median_ms == 60'000,
           "assisted escalation time");
  c.expect(t.escalation_saving_ms && *t.escalation_saving_ms == 60'000, "time saving");
  c.expect(t.escalation_share &&
               std::abs(*t.escalation_share - (100.0 / 400.0 + 240.0 / 480.0) / 2) < 1e-12,
           "escalation share");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"rouge_scores_and_symmetry", rouge_criterion},
      {"ticket_content_transformation", content_criterion},
      {"extractive_summarizer_contracts", summarizer_criterion},
      {"classifier_sanity_and_grid_search", classifier_criterion},
      {"feature_ablation_trend", ablation_criterion},
      {"mrmr_ranking", mrmr_criterion},
      {"ticket_title_generation", title_criterion},
      {"pipeline_persistence_and_ticket_rule", pipeline_criterion},
      {"service_timing_and_edit_distance", service_criterion},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check check;
    try {
      run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    if (check.failure().empty()) {
      std::cout << "PASS " << name << "\n";
    } else {
      std::cout << "FAIL " << name << ": " << check.failure() << "\n";
      ++failed;
    }
    std::cout.flush();
  }
  return failed == 0 ? 0 : 1;
}
