#include <fstream>

#include <gtest/gtest.h>

#include "essmart/common/error.h"
#include "essmart/common/io.h"
#include "essmart/pipeline/pipeline.h"
#include "essmart/synthetic.h"
#include "essmart/textproc/tokenizer.h"
#include "test_support.h"

namespace essmart::pipeline {
namespace {

TrainingCorpus training_corpus(bool gold = true, bool assignees = true) {
  synthetic::Params p;
  p.requests = 150;
  p.gold_summaries = gold;
  p.assignees = assignees;
  return synthetic::generate(p);
}

const PipelineBundle& shared_bundle() {
  static const PipelineBundle bundle =
      train_all(training_corpus(), PipelineConfig::defaults(), 42);
  return bundle;
}

TEST(Config, DefaultsFollowTheRecommendedSetup) {
  const auto c = PipelineConfig::defaults();
  EXPECT_EQ(c.escalation.family, learners::Family::kRandomForest);
  EXPECT_EQ(c.priority.family, learners::Family::kNaiveBayes);
  EXPECT_EQ(c.assignment.family, learners::Family::kNaiveBayes);
  EXPECT_EQ(c.escalation.recipe, triage::default_recipe(triage::Task::kEscalation));
  EXPECT_EQ(c.budget, 5u);
  EXPECT_EQ(c.title.max_words, 11u);
  EXPECT_FALSE(c.summarizer.has_value());
}

TEST(Config, MissingKeysKeepDefaults) {
  const auto c = PipelineConfig::from_json(nlohmann::json{{"budget", 3}});
  EXPECT_EQ(c.budget, 3u);
  EXPECT_EQ(c.folds, 5u);
  EXPECT_EQ(c.priority.recipe, triage::default_recipe(triage::Task::kPriority));
  EXPECT_EQ(PipelineConfig::from_json(c.to_json()).to_json(), c.to_json());
}

TEST(TrainAll, SupervisedSummarizerWhenGoldExists) {
  const auto& b = shared_bundle();
  EXPECT_FALSE(b.summarizer_fallback);
  EXPECT_EQ(b.summarizer.method, extractive::Method::kSupervised);
  EXPECT_TRUE(b.predictors.escalation && b.predictors.priority && b.predictors.assignment);
}

TEST(TrainAll, FallsBackToTextRankWithoutGold) {
  const auto b = train_all(training_corpus(false), PipelineConfig::defaults(), 42);
  EXPECT_TRUE(b.summarizer_fallback);
  EXPECT_EQ(b.summarizer.method, extractive::Method::kTextRank);
}

TEST(TrainAll, SkipsAssignmentWithoutAssignees) {
  const auto b = train_all(training_corpus(true, false), PipelineConfig::defaults(), 42);
  EXPECT_FALSE(b.predictors.assignment);
  bool recorded = false;
  for (const auto& [stage, reason] : b.skipped) recorded |= stage == "assignment";
  EXPECT_TRUE(recorded);
}

TEST(ProcessRequest, CrashRequestGetsATicket) {
  auto r = essmart::testing::simple_request(
      "X", "Hello support team. The app has a crash every time I open the inbox. "
           "We lost patient data when the crash happened.");
  const auto s = process_request(shared_bundle(), r);
  ASSERT_FALSE(s.error) << s.error->message;
  EXPECT_TRUE(s.escalate);
  ASSERT_TRUE(s.ticket);
  EXPECT_LE(text::word_tokens(s.ticket->title).size(), corpus::kMaxTitleWords);
  EXPECT_EQ(s.ticket->content.rfind("In the EMR system; ", 0), 0u) << s.ticket->content;
  EXPECT_EQ(s.ticket->source, corpus::TicketSource::kGenerated);
  EXPECT_EQ(s.timings.size(), 5u);
}

TEST(ProcessRequest, HeldOutRoutineRequestsAreNotEscalated) {
  synthetic::Params p;
  p.requests = 60;
  p.seed = 7;
  std::size_t routine = 0;
  for (const auto& r : synthetic::generate(p).requests) {
    if (*r.escalated) continue;
    ++routine;
    const auto s = process_request(shared_bundle(), r);
    EXPECT_FALSE(s.escalate) << r.id;
    EXPECT_FALSE(s.ticket);
    EXPECT_EQ(s.timings.size(), 2u);
  }
  EXPECT_GT(routine, 30u);
}

TEST(ProcessRequest, EmptyConversationFailsAtStepOne) {
  corpus::UserRequest r;
  r.id = "E";
  const auto s = process_request(shared_bundle(), r);
  ASSERT_TRUE(s.error);
  EXPECT_EQ(s.error->step, 1);
  EXPECT_EQ(s.error->name, "summarize");
  EXPECT_FALSE(s.escalate);
  EXPECT_FALSE(s.ticket);
}

TEST(ProcessRequest, TicketIffEscalateOnFuzzedInputs) {
  const auto& b = shared_bundle();
  auto requests = essmart::testing::fuzz_corpus(300, 12);
  Rng rng(12);
  for (auto& r : requests) {
    if (rng.uniform_index(3) == 0) r.conversation[0].text += " The app has a crash in the inbox.";
    if (rng.uniform_index(10) == 0) r.brand_name.clear();
    const auto s = process_request(b, r);
    EXPECT_EQ(s.ticket.has_value(), s.escalate) << r.id;
    for (double c : {s.escalation_confidence, s.priority_confidence, s.assignment_confidence}) {
      EXPECT_GE(c, 0.0);
      EXPECT_LE(c, 1.0);
    }
    if (s.ticket) {
      EXPECT_LE(text::word_tokens(s.ticket->title).size(), corpus::kMaxTitleWords);
      EXPECT_TRUE(corpus::try_priority_from_string(corpus::to_string(s.ticket->priority)));
    }
  }
}

TEST(ProcessRequest, PureFunctionOfBundleAndRequest) {
  const auto& b = shared_bundle();
  for (const auto& r : training_corpus().requests) {
    EXPECT_EQ(process_request(b, r).decision_json(), process_request(b, r).decision_json());
  }
}

TEST(ProcessRequest, StepTimingsAccountForTheTotal) {
  const auto& b = shared_bundle();
  for (const auto& r : training_corpus().requests) {
    const auto s = process_request(b, r);
    double sum = 0.0;
    for (const auto& t : s.timings) sum += t.ms;
    EXPECT_LE(sum, s.total_ms * 1.0000001);
    EXPECT_GE(sum, s.total_ms * 0.95) << r.id << " " << sum << " / " << s.total_ms;
  }
}

TEST(Bundle, SaveLoadGivesBitIdenticalSuggestions) {
  const auto& b = shared_bundle();
  essmart::testing::TempDir dir;
  save_bundle(b, dir.path());
  const auto loaded = load_bundle(dir.path());
  const auto requests = training_corpus().requests;
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_EQ(process_request(b, requests[i]).decision_json().dump(),
              process_request(loaded, requests[i]).decision_json().dump());
  }
}

TEST(Bundle, TamperedFileIsCorrupt) {
  essmart::testing::TempDir dir;
  save_bundle(shared_bundle(), dir.path());
  std::string text = read_file(dir / "thesaurus.json");
  text.insert(text.size() / 2, " ");
  write_file(dir / "thesaurus.json", text);
  try {
    load_bundle(dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptArtifact);
  }
}

TEST(Bundle, MissingFileIsCorrupt) {
  essmart::testing::TempDir dir;
  save_bundle(shared_bundle(), dir.path());
  std::filesystem::remove(dir / "escalation.json");
  try {
    load_bundle(dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptArtifact);
  }
}

TEST(Bundle, FutureFormatVersionIsRejected) {
  essmart::testing::TempDir dir;
  save_bundle(shared_bundle(), dir.path());
  auto manifest = nlohmann::json::parse(read_file(dir / "manifest.json"));
  manifest["format_version"] = kBundleFormatVersion + 1;
  write_file(dir / "manifest.json", manifest.dump(2));
  try {
    load_bundle(dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kVersionMismatch);
  }
}

}  // namespace
}  // namespace essmart::pipeline
