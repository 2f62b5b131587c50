#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "essmart/common/error.h"
#include "essmart/common/io.h"
#include "essmart/corpus/types.h"
#include "essmart/ticketgen/content.h"
#include "essmart/ticketgen/ner.h"
#include "essmart/ticketgen/thesaurus.h"
#include "essmart/ticketgen/title.h"
#include "essmart/textproc/tokenizer.h"
#include "test_support.h"

namespace essmart::ticketgen {
namespace {

using text::SentenceRecord;

std::vector<SentenceRecord> split(const std::string& text) {
  return text::sentence_split(text, 0, SpeakerRole::kCustomer);
}

corpus::UserRequest fig4_request() {
  auto r = essmart::testing::simple_request(
      "R1", "John emailed me and wanted a copy of a message note faxed to him.");
  r.requester = "Sarah Connor";
  r.brand_name = "EMR";
  return r;
}

Thesaurus fig4_thesaurus() {
  Thesaurus t;
  t.add_person("John", "doctor", "personnel");
  t.add_person("Sarah Connor", "doctor", "personnel");
  return t;
}

TEST(Content, PublishedTransformationExample) {
  const auto r = fig4_request();
  const auto s = corpus::conversation_sentences(r);
  EXPECT_EQ(transform_content(s, r, fig4_thesaurus()),
            "In the EMR system; a doctor emailed a doctor and wanted a copy of a message note "
            "faxed to him.");
}

TEST(Content, UnknownRequesterRoleKeepsPronouns) {
  auto r = fig4_request();
  r.requester = "Somebody Else";
  const auto s = corpus::conversation_sentences(r);
  EXPECT_EQ(transform_content(s, r, fig4_thesaurus()),
            "In the EMR system; a doctor emailed me and wanted a copy of a message note faxed "
            "to him.");
}

TEST(Content, MissingBrandIsAnError) {
  auto r = fig4_request();
  r.brand_name.clear();
  const auto s = corpus::conversation_sentences(r);
  try {
    transform_content(s, r, fig4_thesaurus());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownBrand);
  }
}

TEST(Content, ArticleFollowsTheRole) {
  EXPECT_EQ(indefinite_article("administrator"), "an");
  EXPECT_EQ(indefinite_article("doctor"), "a");
}

std::set<std::string> lower_token_set(const std::string& text) {
  const auto tokens = text::lower_tokens(text);
  return {tokens.begin(), tokens.end()};
}

TEST(Content, IntroducesOnlyPrefixArticlesAndCanonicalForms) {
  Thesaurus t = fig4_thesaurus();
  t.add("Northside Clinic", "Northside Clinic", EntityKind::kOrganization, "docs");
  t.add("Inbox Search", "inbox search feature", EntityKind::kProductTerm, "docs");
  std::set<std::string> allowed{"in", "the", "system", "a", "an", "'s", "emr"};
  for (const auto& e : t.entries()) {
    for (const auto& w : text::lower_tokens(e.canonical)) allowed.insert(w);
  }
  const auto corpus = essmart::testing::fuzz_corpus(300, 77);
  Rng rng(77);
  const char* extras[] = {"John called from Northside Clinic.", "My Inbox Search is broken.",
                          "We asked Sarah about it.", "Mark Twain wrote to me at a@b.com."};
  for (auto r : corpus) {
    r.requester = "Sarah Connor";
    r.conversation[0].text += std::string(" ") + extras[rng.uniform_index(4)];
    const auto sentences = corpus::conversation_sentences(r);
    std::set<std::string> source;
    for (const auto& s : sentences) {
      for (const auto& w : text::lower_tokens(s.text)) source.insert(w);
    }
    for (const auto& w : lower_token_set(transform_content(sentences, r, t))) {
      EXPECT_TRUE(source.contains(w) || allowed.contains(w)) << w << " in " << r.id;
    }
  }
}

TEST(Thesaurus, PersonExpansionGivesThreeFormsPerPerson) {
  Thesaurus t;
  const std::vector<std::pair<std::string, std::string>> people{
      {"Alice Martin", "doctor"}, {"Omar Haddad", "nurse"}, {"Grace Liu", "pharmacist"},
      {"Ivan Petrov", "receptionist"}};
  for (std::size_t n = 0; n < people.size(); ++n) {
    t.add_person(people[n].first, people[n].second, "personnel");
    EXPECT_EQ(t.size(), 3 * (n + 1));
    EXPECT_EQ(t.size() % 3, 0u);
  }
  EXPECT_EQ(t.lookup("omar")->canonical, "nurse");
  EXPECT_EQ(t.lookup("Haddad")->kind, EntityKind::kPersonRole);
}

TEST(Thesaurus, MinesOrganizationAndAppliesOverride) {
  const std::vector<corpus::SourceDocument> docs{
      {"org", corpus::DocumentKind::kOrgDescription,
       "Crowfoot clinic. Jane Doe is the administrator."}};
  const std::vector<std::pair<std::string, std::string>> people{{"Jane Doe", "administrator"}};
  const auto t = build_thesaurus(docs, people);
  for (const char* s : {"Jane", "Doe", "Jane Doe"}) {
    const auto* e = t.lookup(s);
    ASSERT_NE(e, nullptr) << s;
    EXPECT_EQ(e->canonical, "administrator");
    EXPECT_EQ(e->kind, EntityKind::kPersonRole);
  }
  const auto* org = t.lookup("Crowfoot clinic");
  ASSERT_NE(org, nullptr);
  EXPECT_EQ(org->kind, EntityKind::kOrganization);
}

TEST(Thesaurus, NoDocumentsIsAnError) {
  try {
    build_thesaurus({}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyDocuments);
  }
}

TEST(Thesaurus, JsonRoundTrip) {
  Thesaurus t = fig4_thesaurus();
  t.add("New York Clinic", "New York Clinic", EntityKind::kOrganization, "docs");
  EXPECT_EQ(Thesaurus::from_json(t.to_json()), t);
}

TEST(Ner, LongestThesaurusMatchWins) {
  Thesaurus t;
  t.add("New York", "New York", EntityKind::kGeneralEntity, "docs");
  t.add("New York Clinic", "New York Clinic", EntityKind::kOrganization, "docs");
  const auto s = split("New York Clinic called.");
  const auto mentions = ner_detect(s[0], t);
  ASSERT_EQ(mentions.size(), 1u);
  EXPECT_EQ(mentions[0].surface, "New York Clinic");
  EXPECT_EQ(mentions[0].kind, EntityKind::kOrganization);
}

TEST(Ner, FindsEmailsPhonesAndCapitalizedRuns) {
  const auto s = split("Please ask Mark Twain at mark@example.com or 403-555-0100 today.");
  const auto mentions = ner_detect(s[0], Thesaurus{});
  std::vector<MentionSource> sources;
  for (const auto& m : mentions) sources.push_back(m.source);
  EXPECT_EQ(sources, (std::vector<MentionSource>{MentionSource::kCapitalized, MentionSource::kEmail,
                                                 MentionSource::kPhone}));
  EXPECT_EQ(mentions[0].surface, "Mark Twain");
}

TEST(Ner, MentionsNeverOverlap) {
  Thesaurus t = fig4_thesaurus();
  t.add("Inbox", "inbox", EntityKind::kProductTerm, "docs");
  t.add("Inbox Search", "inbox search", EntityKind::kProductTerm, "docs");
  t.add("Search Bar", "search bar", EntityKind::kProductTerm, "docs");
  Rng rng(4);
  const char* words[] = {"John", "Inbox", "Search", "Bar", "New", "York", "the", "crashed",
                         "a@b.com", "Sarah", "Connor", "and", "403-555-0100"};
  for (int i = 0; i < 1000; ++i) {
    std::string text = "Then";
    for (std::size_t k = 1 + rng.uniform_index(12); k > 0; --k) {
      text += std::string(" ") + words[rng.uniform_index(std::size(words))];
    }
    const auto s = split(text + ".");
    for (const auto& sentence : s) {
      const auto mentions = ner_detect(sentence, t);
      for (std::size_t k = 0; k < mentions.size(); ++k) {
        EXPECT_LT(mentions[k].begin, mentions[k].end);
        if (k) {
          EXPECT_LE(mentions[k - 1].end, mentions[k].begin) << text;
        }
      }
    }
  }
}

TEST(Title, CapOnFuzzedInputs) {
  const auto corpus = essmart::testing::fuzz_corpus(1000, 4242);
  for (const auto& r : corpus) {
    const auto s = corpus::conversation_sentences(r);
    const auto title = generate_title(s);
    EXPECT_LE(text::word_tokens(title.title).size(), corpus::kMaxTitleWords) << r.id;
    EXPECT_FALSE(title.title.empty());
  }
}

TEST(Title, BeamMatchesExhaustiveOnToyGraphs) {
  Rng rng(17);
  int compared = 0;
  for (int i = 0; i < 400 && compared < 100; ++i) {
    auto r = essmart::testing::fuzz_request(rng, "T");
    auto s = corpus::conversation_sentences(r);
    s.resize(std::min<std::size_t>(s.size(), 1 + rng.uniform_index(3)));
    const TitleGraph graph(s);
    const auto paths = enumerate_title_paths(graph, corpus::kMaxTitleWords);
    if (paths.size() > 50) continue;
    std::optional<TitlePath> best;
    for (const auto& p : paths) {
      if (valid_title_path(graph, p) && (!best || better_path(p, *best))) best = p;
    }
    const auto beam = beam_search_title(graph, corpus::kMaxTitleWords, std::max<std::size_t>(paths.size(), 1));
    if (best) {
      EXPECT_EQ(beam.nodes, best->nodes);
      EXPECT_DOUBLE_EQ(beam.cost, best->cost);
    } else {
      EXPECT_TRUE(beam.nodes.empty());
    }
    ++compared;
  }
  EXPECT_GE(compared, 30);
}

TEST(Title, SharedSpineSurvives) {
  const auto s = split(
      "The printer driver crashes after the update. The printer driver crashes during "
      "startup every morning.");
  const auto title = generate_title(s);
  EXPECT_FALSE(title.fallback);
  EXPECT_NE(to_lower(title.title).find("printer driver crashes"), std::string::npos)
      << title.title;
}

TEST(Title, EveryWordNodeIsOnASentencePath) {
  const auto s = split("Login fails on the portal. The portal shows an error page.");
  const TitleGraph g(s);
  for (std::size_t n = 2; n < g.nodes().size(); ++n) EXPECT_FALSE(g.nodes()[n].mapped.empty());
  EXPECT_FALSE(g.edges(TitleGraph::kStart).empty());
}

TEST(Title, EmptyInputIsAnError) {
  EXPECT_THROW(generate_title(std::span<const SentenceRecord>{}), Error);
}

}  // namespace
}  // namespace essmart::ticketgen
