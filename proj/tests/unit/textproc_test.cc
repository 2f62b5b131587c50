#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "essmart/common/error.h"
#include "essmart/textproc/lemmatizer.h"
#include "essmart/textproc/ngrams.h"
#include "essmart/textproc/porter.h"
#include "essmart/textproc/sentence.h"
#include "essmart/textproc/tokenizer.h"
#include "essmart/textproc/vectorizer.h"
#include "test_support.h"

namespace essmart::text {
namespace {

using Tokens = std::vector<std::string>;

TEST(SentenceSplit, AbbreviationIsNotABoundary) {
  const auto s = sentence_split("Dr. Smith emailed. Reply sent.");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].text, "Dr. Smith emailed.");
  EXPECT_EQ(s[1].text, "Reply sent.");
  EXPECT_EQ(s[1].origin.sentence, 1);
}

TEST(SentenceSplit, LowercaseContinuationIsNotABoundary) {
  EXPECT_EQ(sentence_split("Version 2.1 is out. it works?").size(), 1u);
}

TEST(Tokenizer, KeepsInternalPunctuation) {
  EXPECT_EQ(word_tokens("Email a@b.com, don't call 403-555-0100!"),
            (Tokens{"Email", "a@b.com", "don't", "call", "403-555-0100"}));
}

TEST(Porter, MatchesReferenceVectors) {
  std::ifstream in(essmart::testing::data_dir() / "porter_vectors.txt");
  ASSERT_TRUE(in);
  std::string line;
  std::size_t checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string word, stem;
    fields >> word >> stem;
    EXPECT_EQ(porter_stem(word), stem) << word;
    ++checked;
  }
  EXPECT_GT(checked, 1000u);
  EXPECT_EQ(porter_stem("caresses"), "caress");
  EXPECT_EQ(porter_stem("ponies"), "poni");
}

TEST(Lemmatizer, RulesAndExceptions) {
  EXPECT_EQ(lemmatize("running"), "run");
  EXPECT_EQ(lemmatize("children"), "child");
  EXPECT_EQ(lemmatize("tickets"), "ticket");
  EXPECT_EQ(lemmatize("zzyzx"), "zzyzx");
  EXPECT_EQ(lemmatize("needs"), "need");
  EXPECT_EQ(lemmatize("feed"), "feed");
  EXPECT_EQ(lemmatize("increased"), "increase");
  EXPECT_EQ(lemmatize("saving"), "save");
  EXPECT_EQ(lemmatize("issued"), "issue");
  EXPECT_EQ(lemmatize("produced"), "produce");
  EXPECT_EQ(lemmatize("studies"), "study");
}

TEST(Lemmatizer, IdempotentOnOwnOutput) {
  std::ifstream in(essmart::testing::data_dir() / "porter_vectors.txt");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::string word = line.substr(0, line.find(' '));
    const std::string once = lemmatize(word);
    EXPECT_EQ(lemmatize(once), once) << word;
  }
}

TEST(Ngrams, SkipBigramsUnlimited) {
  const Tokens t{"a", "b", "c"};
  const auto units = skip_bigrams(t, kUnlimitedSkip);
  const UnitCounts expected{{{"a", "b"}, 1}, {{"a", "c"}, 1}, {{"b", "c"}, 1}};
  EXPECT_EQ(units, expected);
}

TEST(Ngrams, SkipZeroEqualsBigramsOnRandomLists) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto t = essmart::testing::random_tokens(rng, 20, 4);
    EXPECT_EQ(skip_bigrams(t, 0), ngrams(t, 2));
  }
}

TEST(Ngrams, UnlimitedSkipCountForDistinctTokens) {
  for (std::size_t len = 0; len <= 26; ++len) {
    Tokens t;
    for (std::size_t i = 0; i < len; ++i) t.push_back(std::string(1, static_cast<char>('a' + i)));
    EXPECT_EQ(total_count(skip_bigrams(t, kUnlimitedSkip)), len * (len ? len - 1 : 0) / 2);
  }
}

VectorizerModel login_model(VectorMode mode) {
  const std::vector<Tokens> docs{{"crash", "on", "login"}, {"login", "page", "slow"}};
  return fit_vectorizer(docs, mode, Normalization::kNone, WordSet{});
}

TEST(Vectorizer, IdfByHand) {
  const auto m = login_model(VectorMode::kTfidf);
  EXPECT_EQ(m.document_frequency().at("login"), 2u);
  EXPECT_EQ(m.document_frequency().at("crash"), 1u);
  EXPECT_DOUBLE_EQ(m.idf("login"), 0.0);
  EXPECT_NEAR(m.idf("crash"), std::log(2.0), 1e-15);
}

TEST(Vectorizer, TfidfByHand) {
  const auto m = login_model(VectorMode::kTfidf);
  const Tokens doc{"crash", "on", "login"};
  const auto dense = m.transform_dense(doc);
  EXPECT_NEAR(dense[m.vocabulary().at("crash")], std::log(2.0) / 3.0, 1e-12);
  EXPECT_NEAR(dense[m.vocabulary().at("crash")], 0.231, 1e-3);
  EXPECT_EQ(dense[m.vocabulary().at("login")], 0.0);
}

TEST(Vectorizer, ColumnsDenseAndLexicographic) {
  const auto m = login_model(VectorMode::kBow);
  std::size_t expected = 0;
  for (const auto& [term, column] : m.vocabulary()) {
    EXPECT_EQ(column, expected++) << term;
    EXPECT_GE(m.document_frequency().at(term), 1u);
  }
}

TEST(Vectorizer, BowIsLinearInCounts) {
  const auto m = login_model(VectorMode::kBow);
  Rng rng(3);
  const Tokens vocab{"crash", "on", "login", "page", "slow", "unknown"};
  for (int i = 0; i < 100; ++i) {
    Tokens a, b;
    for (std::size_t k = rng.uniform_index(8); k > 0; --k) a.push_back(vocab[rng.uniform_index(6)]);
    for (std::size_t k = rng.uniform_index(8); k > 0; --k) b.push_back(vocab[rng.uniform_index(6)]);
    Tokens ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    const auto va = m.transform_dense(a), vb = m.transform_dense(b), vab = m.transform_dense(ab);
    for (std::size_t c = 0; c < m.width(); ++c) EXPECT_EQ(vab[c], va[c] + vb[c]);
  }
}

TEST(Vectorizer, TermInEveryDocumentWeighsZero) {
  const auto m = login_model(VectorMode::kTfidf);
  for (const auto& doc : {Tokens{"login"}, Tokens{"login", "login", "crash"}}) {
    EXPECT_EQ(m.transform_dense(doc)[m.vocabulary().at("login")], 0.0);
  }
}

TEST(Vectorizer, JsonRoundTrip) {
  const auto m = login_model(VectorMode::kTfidf);
  const auto back = VectorizerModel::from_json(m.to_json());
  const Tokens doc{"crash", "page", "login"};
  EXPECT_EQ(back.transform(doc), m.transform(doc));
}

TEST(Vectorizer, EmptyCorpusThrows) {
  const std::vector<Tokens> docs{{}, {}};
  try {
    fit_vectorizer(docs, VectorMode::kTfidf, Normalization::kNone, WordSet{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCorpus);
  }
}

TEST(Normalize, StopwordsThenStem) {
  const Tokens t{"The", "Crashes", "were", "annoying"};
  EXPECT_EQ(normalize_tokens(t, Normalization::kStem, WordSet{"the", "were"}),
            (Tokens{"crash", "annoi"}));
}

}  // namespace
}  // namespace essmart::text
