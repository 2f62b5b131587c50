#include <algorithm>
#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "essmart/common/error.h"
#include "essmart/common/random.h"
#include "essmart/learners/classifier.h"
#include "essmart/learners/grid_search.h"
#include "essmart/learners/metrics.h"
#include "essmart/learners/mrmr.h"

namespace essmart::learners {
namespace {

Dataset xor_data(std::size_t copies) {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < copies; ++c) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        rows.push_back({double(a), double(b)});
        labels.push_back(a != b ? "one" : "zero");
      }
    }
  }
  return Dataset::make(rows, labels);
}

// Best training accuracy of any single split with free leaf labels.
double best_stump_accuracy(const Dataset& d) {
  double best = 0.0;
  for (std::size_t f = 0; f < d.width(); ++f) {
    std::vector<double> values;
    for (const auto& r : d.rows) values.push_back(r[f]);
    std::sort(values.begin(), values.end());
    values.push_back(values.back() + 1);
    for (double t : values) {
      std::map<std::string, std::size_t> left, right;
      for (std::size_t i = 0; i < d.size(); ++i) ++(d.rows[i][f] < t ? left : right)[d.labels[i]];
      std::size_t correct = 0;
      for (const auto* side : {&left, &right}) {
        std::size_t m = 0;
        for (const auto& [l, c] : *side) m = std::max(m, c);
        correct += m;
      }
      best = std::max(best, double(correct) / double(d.size()));
    }
  }
  return best;
}

double training_accuracy(const ClassifierModel& m, const Dataset& d) {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < d.size(); ++i) correct += m.predict(d.rows[i]).label == d.labels[i];
  return double(correct) / double(d.size());
}

TEST(RandomForest, StumpCannotRepresentXor) {
  const auto d = xor_data(10);
  const double oracle = best_stump_accuracy(d);
  EXPECT_LE(oracle, 0.75);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = train(Family::kRandomForest, d,
                         {{"trees", 1.0}, {"max_depth", 1.0}, {"max_features", "all"}}, seed);
    EXPECT_LE(training_accuracy(m, d), oracle + 1e-12);
  }
}

TEST(RandomForest, DeepForestLearnsXor) {
  const auto d = xor_data(10);
  const auto m = train(Family::kRandomForest, d, {{"trees", 25.0}, {"max_features", "all"}}, 3);
  EXPECT_EQ(training_accuracy(m, d), 1.0);
}

TEST(RandomForest, VoteFractionsAreMultiplesOfOneOverT) {
  const auto d = xor_data(5);
  const double trees = 7;
  const auto m = train(Family::kRandomForest, d, {{"trees", trees}}, 1);
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const std::vector<double> x{rng.uniform01(), rng.uniform01()};
    double sum = 0.0;
    for (double s : m.scores(x)) {
      const double votes = s * trees;
      EXPECT_NEAR(votes, std::round(votes), 1e-9);
      sum += s;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

Dataset mixed_data(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cls = rng.uniform_index(3);
    rows.push_back({double(cls) + rng.uniform01(), double(rng.uniform_index(4)),
                    cls == 2 ? 1.0 : 0.0});
    labels.push_back("c" + std::to_string(cls));
  }
  return Dataset::make(rows, labels, {"x", "count", "flag"},
                       {FeatureKind::kContinuous, FeatureKind::kCount, FeatureKind::kIndicator});
}

TEST(NaiveBayes, PosteriorsSumToOne) {
  const auto d = mixed_data(4, 90);
  const auto m = train(Family::kNaiveBayes, d, {}, 0);
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> x{rng.uniform01() * 4 - 0.5, double(rng.uniform_index(6)),
                                double(rng.uniform_index(2))};
    double sum = 0.0;
    for (double s : m.scores(x)) {
      EXPECT_GE(s, 0.0);
      sum += s;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(Classifiers, DeterministicAndPersistent) {
  const auto d = mixed_data(5, 80);
  for (Family f : {Family::kNaiveBayes, Family::kSvm, Family::kRandomForest}) {
    const auto a = train(f, d, {}, 17);
    const auto b = train(f, d, {}, 17);
    const auto loaded = ClassifierModel::from_json(a.to_json());
    EXPECT_EQ(a.to_json(), b.to_json()) << to_string(f);
    for (const auto& row : d.rows) {
      EXPECT_EQ(a.scores(row), b.scores(row));
      EXPECT_EQ(a.scores(row), loaded.scores(row));
      const auto p = a.predict(row);
      EXPECT_GE(p.confidence, 0.0);
      EXPECT_LE(p.confidence, 1.0);
    }
  }
}

TEST(Classifiers, SingleClassIsRejected) {
  const auto d = Dataset::make({{1.0}, {2.0}}, {"a", "a"});
  try {
    train(Family::kNaiveBayes, d, {}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingleClass);
  }
}

TEST(Classifiers, UnknownParameterIsInvalid) {
  const auto d = xor_data(2);
  try {
    train(Family::kSvm, d, {{"bogus", 1.0}}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidParameter);
  }
}

TEST(Metrics, AllOneClassOnBalancedBinary) {
  const std::vector<std::string> actual{"a", "a", "b", "b"};
  const std::vector<std::string> predicted{"a", "a", "a", "a"};
  const auto r = make_report({"a", "b"}, actual, predicted);
  EXPECT_DOUBLE_EQ(r.per_class[0].recall, 1.0);
  EXPECT_DOUBLE_EQ(r.per_class[1].recall, 0.0);
  EXPECT_DOUBLE_EQ(r.recall, 0.5);
  EXPECT_DOUBLE_EQ(r.per_class[0].precision, 0.5);
  EXPECT_DOUBLE_EQ(r.precision, 0.25);
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    std::size_t row = 0;
    for (auto c : r.confusion[i]) row += c;
    EXPECT_EQ(row, r.per_class[i].support);
  }
}

TEST(Metrics, EmptyTestSetGivesEmptyReport) {
  const auto r = make_report({"a", "b"}, {}, {});
  EXPECT_EQ(r.f1, 0.0);
  EXPECT_EQ(r.per_class[0].support, 0u);
}

// Separable clusters on one side of the origin. The bias is a regularized
// weight, so with C = 0.01 the model cannot place the boundary between them.
Dataset offset_clusters() {
  Rng rng(21);
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  for (int i = 0; i < 60; ++i) {
    const bool pos = i % 2 == 0;
    rows.push_back({(pos ? 1.5 : 0.0) + rng.uniform01(), rng.uniform01()});
    labels.push_back(pos ? "pos" : "neg");
  }
  return Dataset::make(rows, labels);
}

TEST(GridSearch, PicksTheCrossValidatedBest) {
  const auto d = offset_clusters();
  const ParamGrid grid{{"C", {0.01, 1.0}}};
  const auto folds = stratified_folds(d.labels, 5, 42);
  const double small = cross_validated_f1(Family::kSvm, d, {{"C", 0.01}}, folds, 42);
  const double large = cross_validated_f1(Family::kSvm, d, {{"C", 1.0}}, folds, 42);
  const auto result = grid_search_cv(Family::kSvm, d, grid, 5, 42);
  EXPECT_EQ(result.mean_f1, (std::vector<double>{small, large}));
  EXPECT_LT(small, 0.5);
  EXPECT_EQ(large, 1.0);
  EXPECT_EQ(std::get<double>(result.best_parameters.at("C")), 1.0);
}

TEST(GridSearch, WinnerMatchesExhaustiveReevaluation) {
  const auto d = mixed_data(6, 60);
  const ParamGrid grid{{"trees", {5.0, 20.0}}, {"max_depth", {1.0, 0.0}}};
  const auto result = grid_search_cv(Family::kRandomForest, d, grid, 5, 7);
  ASSERT_EQ(result.candidates.size(), 4u);
  const auto folds = stratified_folds(d.labels, 5, 7);
  std::size_t best = 0;
  std::vector<double> scores;
  for (const auto& p : expand_grid(grid)) {
    scores.push_back(cross_validated_f1(Family::kRandomForest, d, p, folds, 7));
    if (scores.back() > scores[best]) best = scores.size() - 1;
  }
  EXPECT_EQ(result.mean_f1, scores);
  EXPECT_EQ(result.best_parameters, expand_grid(grid)[best]);
  for (double s : scores) EXPECT_GE(result.mean_f1[best], s);
}

TEST(GridSearch, ExpandVariesLastAxisFastest) {
  const auto points = expand_grid({{"a", {1.0, 2.0}}, {"b", {std::string("x"), std::string("y")}}});
  ASSERT_EQ(points.size(), 4u);
  EXPECT_EQ(std::get<std::string>(points[1].at("b")), "y");
  EXPECT_EQ(std::get<double>(points[2].at("a")), 2.0);
}

TEST(StratifiedFolds, PartitionAndBalance) {
  std::vector<std::string> labels;
  for (int i = 0; i < 23; ++i) labels.push_back(i % 3 ? "a" : "b");
  const auto folds = stratified_folds(labels, 5, 1);
  std::vector<int> seen(labels.size(), 0);
  for (const auto& f : folds) {
    for (auto i : f) ++seen[i];
  }
  for (int s : seen) EXPECT_EQ(s, 1);
  EXPECT_THROW(stratified_folds({"a", "b"}, 5, 1), Error);
}

// Mutual information by direct counting, independent of the library's.
double mi_oracle(const std::vector<int>& x, const std::vector<int>& y) {
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

struct Table {
  std::vector<std::vector<int>> columns;
  std::vector<int> label;
};

Table eight_row_table() {
  const std::vector<int> y{0, 0, 0, 0, 1, 1, 1, 1};
  return {{y, y, {0, 0, 0, 1, 1, 1, 1, 0}, {0, 1, 0, 1, 0, 1, 0, 1}, {0, 0, 1, 1, 0, 0, 1, 1}},
          y};
}

std::vector<std::size_t> exhaustive_mid(const Table& t, std::size_t k) {
  std::vector<std::size_t> chosen;
  while (chosen.size() < k) {
    std::size_t best = t.columns.size();
    double best_score = 0.0;
    for (std::size_t f = 0; f < t.columns.size(); ++f) {
      if (std::find(chosen.begin(), chosen.end(), f) != chosen.end()) continue;
      double score = mi_oracle(t.columns[f], t.label);
      if (!chosen.empty()) {
        double red = 0.0;
        for (auto s : chosen) red += mi_oracle(t.columns[f], t.columns[s]);
        score -= red / double(chosen.size());
      }
      if (best == t.columns.size() || score > best_score + 1e-12) {
        best = f;
        best_score = score;
      }
    }
    chosen.push_back(best);
  }
  return chosen;
}

Dataset as_dataset(const Table& t) {
  std::vector<std::vector<double>> rows(t.label.size());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < t.label.size(); ++i) {
    for (const auto& c : t.columns) rows[i].push_back(c[i]);
    labels.push_back(std::to_string(t.label[i]));
  }
  return Dataset::make(rows, labels);
}

TEST(Mrmr, EightRowTableMatchesExhaustiveComputation) {
  const auto t = eight_row_table();
  const auto d = as_dataset(t);
  const auto steps = mrmr_select(d, t.columns.size());
  const auto oracle = exhaustive_mid(t, t.columns.size());
  ASSERT_EQ(steps.size(), oracle.size());
  for (std::size_t i = 0; i < steps.size(); ++i) EXPECT_EQ(steps[i].feature, oracle[i]) << i;
  EXPECT_EQ(steps[0].feature, 0u);
  EXPECT_NEAR(steps[0].relevance, std::log(2.0), 1e-12);
  // With X1 equal to the label, every step-2 candidate scores
  // I(f;y) - I(f;X1) = 0; the duplicate X2 is no exception.
  EXPECT_NEAR(mi_oracle(t.columns[1], t.label) - mi_oracle(t.columns[1], t.columns[0]), 0.0,
              1e-12);
  EXPECT_NEAR(steps[1].score, 0.0, 1e-12);
}

TEST(Mrmr, RedundantDuplicateLosesToIndependentFeature) {
  // Without the label column, a duplicate of the first pick has positive
  // redundancy while an independent relevant feature has none.
  const std::vector<int> y{0, 0, 0, 0, 1, 1, 1, 1};
  const std::vector<int> a{0, 0, 0, 1, 1, 1, 1, 1};
  const std::vector<int> b{0, 0, 1, 0, 1, 1, 1, 0};
  const Table t{{a, a, b}, y};
  const auto steps = mrmr_select(as_dataset(t), 3);
  const auto oracle = exhaustive_mid(t, 3);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(steps[i].feature, oracle[i]);
  EXPECT_EQ(steps[0].feature, 0u);
  EXPECT_EQ(steps[1].feature, 2u);
}

TEST(Mrmr, SelectionIsAPrefixForEveryK) {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (int i = 0; i < 40; ++i) {
      std::vector<double> row;
      for (int f = 0; f < 6; ++f) row.push_back(double(rng.uniform_index(5)));
      labels.push_back(row[0] + row[1] > 4 ? "y" : "n");
      rows.push_back(row);
    }
    const auto d = Dataset::make(rows, labels);
    const auto all = mrmr_select(d, 6);
    for (std::size_t k = 1; k <= 6; ++k) {
      const auto part = mrmr_select(d, k);
      ASSERT_EQ(part.size(), k);
      for (std::size_t i = 0; i < k; ++i) EXPECT_EQ(part[i].feature, all[i].feature);
    }
  }
}

TEST(Discretize, EqualFrequencyBins) {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8};
  const auto codes = discretize(v, 4);
  EXPECT_EQ(codes, (std::vector<int>{0, 0, 1, 1, 2, 2, 3, 3}));
  const std::vector<double> few{5, 5, 9};
  const auto kept = discretize(few, 4);
  EXPECT_EQ(kept[0], kept[1]);
  EXPECT_NE(kept[0], kept[2]);
}

}  // namespace
}  // namespace essmart::learners
