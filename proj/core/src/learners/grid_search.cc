#include "essmart/learners/grid_search.h"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <future>
#include <limits>
#include <map>
#include <thread>

#include "essmart/common/error.h"
#include "essmart/common/random.h"

namespace essmart::learners {

std::vector<Parameters> expand_grid(const ParamGrid& grid) {
  std::vector<Parameters> out{Parameters{}};
  for (const auto& [name, values] : grid) {
    if (values.empty()) {
      throw Error(ErrorCode::kInvalidParameter, "grid axis " + name + " has no values");
    }
    std::vector<Parameters> next;
    next.reserve(out.size() * values.size());
    for (const auto& base : out) {
      for (const auto& v : values) {
        Parameters p = base;
        p[name] = v;
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

ParamGrid default_grid(Family family) {
  switch (family) {
    case Family::kNaiveBayes:
      return {{"alpha", {0.1, 1.0}}};
    case Family::kSvm:
      return {{"C", {0.01, 0.1, 1.0, 10.0}},
              {"gamma", {std::string("scale"), 0.01, 0.1}},
              {"kernel", {std::string("linear"), std::string("rbf")}}};
    case Family::kRandomForest:
      return {{"trees", {50.0, 100.0, 200.0}}};
  }
  return {};
}

std::vector<std::vector<std::size_t>> stratified_folds(
    const std::vector<std::string>& labels, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw Error(ErrorCode::kInvalidArgument, "folds must be >= 2");
  if (labels.size() < folds) {
    throw Error(ErrorCode::kTooFewRowsPerFold,
                std::to_string(labels.size()) + " rows cannot fill " +
                    std::to_string(folds) + " folds");
  }
  std::map<std::string, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < labels.size(); ++i) by_label[labels[i]].push_back(i);
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> out(folds);
  std::size_t next = 0;
  for (auto& [label, rows] : by_label) {
    rng.shuffle(std::span<std::size_t>(rows));
    for (std::size_t i : rows) {
      out[next].push_back(i);
      next = (next + 1) % folds;
    }
  }
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

double cross_validated_f1(Family family, const Dataset& dataset,
                          const Parameters& parameters,
                          const std::vector<std::vector<std::size_t>>& folds,
                          std::uint64_t seed, std::vector<std::string>* out_of_fold,
                          std::vector<double>* fold_f1) {
  std::vector<std::string> pooled(dataset.size());
  std::vector<char> held(dataset.size());
  double sum = 0.0;
  if (fold_f1) fold_f1->clear();
  for (std::size_t k = 0; k < folds.size(); ++k) {
    std::fill(held.begin(), held.end(), 0);
    for (std::size_t i : folds[k]) held[i] = 1;
    std::vector<std::size_t> train_idx;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      if (!held[i]) train_idx.push_back(i);
    }
    Dataset train_set = dataset.subset(train_idx);
    std::vector<std::string> actual, predicted;
    if (train_set.label_domain.size() < 2) {
      // A rare label can leave a training fold with one class; predict it.
      const std::string only = train_set.labels.empty() ? dataset.label_domain.front()
                                                        : train_set.labels.front();
      for (std::size_t i : folds[k]) {
        actual.push_back(dataset.labels[i]);
        predicted.push_back(only);
      }
    } else {
      ClassifierModel model = train(family, train_set, parameters, seed + k);
      for (std::size_t i : folds[k]) {
        actual.push_back(dataset.labels[i]);
        predicted.push_back(model.predict(dataset.rows[i]).label);
      }
    }
    for (std::size_t j = 0; j < folds[k].size(); ++j) pooled[folds[k][j]] = predicted[j];
    double f1 = make_report(dataset.label_domain, actual, predicted).f1;
    if (fold_f1) fold_f1->push_back(f1);
    sum += f1;
  }
  if (out_of_fold) *out_of_fold = std::move(pooled);
  return folds.empty() ? 0.0 : sum / static_cast<double>(folds.size());
}

GridSearchResult grid_search_cv(Family family, const Dataset& dataset,
                                const ParamGrid& grid, std::size_t folds,
                                std::uint64_t seed) {
  const auto fold_sets = stratified_folds(dataset.labels, folds, seed);
  std::vector<Parameters> candidates = expand_grid(grid);

  // Independent grid points are evaluated concurrently; the reduction below
  // walks them in grid order so the outcome does not depend on scheduling.
  const double kRejected = -std::numeric_limits<double>::infinity();
  std::vector<double> scores(candidates.size(), kRejected);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                                                     candidates.size()));
  std::vector<std::string> errors(candidates.size());
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (std::size_t c = cursor++; c < candidates.size(); c = cursor++) {
      try {
        scores[c] = cross_validated_f1(family, dataset, candidates[c], fold_sets, seed);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kInvalidParameter) throw;
        errors[c] = e.what();
      }
    }
  };
  std::vector<std::future<void>> running;
  for (std::size_t w = 0; w < workers; ++w) {
    running.push_back(std::async(std::launch::async, work));
  }
  for (auto& f : running) f.get();

  std::size_t best = candidates.size();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (scores[c] == kRejected) continue;
    if (best == candidates.size() || scores[c] > scores[best]) best = c;
  }
  if (best == candidates.size()) {
    throw Error(ErrorCode::kInvalidParameter,
                "no grid point could be trained: " + errors.front());
  }

  std::vector<std::string> pooled;
  std::vector<double> per_fold;
  cross_validated_f1(family, dataset, candidates[best], fold_sets, seed, &pooled, &per_fold);
  EvalReport report = make_report(dataset.label_domain, dataset.labels, pooled);
  report.fold_f1 = per_fold;
  report.mean_fold_f1 = scores[best];

  ClassifierModel model = train(family, dataset, candidates[best], seed);
  return {candidates[best], std::move(model), std::move(report), std::move(candidates),
          std::move(scores)};
}

}  // namespace essmart::learners
