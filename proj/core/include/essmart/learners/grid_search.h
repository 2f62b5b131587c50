#ifndef ESSMART_LEARNERS_GRID_SEARCH_H_
#define ESSMART_LEARNERS_GRID_SEARCH_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "essmart/learners/classifier.h"
#include "essmart/learners/metrics.h"

namespace essmart::learners {

// Ordered parameter axes; the cartesian product varies the last axis fastest.
using ParamGrid = std::vector<std::pair<std::string, std::vector<ParamValue>>>;

std::vector<Parameters> expand_grid(const ParamGrid& grid);

// Default axes per family: NB alpha {0.1, 1}; SVM C {0.01, 0.1, 1, 10} x
// gamma {scale, 0.01, 0.1} x kernel {linear, rbf}; RF trees {50, 100, 200}.
ParamGrid default_grid(Family family);

// Held-out index sets for stratified k-fold: each label's rows are shuffled
// and dealt round-robin. Throws TooFewRowsPerFold when rows < folds.
std::vector<std::vector<std::size_t>> stratified_folds(
    const std::vector<std::string>& labels, std::size_t folds, std::uint64_t seed);

struct GridSearchResult {
  Parameters best_parameters;
  ClassifierModel model;  // refit on the full dataset
  EvalReport report;      // pooled out-of-fold predictions of the winner
  std::vector<Parameters> candidates;
  std::vector<double> mean_f1;  // aligned with candidates
};

// Cross-validated F1 for one parameter combination; the fold model for fold
// k is trained with seed + k.
double cross_validated_f1(Family family, const Dataset& dataset,
                          const Parameters& parameters,
                          const std::vector<std::vector<std::size_t>>& folds,
                          std::uint64_t seed,
                          std::vector<std::string>* out_of_fold = nullptr,
                          std::vector<double>* fold_f1 = nullptr);

// Picks the combination with the highest mean held-out weighted F1, ties to
// the earlier grid point, then refits on all rows.
GridSearchResult grid_search_cv(Family family, const Dataset& dataset,
                                const ParamGrid& grid, std::size_t folds,
                                std::uint64_t seed);

}  // namespace essmart::learners

#endif  // ESSMART_LEARNERS_GRID_SEARCH_H_
