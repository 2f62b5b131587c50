#ifndef ESSMART_LEARNERS_MRMR_H_
#define ESSMART_LEARNERS_MRMR_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "essmart/learners/dataset.h"

namespace essmart::learners {

// Columns with more than `bins` distinct values are cut into equal-frequency
// bins (tied values share a bin); others keep one code per distinct value.
std::vector<int> discretize(std::span<const double> values, std::size_t bins);

// I(X;Y) in nats from paired discrete codes.
double mutual_information(std::span<const int> x, std::span<const int> y);

struct MrmrStep {
  std::size_t feature = 0;
  double relevance = 0.0;   // I(f; label)
  double redundancy = 0.0;  // mean I(f; s) over already selected s
  double score = 0.0;       // relevance - redundancy
};

// Greedy MID selection: argmax I(f;y), then argmax I(f;y) - mean_s I(f;s).
// Ties go to the lower column index. k is clamped to the feature count.
std::vector<MrmrStep> mrmr_select(const Dataset& dataset, std::size_t k,
                                  std::size_t bins = 4);

}  // namespace essmart::learners

#endif  // ESSMART_LEARNERS_MRMR_H_
