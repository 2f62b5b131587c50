#ifndef ESSMART_LEARNERS_METRICS_H_
#define ESSMART_LEARNERS_METRICS_H_

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "essmart/learners/classifier.h"

namespace essmart::learners {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct EvalReport {
  std::vector<std::string> labels;
  std::vector<ClassMetrics> per_class;             // aligned with labels
  std::vector<std::vector<std::size_t>> confusion;  // [actual][predicted]
  double precision = 0.0;                           // support-weighted
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  std::vector<double> fold_f1;  // weighted F1 per held-out fold, if any
  double mean_fold_f1 = 0.0;

  nlohmann::json to_json() const;
  static EvalReport from_json(const nlohmann::json& j);
};

// Precision TP/(TP+FP) and recall TP/(TP+FN) per label (0 when undefined),
// averaged with weights proportional to support.
EvalReport make_report(const std::vector<std::string>& labels,
                       const std::vector<std::string>& actual,
                       const std::vector<std::string>& predicted);

EvalReport evaluate(const ClassifierModel& model, const Dataset& dataset);

}  // namespace essmart::learners

#endif  // ESSMART_LEARNERS_METRICS_H_
