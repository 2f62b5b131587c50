#ifndef ESSMART_SYNTHETIC_H_
#define ESSMART_SYNTHETIC_H_

#include <cstdint>

#include "essmart/pipeline/pipeline.h"

namespace essmart::synthetic {

enum class Shape {
  // Escalated exactly when a customer sentence mentions "crash"; priority
  // follows a per-priority keyword and the assignee follows the brand.
  kSeparable,
  // The label word sits in the one sentence every other on-topic sentence
  // overlaps with, so a centrality summary keeps it, while an unrelated
  // aside mentions the opposite class's word at random.
  kSummaryConcentrated,
};

struct Params {
  Shape shape = Shape::kSeparable;
  std::size_t requests = 200;
  double escalation_rate = 0.3;
  bool gold_summaries = true;
  bool tickets = true;
  bool assignees = true;
  // Priority follows the brand instead of the priority sentence (always
  // the case for kSummaryConcentrated).
  bool priority_from_brand = false;
  std::uint64_t seed = 42;
};

// Requests plus brand/organization/team documents and a personnel list, all
// drawn deterministically from `seed`.
pipeline::TrainingCorpus generate(const Params& params);

}  // namespace essmart::synthetic

#endif  // ESSMART_SYNTHETIC_H_
