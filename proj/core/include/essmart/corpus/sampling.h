#ifndef ESSMART_CORPUS_SAMPLING_H_
#define ESSMART_CORPUS_SAMPLING_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "essmart/corpus/types.h"

namespace essmart::corpus {

struct Split {
  std::vector<UserRequest> train;
  std::vector<UserRequest> test;
};

// Seeded, stratified on the escalated label (unlabeled records form their own
// stratum). Both partitions keep input order. The test size is
// round(test_fraction * n) clamped to [1, n-1]; per-stratum quotas use the
// largest-remainder rule.
Split split(const std::vector<UserRequest>& requests, double test_fraction,
            std::uint64_t seed);

// Randomly keeps at most floor(ratio * minority) majority records; the
// minority class is untouched and input order is preserved.
std::vector<UserRequest> downsample_majority(const std::vector<UserRequest>& requests,
                                             double ratio, std::uint64_t seed);

}  // namespace essmart::corpus

#endif  // ESSMART_CORPUS_SAMPLING_H_
