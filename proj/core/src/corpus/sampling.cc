#include "essmart/corpus/sampling.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "essmart/common/error.h"
#include "essmart/common/random.h"

namespace essmart::corpus {
namespace {

// -1 unlabeled, 0 not escalated, 1 escalated.
int stratum(const UserRequest& r) {
  if (!r.escalated) return -1;
  return *r.escalated ? 1 : 0;
}

}  // namespace

Split split(const std::vector<UserRequest>& requests, double test_fraction,
            std::uint64_t seed) {
  if (requests.size() < 2) {
    throw Error(ErrorCode::kTooFewRecords, "split needs at least 2 records");
  }
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "test_fraction must lie in (0, 1)");
  }
  const std::size_t n = requests.size();
  auto total_test = static_cast<std::size_t>(std::llround(test_fraction * n));
  total_test = std::clamp<std::size_t>(total_test, 1, n - 1);

  std::map<int, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < n; ++i) strata[stratum(requests[i])].push_back(i);

  // Largest-remainder allocation of total_test across strata.
  struct Quota {
    int key;
    std::size_t base;
    double remainder;
  };
  std::vector<Quota> quotas;
  std::size_t assigned = 0;
  for (const auto& [key, members] : strata) {
    double exact = static_cast<double>(total_test) * members.size() / n;
    auto base = static_cast<std::size_t>(std::floor(exact));
    quotas.push_back({key, base, exact - static_cast<double>(base)});
    assigned += base;
  }
  std::vector<std::size_t> order(quotas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return quotas[a].remainder > quotas[b].remainder;
  });
  for (std::size_t k = 0; assigned < total_test && k < order.size(); ++k) {
    auto& q = quotas[order[k]];
    if (q.base < strata[q.key].size()) {
      ++q.base;
      ++assigned;
    }
  }

  Rng rng(seed);
  std::vector<bool> in_test(n, false);
  for (const auto& q : quotas) {
    auto members = strata[q.key];
    rng.shuffle(std::span<std::size_t>(members));
    for (std::size_t k = 0; k < q.base; ++k) in_test[members[k]] = true;
  }
  Split out;
  for (std::size_t i = 0; i < n; ++i) {
    (in_test[i] ? out.test : out.train).push_back(requests[i]);
  }
  return out;
}

std::vector<UserRequest> downsample_majority(const std::vector<UserRequest>& requests,
                                             double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0)) throw Error(ErrorCode::kInvalidArgument, "ratio must be positive");
  std::vector<std::size_t> positive, negative;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (!requests[i].escalated) {
      throw Error(ErrorCode::kInvalidArgument,
                  "request '" + requests[i].id + "' has no escalated label");
    }
    (*requests[i].escalated ? positive : negative).push_back(i);
  }
  if (positive.empty() || negative.empty()) {
    throw Error(ErrorCode::kSingleClass, "downsampling needs both escalation labels");
  }
  auto& majority = positive.size() > negative.size() ? positive : negative;
  const auto& minority = positive.size() > negative.size() ? negative : positive;
  auto keep = static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(minority.size()) + 1e-9));
  std::vector<bool> dropped(requests.size(), false);
  if (majority.size() > keep) {
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(majority));
    for (std::size_t k = keep; k < majority.size(); ++k) dropped[majority[k]] = true;
  }
  std::vector<UserRequest> out;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (!dropped[i]) out.push_back(requests[i]);
  }
  return out;
}

}  // namespace essmart::corpus
