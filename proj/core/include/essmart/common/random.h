#ifndef ESSMART_COMMON_RANDOM_H_
#define ESSMART_COMMON_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace essmart {

// Seeded generator whose every derived quantity is computed here rather than
// through <random> distributions, whose outputs are implementation-defined.
// mt19937_64 itself is fully specified, so results match across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Independent child stream; advances this generator by one draw.
  Rng fork() { return Rng(next() ^ 0x9E3779B97F4A7C15ULL); }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace essmart

#endif  // ESSMART_COMMON_RANDOM_H_
