#ifndef MDRC_TESTS_SUPPORT_TEST_RNG_HPP_
#define MDRC_TESTS_SUPPORT_TEST_RNG_HPP_

#include <cstdint>

namespace mdrc::testing {

/// splitmix64 generator. Deterministic on every platform, unlike the
/// standard distributions, so seeded test data is reproducible anywhere.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace mdrc::testing

#endif  // MDRC_TESTS_SUPPORT_TEST_RNG_HPP_
