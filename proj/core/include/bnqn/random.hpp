#ifndef BNQN_RANDOM_HPP
#define BNQN_RANDOM_HPP

#include <cstdint>
#include <random>

namespace bnqn {

/// SplitMix64 finalizer. Used to derive independent per-point / per-trial seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seeded generator. The only stateful object in the library; confine each
/// instance to a single thread.
///
/// Doubles are produced from the top 53 bits of the engine output rather than
/// through std::uniform_real_distribution, so streams are identical across
/// standard library implementations.
class SeededRandomSource {
 public:
  explicit SeededRandomSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bnqn

#endif  // BNQN_RANDOM_HPP
