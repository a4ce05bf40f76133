#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace stablefs {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream tags used to key derived seeds. Values are part of the
/// reproducibility contract; never renumber.
enum class SeedStream : std::uint64_t {
  HistogramRound = 1,
  CvFolds = 2,
  Split = 3,
  Repetition = 4,
  Synthetic = 5,
};

/// Child seed for (master, stream, index). Independent of evaluation order,
/// so rounds and repetitions can be scheduled on any number of workers.
constexpr std::uint64_t derive_seed(std::uint64_t master, SeedStream stream,
                                    std::uint64_t index) noexcept {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  return splitmix64(h ^ (index * 0xd1b54a32d192ed03ULL));
}

/// Seeded generator with platform-independent derived distributions.
/// std::mt19937_64 is fully specified by the standard; the std
/// distributions are not, so the ones needed here are implemented locally.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Unbiased integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal (Box-Muller, one draw per call).
  double normal();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace stablefs
