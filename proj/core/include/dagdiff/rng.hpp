#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace dagdiff {

/// SplitMix64 finalizer; mixes a seed with stream/index tags into an
/// independent 64-bit seed.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
  std::uint64_t z = seed ^ (stream * 0x9E3779B97F4A7C15ULL) ^ (index * 0xD1B54A32D192ED03ULL);
  for (int round = 0; round < 2; ++round) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
  }
  return z;
}

/// Stream tags so that each stochastic stage draws from its own sequence.
enum class Stream : std::uint64_t {
  BasePool = 1,
  Pair = 2,
  Crossing = 3,
  RandomGT = 4,
  DepthBand = 5,
};

/// mt19937_64 with distributions implemented here rather than through
/// <random>'s, whose outputs differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0)
      : engine_(mix_seed(seed, static_cast<std::uint64_t>(stream), index)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi], inclusive. Rejection sampling keeps it unbiased.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t x = 0;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<int>(x % span);
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform_int(0, static_cast<int>(n) - 1)); }

  bool bernoulli(double p) { return uniform01() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
  }

  /// `count` distinct elements drawn uniformly without replacement, in draw order.
  template <class T>
  std::vector<T> sample(std::vector<T> pool, std::size_t count) {
    if (count > pool.size()) count = pool.size();
    for (std::size_t i = 0; i < count; ++i) std::swap(pool[i], pool[i + index(pool.size() - i)]);
    pool.resize(count);
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dagdiff
