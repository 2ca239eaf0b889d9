#pragma once

// Portable, reproducible randomness. The standard distributions are
// implementation-defined, so bounded integers and unit doubles are derived
// directly from engine output.

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <utility>

namespace aptrp {

// SplitMix64: cheap to seed, which makes one stream per Monte Carlo sample
// affordable. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Independent child seed for stream `index` of a run seeded with `seed`.
inline std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
  mix();
  return mix();
}

template <typename Engine>
double UniformUnit(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

template <typename Engine>
double UniformReal(Engine& engine, double lo, double hi) {
  return lo + (hi - lo) * UniformUnit(engine);
}

// Uniform integer in [0, bound).
template <typename Engine>
std::uint64_t UniformIndex(Engine& engine, std::uint64_t bound) {
  __extension__ using Wide = unsigned __int128;
  return static_cast<std::uint64_t>((static_cast<Wide>(engine()) * bound) >> 64);
}

// Uniform integer in [lo, hi].
template <typename Engine>
int UniformInt(Engine& engine, int lo, int hi) {
  return lo + static_cast<int>(
                  UniformIndex(engine, static_cast<std::uint64_t>(hi - lo + 1)));
}

template <typename Engine, typename T>
void Shuffle(Engine& engine, std::span<T> values) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::swap(values[i - 1], values[UniformIndex(engine, i)]);
  }
}

using Rng = std::mt19937_64;

}  // namespace aptrp
