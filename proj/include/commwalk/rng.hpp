#pragma once

#include <cstdint>
#include <vector>

namespace commwalk {

// 64-bit finalizer with full avalanche (SplitMix64 output function).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// Counter-based generator: the value of stream `seed` at position `index`.
// Stateless, so the same (seed, index) pair yields the same value in every
// call and every process. Negative time indices are mapped through the
// unsigned representation and therefore occupy a range disjoint from small
// non-negative indices.
constexpr std::uint64_t rng_at(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed + index * 0x9E3779B97F4A7C15ULL);
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t v) noexcept {
  return static_cast<double>(v >> 11) * 0x1.0p-53;
}

inline double uniform_at(std::uint64_t seed, std::int64_t index) noexcept {
  return to_unit(rng_at(seed, static_cast<std::uint64_t>(index)));
}

// Child stream key. Distinct `stream` tags give effectively independent
// counter streams; used for per-run, per-component and per-purpose seeds.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(seed + mix64(stream + 0x632BE59BD9B4E019ULL));
}

// Sequential reader over one counter stream.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return rng_at(key_, counter_++); }

  double next_unit() { return to_unit(next_u64()); }

  // Uniform integer in [0, bound); bound > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace commwalk
