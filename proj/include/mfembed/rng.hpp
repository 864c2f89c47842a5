#pragma once

#include <cstdint>
#include <random>

namespace mfembed {

// splitmix64 finalizer over a pair; used to derive independent stream keys.
constexpr std::uint64_t mix_seed(std::uint64_t key, std::uint64_t stream) noexcept {
  std::uint64_t z = key + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seeded random source with a platform-independent output sequence.
//
// All floating-point draws are built directly from the 64-bit engine output
// instead of <random> distributions, whose algorithms are implementation
// defined. fork() derives a child stream from the construction key only, so a
// child does not depend on how many values the parent has consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key), engine_(mix_seed(key, 0)) {}

  std::uint64_t key() const noexcept { return key_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in (0, 1].
  double uniform_open_closed() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  Rng fork(std::uint64_t stream) const { return Rng(mix_seed(key_, stream + 1)); }
  Rng fork(std::uint64_t a, std::uint64_t b) const { return fork(a).fork(b); }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
};

}  // namespace mfembed
