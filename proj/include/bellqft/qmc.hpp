#pragma once

// Randomized low-discrepancy point sets for the smearing integrals and the
// optimizer's multi-start sample.

#include <array>
#include <cstdint>
#include <span>

namespace bellqft::qmc {

inline constexpr unsigned kMaxDimensions = 12;

/// splitmix64 finalizer; used to derive independent seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic seed for (base seed, stream, replicate).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t replicate) noexcept {
  return mix64(mix64(seed ^ mix64(stream)) + replicate);
}

/// Raw Sobol' point (Joe-Kuo direction numbers), 32-bit fixed point.
std::uint32_t sobol_raw(std::uint32_t index, unsigned dim) noexcept;

/// Owen (nested uniform) scrambling of a 32-bit coordinate.
std::uint32_t owen_scramble(std::uint32_t x, std::uint32_t seed) noexcept;

/// Scrambled Sobol' sequence in up to kMaxDimensions dimensions, generated
/// sequentially in Gray-code order. Each (seed) gives an independent
/// randomization; coordinates lie strictly inside (0, 1).
class ScrambledSobol {
 public:
  ScrambledSobol(unsigned dimensions, std::uint64_t seed);

  unsigned dimensions() const noexcept { return dims_; }
  /// Writes the next point into `out` (size >= dimensions()).
  void next(std::span<double> out) noexcept;

 private:
  unsigned dims_;
  std::uint32_t index_ = 0;
  std::array<std::uint32_t, kMaxDimensions> state_{};
  std::array<std::uint32_t, kMaxDimensions> scramble_{};
};

/// Plain pseudo-random points (xoshiro256**), same interface as ScrambledSobol.
class PseudoRandom {
 public:
  PseudoRandom(unsigned dimensions, std::uint64_t seed);
  unsigned dimensions() const noexcept { return dims_; }
  void next(std::span<double> out) noexcept;

 private:
  std::uint64_t next_u64() noexcept;
  unsigned dims_;
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace bellqft::qmc
