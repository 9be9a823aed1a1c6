#include "bellqft/qmc.hpp"

#include <bit>
#include <stdexcept>

namespace bellqft::qmc {
namespace {

struct DirectionSeed {
  unsigned s;
  unsigned a;
  std::array<unsigned, 5> m;
};

// new-joe-kuo-6.21201, dimensions 2..12 (dimension 1 is van der Corput).
constexpr std::array<DirectionSeed, kMaxDimensions - 1> kSeeds = {{
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
}};

using DirectionTable = std::array<std::array<std::uint32_t, 32>, kMaxDimensions>;

constexpr DirectionTable make_directions() {
  DirectionTable v{};
  for (unsigned i = 0; i < 32; ++i) v[0][i] = 1u << (31 - i);
  for (unsigned d = 1; d < kMaxDimensions; ++d) {
    const auto& seed = kSeeds[d - 1];
    for (unsigned i = 0; i < 32; ++i) {
      if (i < seed.s) {
        v[d][i] = static_cast<std::uint32_t>(seed.m[i]) << (31 - i);
      } else {
        std::uint32_t value = v[d][i - seed.s] ^ (v[d][i - seed.s] >> seed.s);
        for (unsigned k = 1; k < seed.s; ++k) {
          if ((seed.a >> (seed.s - 1 - k)) & 1u) value ^= v[d][i - k];
        }
        v[d][i] = value;
      }
    }
  }
  return v;
}

constexpr DirectionTable kDirections = make_directions();

constexpr std::uint32_t laine_karras(std::uint32_t x, std::uint32_t seed) noexcept {
  x += seed;
  x ^= x * 0x6c50b47cu;
  x ^= x * 0xb82f1e52u;
  x ^= x * 0xc7afe638u;
  x ^= x * 0x8d22f6e6u;
  return x;
}

std::uint32_t reverse_bits(std::uint32_t x) noexcept {
  x = ((x >> 1) & 0x55555555u) | ((x & 0x55555555u) << 1);
  x = ((x >> 2) & 0x33333333u) | ((x & 0x33333333u) << 2);
  x = ((x >> 4) & 0x0f0f0f0fu) | ((x & 0x0f0f0f0fu) << 4);
  x = ((x >> 8) & 0x00ff00ffu) | ((x & 0x00ff00ffu) << 8);
  return (x >> 16) | (x << 16);
}

constexpr double kTwoPowMinus32 = 1.0 / 4294967296.0;

}  // namespace

std::uint32_t sobol_raw(std::uint32_t index, unsigned dim) noexcept {
  std::uint32_t x = 0;
  for (unsigned bit = 0; index != 0; ++bit, index >>= 1) {
    if (index & 1u) x ^= kDirections[dim][bit];
  }
  return x;
}

std::uint32_t owen_scramble(std::uint32_t x, std::uint32_t seed) noexcept {
  return reverse_bits(laine_karras(reverse_bits(x), seed));
}

ScrambledSobol::ScrambledSobol(unsigned dimensions, std::uint64_t seed) : dims_(dimensions) {
  if (dimensions == 0 || dimensions > kMaxDimensions) {
    throw std::invalid_argument("ScrambledSobol: unsupported dimension count");
  }
  for (unsigned d = 0; d < dims_; ++d) {
    scramble_[d] = static_cast<std::uint32_t>(mix64(seed + 0x51ed27u * (d + 1)) >> 32);
  }
}

void ScrambledSobol::next(std::span<double> out) noexcept {
  // Gray-code update: the state after `index_` points is the raw Sobol'
  // point of gray(index_).
  for (unsigned d = 0; d < dims_; ++d) {
    const std::uint32_t scrambled = owen_scramble(state_[d], scramble_[d]);
    out[d] = (static_cast<double>(scrambled) + 0.5) * kTwoPowMinus32;
  }
  const unsigned bit = static_cast<unsigned>(std::countr_one(index_));
  ++index_;
  if (bit < 32) {
    for (unsigned d = 0; d < dims_; ++d) state_[d] ^= kDirections[d][bit];
  }
}

PseudoRandom::PseudoRandom(unsigned dimensions, std::uint64_t seed) : dims_(dimensions) {
  std::uint64_t x = seed;
  for (auto& word : s_) {
    x = mix64(x);
    word = x;
  }
}

std::uint64_t PseudoRandom::next_u64() noexcept {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

void PseudoRandom::next(std::span<double> out) noexcept {
  for (unsigned d = 0; d < dims_; ++d) {
    out[d] = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }
}

}  // namespace bellqft::qmc
