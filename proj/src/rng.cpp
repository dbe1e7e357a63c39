#include "lieloc/rng.hpp"

#include <cmath>
#include <numbers>

namespace lieloc::rng {

namespace {

constexpr std::uint32_t rotl(std::uint32_t x, unsigned r) { return (x << r) | (x >> (32U - r)); }

std::array<double, 2> box_muller_pair(std::uint64_t seed, Stream stream, std::uint64_t pair) {
  const std::uint64_t ctr = (static_cast<std::uint64_t>(stream) << 62) | (pair & ((std::uint64_t{1} << 62) - 1));
  const auto w = threefry2x32({static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
                              {static_cast<std::uint32_t>(ctr), static_cast<std::uint32_t>(ctr >> 32)});
  constexpr double scale = 1.0 / 4294967296.0;
  const double u1 = (static_cast<double>(w[0]) + 0.5) * scale;
  const double u2 = (static_cast<double>(w[1]) + 0.5) * scale;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace

std::array<std::uint32_t, 2> threefry2x32(std::array<std::uint32_t, 2> key,
                                          std::array<std::uint32_t, 2> counter) {
  constexpr std::array<unsigned, 8> rotations{13, 15, 26, 6, 17, 29, 16, 24};
  const std::array<std::uint32_t, 3> ks{key[0], key[1], 0x1BD11BDAU ^ key[0] ^ key[1]};

  std::uint32_t x0 = counter[0] + ks[0];
  std::uint32_t x1 = counter[1] + ks[1];
  for (unsigned round = 0; round < 20; ++round) {
    x0 += x1;
    x1 = rotl(x1, rotations[round % 8]);
    x1 ^= x0;
    if (round % 4 == 3) {
      const unsigned s = round / 4 + 1;
      x0 += ks[s % 3];
      x1 += ks[(s + 1) % 3] + s;
    }
  }
  return {x0, x1};
}

double standard_normal(std::uint64_t seed, Stream stream, std::uint64_t index) {
  const auto pair = box_muller_pair(seed, stream, index / 2);
  return pair[index % 2];
}

void fill_standard_normal(std::uint64_t seed, Stream stream, std::uint64_t first, std::span<double> out) {
  std::size_t k = 0;
  while (k < out.size()) {
    const std::uint64_t index = first + k;
    const auto pair = box_muller_pair(seed, stream, index / 2);
    out[k++] = pair[index % 2];
    if (index % 2 == 0 && k < out.size()) out[k++] = pair[1];
  }
}

}  // namespace lieloc::rng
