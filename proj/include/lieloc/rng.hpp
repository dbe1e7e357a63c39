#pragma once

// Counter-based random numbers. Every Gaussian draw is a pure function of
// (seed, stream, index), so trajectories, scans and initial states are
// reproducible without carrying generator state between threads.
//
// Generator: Threefry-2x32 with 20 rounds (Salmon et al., Random123), keyed by
// the 64-bit seed. Counter word = (stream << 62) | (index / 2). Each block
// yields two 32-bit uniforms u = (w + 0.5) / 2^32, mapped by Box-Muller to
// two standard normals; even indices take the cosine branch, odd the sine.

#include <array>
#include <cstdint>
#include <span>

namespace lieloc::rng {

std::array<std::uint32_t, 2> threefry2x32(std::array<std::uint32_t, 2> key,
                                          std::array<std::uint32_t, 2> counter);

enum class Stream : std::uint64_t {
  noise = 0,          // sNLSE Wiener increments, index = step * K + channel
  initial_state = 1,  // Haar initial states
  scan = 2,           // Haar samples in extremal scans
  auxiliary = 3,      // everything else (generic algebra elements, GCS params)
};

inline constexpr std::uint64_t kMaxIndex = (std::uint64_t{1} << 63) - 1;

double standard_normal(std::uint64_t seed, Stream stream, std::uint64_t index);

/// Fills out[k] = standard_normal(seed, stream, first + k), sharing each
/// Threefry block between its two outputs.
void fill_standard_normal(std::uint64_t seed, Stream stream, std::uint64_t first, std::span<double> out);

}  // namespace lieloc::rng
