#pragma once

// Additive Gaussian noise scaled to a fixed fraction of the data norm.
//
// Generator "splitmix64-boxmuller-v1": the i-th 64-bit word is the SplitMix64
// finalizer applied to seed + (i + 1) * 0x9E3779B97F4A7C15. Words 2p and 2p+1
// feed one Box-Muller pair, u1 = (w >> 11 + 1) * 2^-53 in (0, 1] and
// u2 = (w >> 11) * 2^-53 in [0, 1); sample 2p takes the cosine branch and
// 2p+1 the sine branch. The stream depends only on (seed, index).

#include <cstdint>
#include <span>
#include <string_view>

#include "ert/forward.hpp"

namespace ert {

inline constexpr std::string_view kNoiseAlgorithm = "splitmix64-boxmuller-v1";

std::uint64_t splitmix64_word(std::uint64_t seed, std::uint64_t index);

/// Standard normal sample number `index` of the stream for `seed`.
double normal_sample(std::uint64_t seed, std::uint64_t index);

/// Adds noise with ||noise||_2 = ratio * ||data||_2. ratio = 0 leaves the data
/// untouched.
void add_noise_inplace(std::span<double> data, double ratio, std::uint64_t seed);

EllipticalSinogram add_noise(EllipticalSinogram sin, double ratio, std::uint64_t seed);

}  // namespace ert
