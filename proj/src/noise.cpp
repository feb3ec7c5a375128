#include "ert/noise.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace ert {

std::uint64_t splitmix64_word(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double normal_sample(std::uint64_t seed, std::uint64_t index) {
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    const std::uint64_t pair = index / 2;
    const double u1 = static_cast<double>((splitmix64_word(seed, 2 * pair) >> 11) + 1) * kScale;
    const double u2 = static_cast<double>(splitmix64_word(seed, 2 * pair + 1) >> 11) * kScale;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return index % 2 == 0 ? radius * std::cos(angle) : radius * std::sin(angle);
}

void add_noise_inplace(std::span<double> data, double ratio, std::uint64_t seed) {
    if (!(ratio >= 0.0) || !std::isfinite(ratio))
        throw ValidationError("add_noise: ratio must be a non-negative finite number");
    if (ratio == 0.0 || data.empty())
        return;

    std::vector<double> noise(data.size());
    double noise2 = 0.0;
    double data2 = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        noise[i] = normal_sample(seed, i);
        noise2 += noise[i] * noise[i];
        data2 += data[i] * data[i];
    }
    if (data2 == 0.0 || noise2 == 0.0)
        return;
    const double scale = ratio * std::sqrt(data2 / noise2);
    for (std::size_t i = 0; i < data.size(); ++i)
        data[i] += scale * noise[i];
}

EllipticalSinogram add_noise(EllipticalSinogram sin, double ratio, std::uint64_t seed) {
    add_noise_inplace(sin.data(), ratio, seed);
    return sin;
}

}  // namespace ert
