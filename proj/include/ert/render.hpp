#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "ert/image.hpp"

namespace ert {

/// 16-bit binary PGM (P5, maxval 65535, big-endian samples). The top row is
/// the largest x2. Values are mapped linearly from [lo, hi] to [0, 65535] and
/// clamped; without a window the image range is used. A degenerate window
/// (lo == hi) renders every pixel as 0.
std::vector<std::uint8_t> encode_pgm(const GridImage& img, std::optional<Interval> window = {});

void render_pgm(const GridImage& img, const std::filesystem::path& path,
                std::optional<Interval> window = {});

}  // namespace ert
