#include "ert/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "ert/errors.hpp"

namespace ert {

std::vector<std::uint8_t> encode_pgm(const GridImage& img, std::optional<Interval> window) {
    const auto data = img.data();
    Interval w;
    if (window) {
        w = *window;
    } else {
        const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
        w = {*lo, *hi};
    }

    const std::string header =
        "P5\n" + std::to_string(img.nx()) + " " + std::to_string(img.ny()) + "\n65535\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + 2 * img.nx() * img.ny());
    const double span = w.hi - w.lo;
    for (std::size_t row = 0; row < img.ny(); ++row) {
        const std::size_t j = img.ny() - 1 - row;
        for (std::size_t i = 0; i < img.nx(); ++i) {
            std::uint16_t level = 0;
            if (span > 0.0) {
                const double t = std::clamp((img.at(i, j) - w.lo) / span, 0.0, 1.0);
                level = static_cast<std::uint16_t>(std::lround(t * 65535.0));
            }
            out.push_back(static_cast<std::uint8_t>(level >> 8));
            out.push_back(static_cast<std::uint8_t>(level & 0xFF));
        }
    }
    return out;
}

void render_pgm(const GridImage& img, const std::filesystem::path& path,
                std::optional<Interval> window) {
    const std::vector<std::uint8_t> bytes = encode_pgm(img, window);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("write failed: " + path.string());
}

}  // namespace ert
