#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ert/image.hpp"
#include "ert/phantom.hpp"

namespace ert {

/// Mean of the reference and of the test image over the interior of one
/// upper disk together with its mirror.
struct DiskMean {
    Disk disk;
    std::size_t pixels = 0;
    double reference_mean = 0.0;
    double test_mean = 0.0;
};

struct MetricsReport {
    std::size_t pixels = 0;     // pixels in the comparison mask
    double relative_l2 = 0.0;   // ||test - ref|| / ||ref||
    double max_abs = 0.0;
    double psnr_db = 0.0;       // +inf when the images agree exactly
    std::vector<DiskMean> disk_means;
};

enum class MaskKind { all, disks };

/// One byte per pixel, nonzero = compared. `disks` selects pixel centres
/// inside any disk of the phantom.
std::vector<std::uint8_t> make_mask(const ImageGeometry& geom, MaskKind kind,
                                    const Phantom* phantom = nullptr);

/// Interior of upper disk `index` and its mirror: centres within
/// radius - margin of the centre and farther than radius + margin from every
/// other disk. margin = margin_pixels * max(dx, dy).
std::vector<std::uint8_t> disk_interior_mask(const ImageGeometry& geom, const Phantom& phantom,
                                             std::size_t index, double margin_pixels = 2.0);

/// Metrics of `test` against `reference` over `mask` (empty = all pixels).
/// With a phantom, per-disk interior means are appended.
MetricsReport compare(const GridImage& reference, const GridImage& test,
                      const std::vector<std::uint8_t>& mask = {},
                      const Phantom* phantom = nullptr);

/// key = value lines; infinite PSNR is written as "inf".
std::string format_metrics(const MetricsReport& m);

}  // namespace ert
