#include "ert/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "ert/errors.hpp"

namespace ert {

std::vector<std::uint8_t> make_mask(const ImageGeometry& geom, MaskKind kind,
                                    const Phantom* phantom) {
    std::vector<std::uint8_t> mask(geom.size(), kind == MaskKind::all ? 1 : 0);
    if (kind == MaskKind::all)
        return mask;
    if (phantom == nullptr)
        throw ValidationError("disk mask requires a phantom");
    for (std::size_t j = 0; j < geom.ny; ++j)
        for (std::size_t i = 0; i < geom.nx; ++i)
            for (const Disk& d : phantom->disks())
                if (d.contains(geom.x_at(i), geom.y_at(j))) {
                    mask[j * geom.nx + i] = 1;
                    break;
                }
    return mask;
}

std::vector<std::uint8_t> disk_interior_mask(const ImageGeometry& geom, const Phantom& phantom,
                                             std::size_t index, double margin_pixels) {
    const auto disks = phantom.disks();
    if (2 * index >= disks.size())
        throw ValidationError("disk_interior_mask: disk index out of range");
    const double margin = margin_pixels * std::max(geom.dx(), geom.dy());
    const Disk& upper = disks[2 * index];
    const Disk& lower = disks[2 * index + 1];
    const double inner = upper.radius - margin;

    std::vector<std::uint8_t> mask(geom.size(), 0);
    for (std::size_t j = 0; j < geom.ny; ++j) {
        for (std::size_t i = 0; i < geom.nx; ++i) {
            const double x = geom.x_at(i);
            const double y = geom.y_at(j);
            const bool in_upper = std::hypot(x - upper.center[0], y - upper.center[1]) <= inner;
            const bool in_lower = std::hypot(x - lower.center[0], y - lower.center[1]) <= inner;
            if (!in_upper && !in_lower)
                continue;
            bool isolated = true;
            for (std::size_t k = 0; k < disks.size() && isolated; ++k) {
                if (k / 2 == index)
                    continue;
                const Disk& d = disks[k];
                isolated = std::hypot(x - d.center[0], y - d.center[1]) > d.radius + margin;
            }
            if (isolated)
                mask[j * geom.nx + i] = 1;
        }
    }
    return mask;
}

MetricsReport compare(const GridImage& reference, const GridImage& test,
                      const std::vector<std::uint8_t>& mask, const Phantom* phantom) {
    if (!(reference.geometry() == test.geometry()))
        throw ValidationError("compare: image geometries differ");
    const std::size_t n = reference.geometry().size();
    if (!mask.empty() && mask.size() != n)
        throw ValidationError("compare: mask size does not match the images");

    const auto ref = reference.data();
    const auto tst = test.data();
    MetricsReport m;
    double diff2 = 0.0;
    double ref2 = 0.0;
    double peak = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!mask.empty() && mask[k] == 0)
            continue;
        const double d = tst[k] - ref[k];
        diff2 += d * d;
        ref2 += ref[k] * ref[k];
        m.max_abs = std::max(m.max_abs, std::abs(d));
        peak = std::max(peak, std::abs(ref[k]));
        ++m.pixels;
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (ref2 > 0.0)
        m.relative_l2 = std::sqrt(diff2 / ref2);
    else
        m.relative_l2 = diff2 == 0.0 ? 0.0 : inf;
    if (diff2 == 0.0)
        m.psnr_db = inf;
    else if (peak == 0.0)
        m.psnr_db = -inf;
    else
        m.psnr_db = 20.0 * std::log10(peak / std::sqrt(diff2 / static_cast<double>(m.pixels)));

    if (phantom != nullptr) {
        const auto upper = phantom->upper_disks();
        for (std::size_t d = 0; d < upper.size(); ++d) {
            const auto interior = disk_interior_mask(reference.geometry(), *phantom, d);
            DiskMean dm{upper[d], 0, 0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) {
                if (!interior[k])
                    continue;
                dm.reference_mean += ref[k];
                dm.test_mean += tst[k];
                ++dm.pixels;
            }
            if (dm.pixels > 0) {
                dm.reference_mean /= static_cast<double>(dm.pixels);
                dm.test_mean /= static_cast<double>(dm.pixels);
            }
            m.disk_means.push_back(dm);
        }
    }
    return m;
}

std::string format_metrics(const MetricsReport& m) {
    std::ostringstream out;
    out << std::setprecision(10);
    out << "pixels = " << m.pixels << "\n";
    out << "relative_l2 = " << m.relative_l2 << "\n";
    out << "max_abs = " << m.max_abs << "\n";
    out << "psnr_db = ";
    if (std::isinf(m.psnr_db))
        out << (m.psnr_db > 0 ? "inf" : "-inf");
    else
        out << m.psnr_db;
    out << "\n";
    for (std::size_t d = 0; d < m.disk_means.size(); ++d) {
        const DiskMean& dm = m.disk_means[d];
        out << "disk" << d << ".center = " << dm.disk.center[0] << "," << dm.disk.center[1] << "\n";
        out << "disk" << d << ".value = " << dm.disk.value << "\n";
        out << "disk" << d << ".pixels = " << dm.pixels << "\n";
        out << "disk" << d << ".reference_mean = " << dm.reference_mean << "\n";
        out << "disk" << d << ".test_mean = " << dm.test_mean << "\n";
    }
    return out.str();
}

}  // namespace ert
