#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ert {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool contains(double v) const { return v >= lo && v <= hi; }
    bool operator==(const Interval&) const = default;
};

/// Endpoint-inclusive uniform sampling of an interval: n nodes, the first at
/// lo and the last at hi. A single node sits at lo.
struct SampleGrid {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;

    double step() const { return n > 1 ? (hi - lo) / static_cast<double>(n - 1) : 0.0; }
    double at(std::size_t i) const {
        return n > 1 ? lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1) : lo;
    }
    bool operator==(const SampleGrid&) const = default;
};

/// Pixel-centred rectangular grid. Pixel (i, j) covers
/// [x.lo + i*dx, x.lo + (i+1)*dx] x [y.lo + j*dy, y.lo + (j+1)*dy].
struct ImageGeometry {
    std::size_t nx = 0;
    std::size_t ny = 0;
    Interval x;
    Interval y;

    static ImageGeometry square(std::size_t n, double half_width = 1.0) {
        return {n, n, {-half_width, half_width}, {-half_width, half_width}};
    }

    double dx() const { return x.width() / static_cast<double>(nx); }
    double dy() const { return y.width() / static_cast<double>(ny); }
    double x_at(std::size_t i) const { return x.lo + (static_cast<double>(i) + 0.5) * dx(); }
    double y_at(std::size_t j) const { return y.lo + (static_cast<double>(j) + 0.5) * dy(); }
    std::size_t size() const { return nx * ny; }

    bool operator==(const ImageGeometry&) const = default;
};

/// Samples of a scalar field at pixel centres, row-major with x fastest.
class GridImage {
public:
    GridImage() = default;
    explicit GridImage(const ImageGeometry& geom);
    GridImage(const ImageGeometry& geom, std::vector<double> data);

    const ImageGeometry& geometry() const { return geom_; }
    std::size_t nx() const { return geom_.nx; }
    std::size_t ny() const { return geom_.ny; }

    double& at(std::size_t i, std::size_t j) { return data_[j * geom_.nx + i]; }
    double at(std::size_t i, std::size_t j) const { return data_[j * geom_.nx + i]; }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    /// Bilinear interpolation between pixel centres. Inside the grid extent but
    /// beyond the outermost centres the nearest edge values are used; outside
    /// the extent the result is 0.
    double sample(double x, double y) const;

private:
    ImageGeometry geom_;
    std::vector<double> data_;
};

}  // namespace ert
