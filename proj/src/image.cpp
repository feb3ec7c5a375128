#include "ert/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ert {

namespace {

void check_geometry(const ImageGeometry& g) {
    if (g.nx == 0 || g.ny == 0)
        throw std::invalid_argument("image geometry: nx and ny must be positive");
    if (!(g.x.hi > g.x.lo) || !(g.y.hi > g.y.lo))
        throw std::invalid_argument("image geometry: ranges must be nondegenerate");
}

}  // namespace

GridImage::GridImage(const ImageGeometry& geom) : geom_(geom) {
    check_geometry(geom_);
    data_.assign(geom_.size(), 0.0);
}

GridImage::GridImage(const ImageGeometry& geom, std::vector<double> data)
    : geom_(geom), data_(std::move(data)) {
    check_geometry(geom_);
    if (data_.size() != geom_.size())
        throw std::invalid_argument("image: data length does not match geometry");
}

double GridImage::sample(double x, double y) const {
    if (!geom_.x.contains(x) || !geom_.y.contains(y))
        return 0.0;
    const double fx = std::clamp((x - geom_.x.lo) / geom_.dx() - 0.5, 0.0,
                                 static_cast<double>(geom_.nx - 1));
    const double fy = std::clamp((y - geom_.y.lo) / geom_.dy() - 0.5, 0.0,
                                 static_cast<double>(geom_.ny - 1));
    const auto i0 = static_cast<std::size_t>(fx);
    const auto j0 = static_cast<std::size_t>(fy);
    const std::size_t i1 = std::min(i0 + 1, geom_.nx - 1);
    const std::size_t j1 = std::min(j0 + 1, geom_.ny - 1);
    const double wx = fx - static_cast<double>(i0);
    const double wy = fy - static_cast<double>(j0);
    const double top = (1.0 - wx) * at(i0, j0) + wx * at(i1, j0);
    const double bottom = (1.0 - wx) * at(i0, j1) + wx * at(i1, j1);
    return (1.0 - wy) * top + wy * bottom;
}

}  // namespace ert
