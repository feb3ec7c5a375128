#include "ert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace ert {

AnisotropyParams::AnisotropyParams(std::vector<double> axes) : a_(std::move(axes)) {
    if (a_.size() < 2)
        throw DomainError("anisotropy: dimension must be at least 2, got " +
                          std::to_string(a_.size()));
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (!std::isfinite(a_[i]) || a_[i] <= 0.0)
            throw DomainError("anisotropy: a_" + std::to_string(i + 1) +
                              " must be positive and finite");
    }
}

AnisotropyParams AnisotropyParams::identity(std::size_t n) {
    return AnisotropyParams(std::vector<double>(n, 1.0));
}

AnisotropyParams AnisotropyParams::planar(double a1, double a2) {
    return AnisotropyParams({a1, a2});
}

double AnisotropyParams::product() const {
    return std::accumulate(a_.begin(), a_.end(), 1.0, std::multiplies<>());
}

double AnisotropyParams::min_axis() const { return *std::min_element(a_.begin(), a_.end()); }

double AnisotropyParams::max_axis() const { return *std::max_element(a_.begin(), a_.end()); }

namespace {

void check_dim(std::size_t got, std::size_t want, const char* what) {
    if (got != want)
        throw DomainError(std::string(what) + ": expected " + std::to_string(want) +
                          " components, got " + std::to_string(got));
}

}  // namespace

HalfSpacePoint forward_map(const ParaboloidPoint& p, const AnisotropyParams& a) {
    const std::size_t n = a.dim();
    check_dim(p.z.size(), n, "forward_map");

    HalfSpacePoint out;
    out.x.resize(n);
    double tangential = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        tangential += p.z[i] * p.z[i];
        out.x[i] = a[i] * p.z[i];
    }
    const double gap = p.z[n - 1] - tangential;
    if (gap < -kDomainTolerance)
        throw DomainError("forward_map: point lies outside the paraboloid region (|z'|^2 - z_n = " +
                          std::to_string(-gap) + ")");
    out.x[n - 1] = a.normal_axis() * std::sqrt(std::max(gap, 0.0));
    return out;
}

ParaboloidPoint inverse_map(const HalfSpacePoint& p, const AnisotropyParams& a) {
    const std::size_t n = a.dim();
    check_dim(p.x.size(), n, "inverse_map");
    if (p.x[n - 1] < -kDomainTolerance)
        throw DomainError("inverse_map: x_n must be non-negative");

    ParaboloidPoint out;
    out.z.resize(n);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double scaled = p.x[i] / a[i];
        norm2 += scaled * scaled;
        if (i + 1 < n)
            out.z[i] = scaled;
    }
    out.z[n - 1] = norm2;
    return out;
}

double focal_stretch(std::span<const double> u, const AnisotropyParams& a) {
    check_dim(u.size(), a.dim() - 1, "focal_stretch");
    double norm2 = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double scaled = u[i] / a[i];
        norm2 += scaled * scaled;
    }
    return std::sqrt(1.0 + 4.0 * norm2);
}

HyperplaneCoords ellipse_to_hyperplane(std::span<const double> u, double t,
                                       const AnisotropyParams& a) {
    if (!(t >= 0.0))
        throw DomainError("ellipse_to_hyperplane: t must be non-negative");
    const double nu = focal_stretch(u, a);
    const std::size_t n = a.dim();

    HyperplaneCoords out;
    out.normal.resize(n);
    double focus2 = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double scaled = u[i] / a[i];
        focus2 += scaled * scaled;
        out.normal[i] = -2.0 * scaled / nu;
    }
    out.normal[n - 1] = 1.0 / nu;
    out.offset = (t * t - focus2) / nu;
    return out;
}

}  // namespace ert
