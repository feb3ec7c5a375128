#pragma once

// Paraboloid coordinates that turn the ellipsoids |A^{-1}(x - (u,0))| = t into
// hyperplanes. The map m sends the region {z : |z'|^2 <= z_n} onto the closed
// upper half space {x : x_n >= 0}.

#include <cstddef>
#include <span>
#include <vector>

#include "ert/errors.hpp"

namespace ert {

/// Absolute tolerance used for membership tests at the boundary of the
/// paraboloid region and of the half space.
inline constexpr double kDomainTolerance = 1e-12;

/// Diagonal matrix A = diag(a_1, ..., a_n) with positive finite entries.
class AnisotropyParams {
public:
    explicit AnisotropyParams(std::vector<double> axes);

    static AnisotropyParams identity(std::size_t n);
    static AnisotropyParams planar(double a1, double a2);

    std::size_t dim() const { return a_.size(); }
    double operator[](std::size_t i) const { return a_[i]; }
    std::span<const double> axes() const { return a_; }

    /// a_1 a_2 ... a_n
    double product() const;
    /// a_n, the scale normal to the detector hyperplane.
    double normal_axis() const { return a_.back(); }
    double min_axis() const;
    double max_axis() const;

    bool operator==(const AnisotropyParams&) const = default;

private:
    std::vector<double> a_;
};

struct ParaboloidPoint {
    std::vector<double> z;
};

struct HalfSpacePoint {
    std::vector<double> x;
};

struct HyperplaneCoords {
    std::vector<double> normal;  // unit length
    double offset = 0.0;
};

/// (z', z_n) -> (Abar z', a_n sqrt(z_n - |z'|^2))
HalfSpacePoint forward_map(const ParaboloidPoint& p, const AnisotropyParams& a);

/// (x', x_n) -> (Abar^{-1} x', |A^{-1} x|^2)
ParaboloidPoint inverse_map(const HalfSpacePoint& p, const AnisotropyParams& a);

/// sqrt(1 + 4 |Abar^{-1} u|^2); u has n-1 components.
double focal_stretch(std::span<const double> u, const AnisotropyParams& a);

/// Hyperplane in z-space that is the image under the inverse map of the upper
/// half of the ellipsoid |A^{-1}(x - (u,0))| = t.
HyperplaneCoords ellipse_to_hyperplane(std::span<const double> u, double t,
                                       const AnisotropyParams& a);

}  // namespace ert
