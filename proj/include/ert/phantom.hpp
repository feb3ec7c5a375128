#pragma once

// Test objects: sums of weighted disk indicators, closed under the reflection
// (x1, x2) -> (x1, -x2).

#include <array>
#include <filesystem>
#include <span>
#include <vector>

#include <json.hpp>

#include "ert/errors.hpp"
#include "ert/geometry.hpp"
#include "ert/image.hpp"

namespace ert {

struct Disk {
    std::array<double, 2> center{};
    double radius = 0.0;
    double value = 0.0;

    /// Boundary counts as inside.
    bool contains(double x1, double x2) const {
        const double d1 = x1 - center[0];
        const double d2 = x2 - center[1];
        return d1 * d1 + d2 * d2 <= radius * radius;
    }
    Disk mirrored() const { return {{center[0], -center[1]}, radius, value}; }
};

class Phantom {
public:
    Phantom() = default;

    /// All disks, each upper disk immediately followed by its mirror image.
    std::span<const Disk> disks() const { return disks_; }
    /// The disks given at construction (upper half plane).
    std::vector<Disk> upper_disks() const;
    bool empty() const { return disks_.empty(); }

    double operator()(double x1, double x2) const;

private:
    friend Phantom make_phantom(std::span<const Disk> upper);
    std::vector<Disk> disks_;
};

/// Builds the reflection-closed phantom from disks lying strictly above the
/// x1 axis. Throws ValidationError naming every disk that touches or crosses
/// the axis.
Phantom make_phantom(std::span<const Disk> upper);

/// The eight-disk phantom used in the reference 2D experiments.
Phantom reference_phantom();

double eval_phantom(const Phantom& p, double x1, double x2);

/// Pixel-centre sampling; with `supersample` each pixel averages a 4x4
/// sub-grid of its own centres.
GridImage rasterize(const Phantom& p, const ImageGeometry& geom, bool supersample = false);

struct AdmissibilityReport {
    bool admissible = true;
    /// Largest |m^{-1}(x)| over sampled support points (0 for an empty phantom).
    double max_norm = 0.0;
};

/// Checks that every disk lies in the region where the paraboloid image of
/// the support stays inside the unit ball, so regular Radon data on s in
/// [-1, 1] captures everything.
AdmissibilityReport validate_admissible(const Phantom& p, const AnisotropyParams& a);

/// {"disks": [{"center": [x1, x2], "radius": r, "value": v}, ...]} or a bare
/// array of disks. Only upper disks are listed; mirrors are added.
Phantom phantom_from_json(const nlohmann::json& j);
nlohmann::json phantom_to_json(const Phantom& p);
Phantom load_phantom(const std::filesystem::path& path);

}  // namespace ert
