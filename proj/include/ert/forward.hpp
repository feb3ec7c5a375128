#pragma once

// Elliptical Radon transform
//
//   R f(u, t) = \int f(x) delta(|A^{-1}(x - (u,0))| - t) dx
//             = |a| t^{n-1} \int_{|y|=1} f(A y t + (u,0)) dS(y),
//
// evaluated by quadrature on the unit sphere (delta-measure convention, not
// arc length).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "ert/geometry.hpp"
#include "ert/image.hpp"
#include "ert/phantom.hpp"

namespace ert {

enum class ProjectionMode : std::uint8_t { quadrature = 0, pixel = 1 };

/// Samples of R f on a (u, t) grid, u-major: data[iu * nt + it].
class EllipticalSinogram {
public:
    EllipticalSinogram(AnisotropyParams a, SampleGrid u, SampleGrid t,
                       ProjectionMode mode = ProjectionMode::quadrature);
    EllipticalSinogram(AnisotropyParams a, SampleGrid u, SampleGrid t, ProjectionMode mode,
                       std::vector<double> data);

    const AnisotropyParams& anisotropy() const { return a_; }
    const SampleGrid& u_grid() const { return u_; }
    const SampleGrid& t_grid() const { return t_; }
    ProjectionMode mode() const { return mode_; }

    double& at(std::size_t iu, std::size_t it) { return data_[iu * t_.n + it]; }
    double at(std::size_t iu, std::size_t it) const { return data_[iu * t_.n + it]; }
    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

private:
    AnisotropyParams a_;
    SampleGrid u_;
    SampleGrid t_;
    ProjectionMode mode_;
    std::vector<double> data_;
};

/// A scalar field on R^n.
using Field = std::function<double(std::span<const double>)>;

/// max(720, ceil(4 pi t max(a_i) / pixel_size)) rounded up to a multiple of 4:
/// at least two nodes per pixel crossed by the ellipse, and a node set that is
/// symmetric under both axis reflections.
std::size_t default_node_count(double t, const AnisotropyParams& a, double pixel_size);

struct NodePolicy {
    std::size_t fixed = 0;  // 0 selects default_node_count
    double pixel_size = 2.0 / 256.0;

    std::size_t count(double t, const AnisotropyParams& a) const {
        return fixed ? fixed : default_node_count(t, a, pixel_size);
    }
};

/// Composite trapezoid over phi in [0, 2 pi) of a1 a2 t f(u + a1 t cos phi, a2 t sin phi).
template <class F>
double ellipse_quadrature(F&& f, double a1, double a2, double u, double t, std::size_t nodes) {
    if (t == 0.0 || nodes == 0)
        return 0.0;
    const double dphi = 2.0 * std::numbers::pi / static_cast<double>(nodes);
    const double r1 = a1 * t;
    const double r2 = a2 * t;
    double acc = 0.0;
    for (std::size_t k = 0; k < nodes; ++k) {
        const double phi = dphi * static_cast<double>(k);
        acc += f(u + r1 * std::cos(phi), r2 * std::sin(phi));
    }
    return a1 * a2 * t * dphi * acc;
}

/// General form for n in {2, 3}. For n = 3 the sphere is integrated with a
/// Gauss-Legendre rule in the polar cosine (max(nodes/2, 2) points) times a
/// trapezoid rule with `nodes` points in azimuth.
double elliptical_forward_point(const Field& f, const AnisotropyParams& a,
                                std::span<const double> u, double t, std::size_t nodes);

/// Disk-phantom form (n = 2). The integrand is piecewise constant in phi, so
/// the `nodes`-point scan only locates where the ellipse enters and leaves each
/// disk; every crossing is refined by bisection. Arcs shorter than one node
/// spacing can be missed. Disks too far from the ellipse are skipped.
double elliptical_forward_point(const Phantom& p, const AnisotropyParams& a, double u, double t,
                                std::size_t nodes);

EllipticalSinogram elliptical_sinogram(const Phantom& p, const AnisotropyParams& a,
                                       const SampleGrid& u, const SampleGrid& t,
                                       const NodePolicy& policy = {});

/// Discrete analogue used to mimic pixel-driven projectors: the ellipse is
/// stepped in its parameter and the value of every pixel hit is accumulated,
/// scaled by a1 a2 t dphi.
double pixel_forward_point(const GridImage& img, const AnisotropyParams& a, double u, double t);

EllipticalSinogram pixel_sinogram(const GridImage& img, const AnisotropyParams& a,
                                  const SampleGrid& u, const SampleGrid& t);

// -- bistatic acquisitions ---------------------------------------------------

struct BistaticRecord {
    double s = 0.0;                  // source position along x1
    double r = 0.0;                  // receiver position along x1
    std::vector<double> transverse;  // u_2, ... (n > 2 only)
    double t = 0.0;                  // travel time
    double g = 0.0;                  // measured value
};

struct ScatteredSample {
    std::vector<double> u;
    double t = 0.0;
    double g = 0.0;
};

struct BistaticIngest {
    double a = 0.0;  // (r - s) / t, shared by every record
    AnisotropyParams anisotropy;
    std::vector<ScatteredSample> samples;
};

inline constexpr double kBistaticTolerance = 1e-9;

/// Converts source/receiver/time records with r = s + a t into samples of the
/// elliptical transform with A = diag(1/2, sqrt(1 - a^2)/2, ...) and
/// u_1 = (s + r)/2.
BistaticIngest ingest_bistatic(std::span<const BistaticRecord> records);

/// Nearest-node averaging of scattered samples (n = 2); empty nodes are 0.
EllipticalSinogram bin_samples(const BistaticIngest& ingest, const SampleGrid& u,
                               const SampleGrid& t);

}  // namespace ert
