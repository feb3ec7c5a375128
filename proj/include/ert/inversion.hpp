#pragma once

// Inversion of the elliptical Radon transform in the plane.
//
// With k(z) = f(m(z)) / sqrt(z2 - z1^2), every ellipse with centre (u, 0)
// becomes a line in z-space and
//
//   2 Rk(e_theta, s) = |csc theta| / (a1 a2 h) * R f(-a1 cot(theta) / 2, h),
//   h(s, theta) = sqrt(s csc theta + cot^2(theta) / 4),
//
// whenever s csc theta > -cot^2(theta)/4 (the line misses supp k otherwise).
// f is recovered as f(x) = |x2| / a2 * k(x1/a1, (x1/a1)^2 + (x2/a2)^2).

#include <complex>
#include <cstdint>
#include <optional>
#include <variant>

#include "ert/forward.hpp"
#include "ert/radon.hpp"

namespace ert {

/// Elliptical data, either evaluated on demand from a phantom or looked up
/// in a sinogram with bilinear interpolation and zero extension.
class EllipticalDataSource {
public:
    struct Sample {
        double value = 0.0;
        bool covered = true;  // false: query fell outside the gridded coverage
    };

    static EllipticalDataSource analytic(Phantom p, AnisotropyParams a, NodePolicy policy = {});
    static EllipticalDataSource gridded(EllipticalSinogram sin);

    const AnisotropyParams& anisotropy() const;
    bool is_analytic() const { return std::holds_alternative<Analytic>(impl_); }

    Sample sample(double u, double t) const;

    /// Beyond this t the data vanish for the given u (analytic), or the last
    /// t node (gridded).
    double t_extent(double u) const;

    /// Coverage rectangle of a gridded source; infinite for analytic sources.
    Interval u_coverage() const;
    Interval t_coverage() const;
    /// The sinogram t-grid of a gridded source.
    std::optional<SampleGrid> native_t_grid() const;

private:
    struct Analytic {
        Phantom phantom;
        AnisotropyParams a;
        NodePolicy policy;
    };
    struct Gridded {
        EllipticalSinogram sin;
    };
    explicit EllipticalDataSource(std::variant<Analytic, Gridded> impl) : impl_(std::move(impl)) {}

    std::variant<Analytic, Gridded> impl_;
};

/// Elliptical values R f(u(theta, s), h(theta, s)) laid out on a regular
/// (theta, s) grid, before the Jacobian weighting.
struct InducedData {
    RadonSinogram values;
    std::size_t zeroed_rows = 0;      // rows with |sin theta| < eps_theta
    std::size_t clipped_samples = 0;  // gridded lookups outside coverage
};

/// Angular band around theta = 0, pi that is zeroed: 4 / n_theta.
inline double default_theta_guard(std::size_t n_theta) {
    return 4.0 / static_cast<double>(n_theta);
}

InducedData sample_induced(const EllipticalDataSource& src, std::size_t n_theta,
                           const SampleGrid& s, double eps_theta);

/// Multiplies each induced sample by |csc theta| / (2 a1 a2 h(s, theta)).
RadonSinogram weight_induced(const InducedData& induced, const AnisotropyParams& a);

struct Reduction {
    RadonSinogram sinogram;
    std::size_t zeroed_rows = 0;
    std::size_t clipped_samples = 0;
};

Reduction reduce_to_radon(const EllipticalDataSource& src, std::size_t n_theta,
                          const SampleGrid& s, double eps_theta = 0.0);

/// k(z) from f: f(a1 z1, a2 sqrt(z2 - z1^2)) / sqrt(z2 - z1^2), 0 off the
/// open paraboloid region.
template <class F>
double paraboloid_density(F&& f, double a1, double a2, double z1, double z2) {
    const double gap = z2 - z1 * z1;
    if (!(gap > 0.0))
        return 0.0;
    const double root = std::sqrt(gap);
    return f(a1 * z1, a2 * root) / root;
}

/// f(x) = |x2| / a2 * k(x1/a1, |A^{-1}x|^2), k bilinearly interpolated; points
/// mapping outside k's grid give 0.
GridImage lift_k_to_f(const GridImage& k, const AnisotropyParams& a, const ImageGeometry& target);

struct ReconstructionOptions {
    std::size_t n_theta = 256;
    SampleGrid s{-1.0, 1.0, 256};
    ImageGeometry k_geometry = ImageGeometry::square(256);
    ImageGeometry f_geometry = ImageGeometry::square(256);
    double eps_theta = 0.0;   // 0 selects default_theta_guard
    double noise_ratio = 0.0; // noise added to the induced elliptical samples
    std::uint64_t seed = 0;
    RampWindow window = RampWindow::ram_lak;
};

struct ReconstructionReport {
    std::size_t zeroed_rows = 0;
    std::size_t clipped_samples = 0;
    std::size_t clipped_backprojection = 0;
    double seconds_reduce = 0.0;
    double seconds_fbp = 0.0;
    double seconds_lift = 0.0;
};

struct Reconstruction {
    GridImage f;
    GridImage k;
    ReconstructionReport report;
};

/// reduce_to_radon -> fbp -> lift_k_to_f.
Reconstruction reconstruct(const EllipticalDataSource& src, const ReconstructionOptions& opt = {});

/// Truncation of \int_{-B}^{B} |beta| e^{i beta D} d beta:
/// 2B sin(BD)/D + 2(cos(BD) - 1)/D^2, with K_B(0) = B^2.
double band_kernel(double d, double band);

/// pi / median_i (t_{i+1}^2 - t_i^2).
double default_band(const EllipticalSinogram& sin);

/// f(x) = |x2| / (2 pi^2 a1^2 a2^2) * sum over the sinogram grid (trapezoid) of
/// K_B(D) R f(alpha, t), D = ((alpha - x1)/a1)^2 + (x2/a2)^2 - t^2.
GridImage direct_invert(const EllipticalSinogram& sin, const ImageGeometry& geom, double band);

/// k^(alpha, beta) = |a|^{-1} e^{i alpha^2/(4 beta)} \int_0^\infty R f(-a1 alpha/(2 beta), t)
/// e^{-i beta t^2} dt by the trapezoid rule on `t`.
std::complex<double> projection_slice(const EllipticalDataSource& src, double alpha, double beta,
                                      const SampleGrid& t);

/// As above on [0, t_extent(u)] with `nodes` nodes (analytic) or on the
/// sinogram's own t-grid (gridded).
std::complex<double> projection_slice(const EllipticalDataSource& src, double alpha, double beta,
                                      std::size_t nodes = 4097);

}  // namespace ert
