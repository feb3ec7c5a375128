#pragma once

// Regular Radon transform on [0, 2 pi) x s-grid and its filtered
// backprojection inverse, e_theta = (cos theta, sin theta).

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "ert/image.hpp"

namespace ert {

/// Samples Rk(theta_j, s_i) with theta_j = 2 pi j / n_theta, theta-major:
/// data[j * ns + i].
class RadonSinogram {
public:
    RadonSinogram(std::size_t n_theta, SampleGrid s);
    RadonSinogram(std::size_t n_theta, SampleGrid s, std::vector<double> data);

    std::size_t n_theta() const { return n_theta_; }
    const SampleGrid& s_grid() const { return s_; }
    std::size_t ns() const { return s_.n; }
    double theta(std::size_t j) const {
        return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_theta_);
    }
    double theta_step() const { return 2.0 * std::numbers::pi / static_cast<double>(n_theta_); }

    double& at(std::size_t j, std::size_t i) { return data_[j * s_.n + i]; }
    double at(std::size_t j, std::size_t i) const { return data_[j * s_.n + i]; }
    std::span<double> row(std::size_t j) { return {data_.data() + j * s_.n, s_.n}; }
    std::span<const double> row(std::size_t j) const { return {data_.data() + j * s_.n, s_.n}; }
    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

private:
    std::size_t n_theta_;
    SampleGrid s_;
    std::vector<double> data_;
};

using PlanarField = std::function<double(double, double)>;

/// Line integrals of k by the midpoint rule along each line, with spacing at
/// most `step`, truncated to the disk of radius `support_radius`.
RadonSinogram radon_forward(const PlanarField& k, std::size_t n_theta, const SampleGrid& s,
                            double step, double support_radius);

enum class RampWindow { ram_lak, hann };

/// Band-limited ramp kernel q(m), m = -(len-1) .. len-1, stored at m + len - 1:
/// q(0) = 1/(4 ds^2), q(even != 0) = 0, q(odd) = -1/(pi^2 m^2 ds^2).
/// The Hann variant is q convolved with the taps (1/4, 1/2, 1/4).
std::vector<double> ramp_kernel(std::size_t len, double ds, RampWindow window = RampWindow::ram_lak);

/// Per-row linear convolution with the ramp kernel (no wrap-around).
RadonSinogram ramp_filter(const RadonSinogram& sin, RampWindow window = RampWindow::ram_lak);

struct Backprojection {
    GridImage image;
    std::size_t clipped = 0;  // (pixel, angle) pairs with z.e_theta outside the s-range
};

/// weight * sum_j row_j(z . e_theta_j), linear interpolation in s.
Backprojection backproject_weighted(const RadonSinogram& sin, const ImageGeometry& geom,
                                    double weight);

/// Weight that turns a ramp-filtered full-turn sinogram into the inverse:
/// dtheta * ds / 2 (each line is seen twice over [0, 2 pi)).
double fbp_weight(const RadonSinogram& sin);

Backprojection backproject(const RadonSinogram& filtered, const ImageGeometry& geom);

Backprojection fbp(const RadonSinogram& sin, const ImageGeometry& geom,
                   RampWindow window = RampWindow::ram_lak);

}  // namespace ert
