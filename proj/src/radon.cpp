#include "ert/radon.hpp"

#include <cmath>

#include "ert/errors.hpp"

namespace ert {

RadonSinogram::RadonSinogram(std::size_t n_theta, SampleGrid s)
    : RadonSinogram(n_theta, s, std::vector<double>(n_theta * s.n, 0.0)) {}

RadonSinogram::RadonSinogram(std::size_t n_theta, SampleGrid s, std::vector<double> data)
    : n_theta_(n_theta), s_(s), data_(std::move(data)) {
    if (n_theta_ == 0 || s_.n == 0)
        throw ValidationError("radon sinogram: n_theta and ns must be positive");
    if (!(s_.hi >= s_.lo))
        throw ValidationError("radon sinogram: invalid s-range");
    if (data_.size() != n_theta_ * s_.n)
        throw ValidationError("radon sinogram: data length does not match grids");
}

RadonSinogram radon_forward(const PlanarField& k, std::size_t n_theta, const SampleGrid& s,
                            double step, double support_radius) {
    if (!(step > 0.0) || !(support_radius > 0.0))
        throw ValidationError("radon_forward: step and support radius must be positive");
    RadonSinogram out(n_theta, s);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(n_theta); ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        const double c = std::cos(out.theta(j));
        const double sn = std::sin(out.theta(j));
        for (std::size_t i = 0; i < s.n; ++i) {
            const double si = s.at(i);
            if (std::abs(si) >= support_radius)
                continue;
            const double half = std::sqrt(support_radius * support_radius - si * si);
            const auto m = static_cast<std::size_t>(std::ceil(2.0 * half / step));
            const double h = 2.0 * half / static_cast<double>(m);
            double acc = 0.0;
            for (std::size_t q = 0; q < m; ++q) {
                const double eta = -half + (static_cast<double>(q) + 0.5) * h;
                acc += k(si * c - eta * sn, si * sn + eta * c);
            }
            out.at(j, i) = acc * h;
        }
    }
    return out;
}

namespace {

double ram_lak_tap(long m, double ds) {
    if (m == 0)
        return 1.0 / (4.0 * ds * ds);
    if (m % 2 == 0)
        return 0.0;
    const double mm = static_cast<double>(m);
    return -1.0 / (std::numbers::pi * std::numbers::pi * mm * mm * ds * ds);
}

}  // namespace

std::vector<double> ramp_kernel(std::size_t len, double ds, RampWindow window) {
    const long half = static_cast<long>(len) - 1;
    std::vector<double> q(2 * len - 1);
    for (long m = -half; m <= half; ++m) {
        double v = ram_lak_tap(m, ds);
        if (window == RampWindow::hann)
            v = 0.25 * ram_lak_tap(m - 1, ds) + 0.5 * v + 0.25 * ram_lak_tap(m + 1, ds);
        q[static_cast<std::size_t>(m + half)] = v;
    }
    return q;
}

RadonSinogram ramp_filter(const RadonSinogram& sin, RampWindow window) {
    const std::size_t ns = sin.ns();
    if (ns < 2)
        throw ValidationError("ramp_filter: at least two s samples are required");
    const std::vector<double> q = ramp_kernel(ns, sin.s_grid().step(), window);
    const std::size_t center = ns - 1;
    RadonSinogram out(sin.n_theta(), sin.s_grid());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(sin.n_theta()); ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        const auto in = sin.row(j);
        auto dst = out.row(j);
        for (std::size_t i = 0; i < ns; ++i) {
            double acc = 0.0;
            for (std::size_t m = 0; m < ns; ++m)
                acc += q[i + center - m] * in[m];
            dst[i] = acc;
        }
    }
    return out;
}

Backprojection backproject_weighted(const RadonSinogram& sin, const ImageGeometry& geom,
                                    double weight) {
    Backprojection out{GridImage(geom), 0};
    const std::size_t n_theta = sin.n_theta();
    const std::size_t ns = sin.ns();
    const SampleGrid& s = sin.s_grid();
    const double ds = s.step();
    std::vector<double> cs(n_theta);
    std::vector<double> sn(n_theta);
    for (std::size_t j = 0; j < n_theta; ++j) {
        cs[j] = std::cos(sin.theta(j));
        sn[j] = std::sin(sin.theta(j));
    }

    std::size_t clipped = 0;
#pragma omp parallel for schedule(static) reduction(+ : clipped)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(geom.ny); ++jj) {
        const auto py = static_cast<std::size_t>(jj);
        const double z2 = geom.y_at(py);
        for (std::size_t px = 0; px < geom.nx; ++px) {
            const double z1 = geom.x_at(px);
            double acc = 0.0;
            for (std::size_t j = 0; j < n_theta; ++j) {
                const double p = z1 * cs[j] + z2 * sn[j];
                if (ns == 1) {
                    if (p == s.lo)
                        acc += sin.at(j, 0);
                    else
                        ++clipped;
                    continue;
                }
                const double f = (p - s.lo) / ds;
                if (f < 0.0 || f > static_cast<double>(ns - 1)) {
                    ++clipped;
                    continue;
                }
                const auto i0 = std::min(static_cast<std::size_t>(f), ns - 2);
                const double w = f - static_cast<double>(i0);
                acc += (1.0 - w) * sin.at(j, i0) + w * sin.at(j, i0 + 1);
            }
            out.image.at(px, py) = weight * acc;
        }
    }
    out.clipped = clipped;
    return out;
}

double fbp_weight(const RadonSinogram& sin) {
    return 0.5 * sin.theta_step() * sin.s_grid().step();
}

Backprojection backproject(const RadonSinogram& filtered, const ImageGeometry& geom) {
    return backproject_weighted(filtered, geom, fbp_weight(filtered));
}

Backprojection fbp(const RadonSinogram& sin, const ImageGeometry& geom, RampWindow window) {
    return backproject(ramp_filter(sin, window), geom);
}

}  // namespace ert
