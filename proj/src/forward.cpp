#include "ert/forward.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace ert {

namespace {

void check_sinogram_grids(const AnisotropyParams& a, const SampleGrid& u, const SampleGrid& t) {
    if (a.dim() != 2)
        throw DomainError("elliptical sinogram: only n = 2 is supported");
    if (u.n == 0 || t.n == 0)
        throw ValidationError("elliptical sinogram: grids must have at least one node");
    if (!(t.lo >= 0.0) || !(t.hi >= t.lo) || !(u.hi >= u.lo))
        throw ValidationError("elliptical sinogram: invalid (u, t) ranges");
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
void gauss_legendre(std::size_t m, std::vector<double>& x, std::vector<double>& w) {
    x.assign(m, 0.0);
    w.assign(m, 0.0);
    for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(m) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = z;
            for (std::size_t k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (m == 1)
                p0 = 1.0;
            dp = static_cast<double>(m) * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16)
                break;
        }
        x[i] = -z;
        x[m - 1 - i] = z;
        w[i] = w[m - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

}  // namespace

EllipticalSinogram::EllipticalSinogram(AnisotropyParams a, SampleGrid u, SampleGrid t,
                                       ProjectionMode mode)
    : a_(std::move(a)), u_(u), t_(t), mode_(mode) {
    check_sinogram_grids(a_, u_, t_);
    data_.assign(u_.n * t_.n, 0.0);
}

EllipticalSinogram::EllipticalSinogram(AnisotropyParams a, SampleGrid u, SampleGrid t,
                                       ProjectionMode mode, std::vector<double> data)
    : a_(std::move(a)), u_(u), t_(t), mode_(mode), data_(std::move(data)) {
    check_sinogram_grids(a_, u_, t_);
    if (data_.size() != u_.n * t_.n)
        throw ValidationError("elliptical sinogram: data length does not match grids");
}

std::size_t default_node_count(double t, const AnisotropyParams& a, double pixel_size) {
    const double wanted = 4.0 * std::numbers::pi * t * a.max_axis() / pixel_size;
    if (!(wanted > 720.0))
        return 720;
    const auto n = static_cast<std::size_t>(std::ceil(wanted));
    return (n + 3) / 4 * 4;
}

double elliptical_forward_point(const Field& f, const AnisotropyParams& a,
                                std::span<const double> u, double t, std::size_t nodes) {
    const std::size_t n = a.dim();
    if (n != 2 && n != 3)
        throw DomainError("elliptical_forward_point: quadrature is implemented for n = 2, 3 only");
    if (u.size() != n - 1)
        throw DomainError("elliptical_forward_point: u must have n - 1 components");
    if (!(t >= 0.0))
        throw DomainError("elliptical_forward_point: t must be non-negative");
    if (t == 0.0 || nodes == 0)
        return 0.0;

    if (n == 2) {
        std::array<double, 2> x{};
        return ellipse_quadrature(
            [&](double x1, double x2) {
                x = {x1, x2};
                return f(x);
            },
            a[0], a[1], u[0], t, nodes);
    }

    const std::size_t polar = std::max<std::size_t>(nodes / 2, 2);
    std::vector<double> mu;
    std::vector<double> wmu;
    gauss_legendre(polar, mu, wmu);
    const double dpsi = 2.0 * std::numbers::pi / static_cast<double>(nodes);
    std::array<double, 3> x{};
    double acc = 0.0;
    for (std::size_t i = 0; i < polar; ++i) {
        const double ring = std::sqrt(std::max(0.0, 1.0 - mu[i] * mu[i]));
        double row = 0.0;
        for (std::size_t k = 0; k < nodes; ++k) {
            const double psi = dpsi * static_cast<double>(k);
            x = {u[0] + a[0] * t * ring * std::cos(psi), u[1] + a[1] * t * ring * std::sin(psi),
                 a[2] * t * mu[i]};
            row += f(x);
        }
        acc += wmu[i] * row;
    }
    return a.product() * t * t * dpsi * acc;
}

namespace {

// Crossing angle of the ellipse with the boundary of d inside [lo, hi], where
// the inside state at lo is `was_inside`.
double bisect_crossing(const Disk& d, double r1, double r2, double u, double lo, double hi,
                       bool was_inside) {
    for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const bool in = d.contains(u + r1 * std::cos(mid), r2 * std::sin(mid));
        (in == was_inside ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double elliptical_forward_point(const Phantom& p, const AnisotropyParams& a, double u, double t,
                                std::size_t nodes) {
    if (a.dim() != 2)
        throw DomainError("elliptical_forward_point: phantoms are planar (n = 2)");
    if (!(t >= 0.0))
        throw DomainError("elliptical_forward_point: t must be non-negative");
    if (t == 0.0 || nodes == 0)
        return 0.0;

    // |rho(x) - rho(c)| <= r / min(a) on a disk, rho(x) = |A^{-1}(x - (u,0))|.
    const double lipschitz = 1.0 / a.min_axis();
    std::vector<const Disk*> active;
    for (const Disk& d : p.disks()) {
        const double rho = std::hypot((d.center[0] - u) / a[0], d.center[1] / a[1]);
        if (std::abs(rho - t) <= d.radius * lipschitz)
            active.push_back(&d);
    }
    if (active.empty())
        return 0.0;

    // The integrand is piecewise constant in phi: scan for sign changes, then
    // measure each disk's arc from its bisected entry and exit angles.
    const double r1 = a[0] * t;
    const double r2 = a[1] * t;
    const double dphi = 2.0 * std::numbers::pi / static_cast<double>(nodes);
    std::vector<char> first(active.size());
    std::vector<char> prev(active.size());
    std::vector<double> measure(active.size(), 0.0);
    for (std::size_t i = 0; i < active.size(); ++i) {
        first[i] = prev[i] = active[i]->contains(u + r1, 0.0);
        if (first[i])
            measure[i] = 2.0 * std::numbers::pi;
    }
    for (std::size_t k = 1; k <= nodes; ++k) {
        const double phi = dphi * static_cast<double>(k);
        const double x1 = u + r1 * std::cos(phi);
        const double x2 = r2 * std::sin(phi);
        for (std::size_t i = 0; i < active.size(); ++i) {
            const bool cur = k == nodes ? first[i] : active[i]->contains(x1, x2);
            if (cur == static_cast<bool>(prev[i]))
                continue;
            const double cross = bisect_crossing(*active[i], r1, r2, u, phi - dphi, phi, prev[i]);
            measure[i] += prev[i] ? cross : -cross;  // exits add, entries subtract
            prev[i] = cur;
        }
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < active.size(); ++i)
        acc += active[i]->value * measure[i];
    return r1 * a[1] * acc;
}

EllipticalSinogram elliptical_sinogram(const Phantom& p, const AnisotropyParams& a,
                                       const SampleGrid& u, const SampleGrid& t,
                                       const NodePolicy& policy) {
    EllipticalSinogram sin(a, u, t, ProjectionMode::quadrature);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t iu = 0; iu < static_cast<std::ptrdiff_t>(u.n); ++iu) {
        const double uu = u.at(static_cast<std::size_t>(iu));
        for (std::size_t it = 0; it < t.n; ++it) {
            const double tt = t.at(it);
            sin.at(static_cast<std::size_t>(iu), it) =
                elliptical_forward_point(p, a, uu, tt, policy.count(tt, a));
        }
    }
    return sin;
}

double pixel_forward_point(const GridImage& img, const AnisotropyParams& a, double u, double t) {
    if (a.dim() != 2)
        throw DomainError("pixel_forward_point: only n = 2 is supported");
    if (!(t >= 0.0))
        throw DomainError("pixel_forward_point: t must be non-negative");
    if (t == 0.0)
        return 0.0;
    const ImageGeometry& g = img.geometry();
    const std::size_t nodes = default_node_count(t, a, std::min(g.dx(), g.dy()));
    return ellipse_quadrature(
        [&](double x1, double x2) {
            const double fx = std::floor((x1 - g.x.lo) / g.dx());
            const double fy = std::floor((x2 - g.y.lo) / g.dy());
            if (fx < 0.0 || fy < 0.0 || fx >= static_cast<double>(g.nx) ||
                fy >= static_cast<double>(g.ny))
                return 0.0;
            return img.at(static_cast<std::size_t>(fx), static_cast<std::size_t>(fy));
        },
        a[0], a[1], u, t, nodes);
}

EllipticalSinogram pixel_sinogram(const GridImage& img, const AnisotropyParams& a,
                                  const SampleGrid& u, const SampleGrid& t) {
    EllipticalSinogram sin(a, u, t, ProjectionMode::pixel);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t iu = 0; iu < static_cast<std::ptrdiff_t>(u.n); ++iu)
        for (std::size_t it = 0; it < t.n; ++it)
            sin.at(static_cast<std::size_t>(iu), it) =
                pixel_forward_point(img, a, u.at(static_cast<std::size_t>(iu)), t.at(it));
    return sin;
}

BistaticIngest ingest_bistatic(std::span<const BistaticRecord> records) {
    if (records.empty())
        throw ValidationError("ingest_bistatic: no records");
    const std::size_t transverse = records.front().transverse.size();
    double a_min = 0.0;
    double a_max = 0.0;
    std::vector<ScatteredSample> samples;
    samples.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const BistaticRecord& rec = records[i];
        if (!(rec.t > 0.0))
            throw ValidationError("ingest_bistatic: record " + std::to_string(i) +
                                  " has non-positive travel time");
        if (!(rec.r >= rec.s))
            throw ValidationError("ingest_bistatic: record " + std::to_string(i) +
                                  " has receiver before source (r < s)");
        if (rec.transverse.size() != transverse)
            throw ValidationError("ingest_bistatic: records disagree on dimension");
        const double a = (rec.r - rec.s) / rec.t;
        a_min = i == 0 ? a : std::min(a_min, a);
        a_max = i == 0 ? a : std::max(a_max, a);

        ScatteredSample smp;
        smp.u.push_back(0.5 * (rec.s + rec.r));
        smp.u.insert(smp.u.end(), rec.transverse.begin(), rec.transverse.end());
        smp.t = rec.t;
        smp.g = rec.g;
        samples.push_back(std::move(smp));
    }
    if (a_max - a_min > kBistaticTolerance) {
        std::ostringstream msg;
        msg << "ingest_bistatic: inconsistent focal ratio (r - s)/t across records: spread "
            << a_max - a_min << " in [" << a_min << ", " << a_max << "]";
        throw ValidationError(msg.str());
    }
    const double a = 0.5 * (a_min + a_max);
    if (!(a < 1.0))
        throw ValidationError("ingest_bistatic: (r - s)/t must be below 1 (degenerate ellipse)");

    std::vector<double> axes(transverse + 2, 0.5 * std::sqrt(1.0 - a * a));
    axes[0] = 0.5;
    return {a, AnisotropyParams(std::move(axes)), std::move(samples)};
}

EllipticalSinogram bin_samples(const BistaticIngest& ingest, const SampleGrid& u,
                               const SampleGrid& t) {
    EllipticalSinogram sin(ingest.anisotropy, u, t);
    std::vector<std::size_t> hits(u.n * t.n, 0);
    auto nearest = [](const SampleGrid& g, double v, std::size_t& idx) {
        if (g.n == 1) {
            idx = 0;
            return v == g.lo;
        }
        const double f = std::round((v - g.lo) / g.step());
        if (f < 0.0 || f > static_cast<double>(g.n - 1))
            return false;
        idx = static_cast<std::size_t>(f);
        return true;
    };
    for (const ScatteredSample& s : ingest.samples) {
        std::size_t iu = 0;
        std::size_t it = 0;
        if (!nearest(u, s.u[0], iu) || !nearest(t, s.t, it))
            continue;
        sin.at(iu, it) += s.g;
        ++hits[iu * t.n + it];
    }
    for (std::size_t k = 0; k < hits.size(); ++k)
        if (hits[k] > 1)
            sin.data()[k] /= static_cast<double>(hits[k]);
    return sin;
}

}  // namespace ert
