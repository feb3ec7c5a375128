#include "ert/inversion.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "ert/noise.hpp"

namespace ert {

namespace {

/// Fractional index of v on g; false when v lies outside [lo, hi].
bool locate(const SampleGrid& g, double v, std::size_t& i0, double& w) {
    if (!(v >= g.lo && v <= g.hi))
        return false;
    if (g.n == 1) {
        i0 = 0;
        w = 0.0;
        return true;
    }
    const double f = (v - g.lo) / g.step();
    i0 = std::min(static_cast<std::size_t>(f), g.n - 2);
    w = f - static_cast<double>(i0);
    return true;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void require_planar(const AnisotropyParams& a, const char* what) {
    if (a.dim() != 2)
        throw DomainError(std::string(what) + ": only n = 2 is supported");
}

}  // namespace

EllipticalDataSource EllipticalDataSource::analytic(Phantom p, AnisotropyParams a,
                                                    NodePolicy policy) {
    require_planar(a, "analytic source");
    return EllipticalDataSource(Analytic{std::move(p), std::move(a), policy});
}

EllipticalDataSource EllipticalDataSource::gridded(EllipticalSinogram sin) {
    return EllipticalDataSource(Gridded{std::move(sin)});
}

const AnisotropyParams& EllipticalDataSource::anisotropy() const {
    if (const auto* an = std::get_if<Analytic>(&impl_))
        return an->a;
    return std::get<Gridded>(impl_).sin.anisotropy();
}

EllipticalDataSource::Sample EllipticalDataSource::sample(double u, double t) const {
    if (const auto* an = std::get_if<Analytic>(&impl_))
        return {elliptical_forward_point(an->phantom, an->a, u, t, an->policy.count(t, an->a)),
                true};

    const EllipticalSinogram& sin = std::get<Gridded>(impl_).sin;
    std::size_t iu = 0;
    std::size_t it = 0;
    double wu = 0.0;
    double wt = 0.0;
    if (!locate(sin.u_grid(), u, iu, wu) || !locate(sin.t_grid(), t, it, wt))
        return {0.0, false};
    const std::size_t iu1 = std::min(iu + 1, sin.u_grid().n - 1);
    const std::size_t it1 = std::min(it + 1, sin.t_grid().n - 1);
    const double lo = (1.0 - wt) * sin.at(iu, it) + wt * sin.at(iu, it1);
    const double hi = (1.0 - wt) * sin.at(iu1, it) + wt * sin.at(iu1, it1);
    return {(1.0 - wu) * lo + wu * hi, true};
}

double EllipticalDataSource::t_extent(double u) const {
    if (const auto* an = std::get_if<Analytic>(&impl_)) {
        double extent = 0.0;
        const double lipschitz = 1.0 / an->a.min_axis();
        for (const Disk& d : an->phantom.disks())
            extent = std::max(extent, std::hypot((d.center[0] - u) / an->a[0],
                                                 d.center[1] / an->a[1]) +
                                          d.radius * lipschitz);
        return extent;
    }
    return std::get<Gridded>(impl_).sin.t_grid().hi;
}

std::optional<SampleGrid> EllipticalDataSource::native_t_grid() const {
    if (const auto* g = std::get_if<Gridded>(&impl_))
        return g->sin.t_grid();
    return std::nullopt;
}

Interval EllipticalDataSource::u_coverage() const {
    if (is_analytic())
        return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    const SampleGrid& g = std::get<Gridded>(impl_).sin.u_grid();
    return {g.lo, g.hi};
}

Interval EllipticalDataSource::t_coverage() const {
    if (is_analytic())
        return {0.0, std::numeric_limits<double>::infinity()};
    const SampleGrid& g = std::get<Gridded>(impl_).sin.t_grid();
    return {g.lo, g.hi};
}

InducedData sample_induced(const EllipticalDataSource& src, std::size_t n_theta,
                           const SampleGrid& s, double eps_theta) {
    const AnisotropyParams& a = src.anisotropy();
    require_planar(a, "reduce_to_radon");
    InducedData out{RadonSinogram(n_theta, s), 0, 0};
    RadonSinogram& values = out.values;

    std::size_t zeroed = 0;
    std::size_t clipped = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : zeroed, clipped)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(n_theta); ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        const double theta = values.theta(j);
        const double sn = std::sin(theta);
        if (std::abs(sn) < eps_theta) {
            ++zeroed;
            continue;
        }
        const double csc = 1.0 / sn;
        const double cot = std::cos(theta) / sn;
        const double u = -0.5 * a[0] * cot;
        for (std::size_t i = 0; i < s.n; ++i) {
            const double arg = s.at(i) * csc + 0.25 * cot * cot;
            if (!(arg > 0.0))
                continue;
            const auto smp = src.sample(u, std::sqrt(arg));
            if (!smp.covered)
                ++clipped;
            values.at(j, i) = smp.value;
        }
    }
    out.zeroed_rows = zeroed;
    out.clipped_samples = clipped;
    return out;
}

RadonSinogram weight_induced(const InducedData& induced, const AnisotropyParams& a) {
    require_planar(a, "weight_induced");
    const RadonSinogram& in = induced.values;
    const SampleGrid& s = in.s_grid();
    RadonSinogram out(in.n_theta(), s);
    for (std::size_t j = 0; j < in.n_theta(); ++j) {
        const double theta = in.theta(j);
        const double sn = std::sin(theta);
        if (sn == 0.0)
            continue;
        const double csc = 1.0 / sn;
        const double cot = std::cos(theta) / sn;
        for (std::size_t i = 0; i < s.n; ++i) {
            const double v = in.at(j, i);
            if (v == 0.0)
                continue;
            const double arg = s.at(i) * csc + 0.25 * cot * cot;
            if (!(arg > 0.0))
                continue;
            const double h = std::sqrt(arg);
            out.at(j, i) = std::abs(csc) / (2.0 * a[0] * a[1] * h) * v;
        }
    }
    return out;
}

Reduction reduce_to_radon(const EllipticalDataSource& src, std::size_t n_theta,
                          const SampleGrid& s, double eps_theta) {
    if (eps_theta <= 0.0)
        eps_theta = default_theta_guard(n_theta);
    InducedData induced = sample_induced(src, n_theta, s, eps_theta);
    RadonSinogram sin = weight_induced(induced, src.anisotropy());
    return {std::move(sin), induced.zeroed_rows, induced.clipped_samples};
}

GridImage lift_k_to_f(const GridImage& k, const AnisotropyParams& a, const ImageGeometry& target) {
    require_planar(a, "lift_k_to_f");
    GridImage f(target);
    const double a1 = a[0];
    const double a2 = a[1];
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(target.ny); ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        const double x2 = target.y_at(j);
        for (std::size_t i = 0; i < target.nx; ++i) {
            const double z1 = target.x_at(i) / a1;
            const double z2 = z1 * z1 + (x2 / a2) * (x2 / a2);
            f.at(i, j) = std::abs(x2) / a2 * k.sample(z1, z2);
        }
    }
    return f;
}

Reconstruction reconstruct(const EllipticalDataSource& src, const ReconstructionOptions& opt) {
    const AnisotropyParams& a = src.anisotropy();
    ReconstructionReport report;

    auto t0 = std::chrono::steady_clock::now();
    const double eps = opt.eps_theta > 0.0 ? opt.eps_theta : default_theta_guard(opt.n_theta);
    InducedData induced = sample_induced(src, opt.n_theta, opt.s, eps);
    if (opt.noise_ratio > 0.0)
        add_noise_inplace(induced.values.data(), opt.noise_ratio, opt.seed);
    const RadonSinogram radon = weight_induced(induced, a);
    report.zeroed_rows = induced.zeroed_rows;
    report.clipped_samples = induced.clipped_samples;
    report.seconds_reduce = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    Backprojection k = fbp(radon, opt.k_geometry, opt.window);
    report.clipped_backprojection = k.clipped;
    report.seconds_fbp = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    GridImage f = lift_k_to_f(k.image, a, opt.f_geometry);
    report.seconds_lift = seconds_since(t0);

    return {std::move(f), std::move(k.image), report};
}

double band_kernel(double d, double band) {
    const double x = band * d;
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        return band * band * (1.0 - x2 / 4.0 + x2 * x2 / 72.0 - x2 * x2 * x2 / 2880.0);
    }
    const double half = std::sin(0.5 * x);
    return 2.0 * (x * std::sin(x) - 2.0 * half * half) / (d * d);
}

double default_band(const EllipticalSinogram& sin) {
    const SampleGrid& t = sin.t_grid();
    if (t.n < 2)
        throw ValidationError("default_band: the t-grid needs at least two nodes");
    std::vector<double> gaps(t.n - 1);
    for (std::size_t i = 0; i + 1 < t.n; ++i)
        gaps[i] = t.at(i + 1) * t.at(i + 1) - t.at(i) * t.at(i);
    auto mid = gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2);
    std::nth_element(gaps.begin(), mid, gaps.end());
    return std::numbers::pi / *mid;
}

GridImage direct_invert(const EllipticalSinogram& sin, const ImageGeometry& geom, double band) {
    if (!(band > 0.0) || !std::isfinite(band))
        throw ValidationError("direct_invert: band limit must be positive");
    const AnisotropyParams& a = sin.anisotropy();
    const double a1 = a[0];
    const double a2 = a[1];
    const SampleGrid& ug = sin.u_grid();
    const SampleGrid& tg = sin.t_grid();

    auto trapezoid = [](const SampleGrid& g, std::size_t i) {
        if (g.n == 1)
            return 1.0;
        return (i == 0 || i + 1 == g.n) ? 0.5 * g.step() : g.step();
    };

    // Only nonzero samples contribute.
    struct Node {
        double alpha;
        double t2;
        double weight;
    };
    std::vector<Node> nodes;
    for (std::size_t iu = 0; iu < ug.n; ++iu)
        for (std::size_t it = 0; it < tg.n; ++it) {
            const double v = sin.at(iu, it);
            if (v != 0.0)
                nodes.push_back({ug.at(iu), tg.at(it) * tg.at(it),
                                 v * trapezoid(ug, iu) * trapezoid(tg, it)});
        }

    GridImage f(geom);
    const double scale = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi * a1 * a1 * a2 * a2);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(geom.ny); ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        const double x2 = geom.y_at(j);
        if (x2 == 0.0)
            continue;
        const double normal = (x2 / a2) * (x2 / a2);
        for (std::size_t i = 0; i < geom.nx; ++i) {
            const double x1 = geom.x_at(i);
            double acc = 0.0;
            for (const Node& n : nodes) {
                const double du = (n.alpha - x1) / a1;
                acc += band_kernel(du * du + normal - n.t2, band) * n.weight;
            }
            f.at(i, j) = std::abs(x2) * scale * acc;
        }
    }
    return f;
}

std::complex<double> projection_slice(const EllipticalDataSource& src, double alpha, double beta,
                                      const SampleGrid& t) {
    if (beta == 0.0 || !std::isfinite(beta))
        throw DomainError("projection_slice: beta must be nonzero");
    const AnisotropyParams& a = src.anisotropy();
    require_planar(a, "projection_slice");
    const double u = -a[0] * alpha / (2.0 * beta);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < t.n; ++i) {
        const double ti = t.at(i);
        const double v = src.sample(u, ti).value;
        if (v == 0.0)
            continue;
        const double w = (t.n == 1) ? 1.0 : ((i == 0 || i + 1 == t.n) ? 0.5 : 1.0) * t.step();
        acc += w * v * std::polar(1.0, -beta * ti * ti);
    }
    return std::polar(1.0 / a.product(), alpha * alpha / (4.0 * beta)) * acc;
}

std::complex<double> projection_slice(const EllipticalDataSource& src, double alpha, double beta,
                                      std::size_t nodes) {
    if (beta == 0.0 || !std::isfinite(beta))
        throw DomainError("projection_slice: beta must be nonzero");
    if (const auto grid = src.native_t_grid())
        return projection_slice(src, alpha, beta, *grid);
    const double u = -src.anisotropy()[0] * alpha / (2.0 * beta);
    return projection_slice(src, alpha, beta, SampleGrid{0.0, src.t_extent(u), nodes});
}

}  // namespace ert
