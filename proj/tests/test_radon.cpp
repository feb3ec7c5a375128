#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "ert/radon.hpp"
#include "oracles.hpp"

using namespace ert;

namespace {

constexpr double kPi = std::numbers::pi;

// Analytic Radon data of a disk of radius r and value v centred at c.
RadonSinogram disk_sinogram(double c1, double c2, double r, double v, std::size_t nt,
                            const SampleGrid& s) {
    RadonSinogram sin(nt, s);
    for (std::size_t j = 0; j < nt; ++j) {
        const double th = sin.theta(j);
        const double proj = c1 * std::cos(th) + c2 * std::sin(th);
        for (std::size_t i = 0; i < s.n; ++i)
            sin.at(j, i) = v * oracle::disk_chord(s.at(i) - proj, r);
    }
    return sin;
}

// Relative L2 error over pixel centres inside the disk of radius `within`.
double rel_l2(const GridImage& test, const GridImage& ref, double within = 1e300) {
    const ImageGeometry& g = ref.geometry();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) {
            if (std::hypot(g.x_at(i), g.y_at(j)) >= within)
                continue;
            const double d = test.at(i, j) - ref.at(i, j);
            num += d * d;
            den += ref.at(i, j) * ref.at(i, j);
        }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("radon transform of a centred disk is its chord length") {
    const PlanarField k = [](double x, double y) { return x * x + y * y <= 0.25 ? 1.0 : 0.0; };
    const SampleGrid s{-1.0, 1.0, 9};
    const auto sin = radon_forward(k, 8, s, 1e-4, 1.0);
    for (std::size_t j = 0; j < 8; ++j)
        for (std::size_t i = 0; i < s.n; ++i)
            CHECK(sin.at(j, i) == doctest::Approx(oracle::disk_chord(s.at(i), 0.5)).epsilon(1e-3).scale(1.0));
    CHECK_THROWS_AS(radon_forward(k, 8, s, 0.0, 1.0), ValidationError);
}

TEST_CASE("radon data are even under (theta, s) -> (theta + pi, -s)") {
    const oracle::MollifiedDisk b{0.3, 0.2, 0.3, 1.0};
    const PlanarField k = [&](double x, double y) { return b.bump(x, y); };
    const SampleGrid s{-1.0, 1.0, 21};
    const auto sin = radon_forward(k, 16, s, 1e-3, 1.2);
    for (std::size_t j = 0; j < 8; ++j)
        for (std::size_t i = 0; i < s.n; ++i)
            CHECK(sin.at(j, i) == doctest::Approx(sin.at(j + 8, s.n - 1 - i)).epsilon(1e-9).scale(1.0));
}

TEST_CASE("ramp kernel values") {
    const double ds = 0.1;
    const auto q = ramp_kernel(4, ds);
    REQUIRE(q.size() == 7);
    CHECK(q[3] == doctest::Approx(1.0 / (4 * ds * ds)));
    CHECK(q[2] == doctest::Approx(-1.0 / (kPi * kPi * ds * ds)));
    CHECK(q[4] == q[2]);
    CHECK(q[1] == 0.0);
    CHECK(q[0] == doctest::Approx(-1.0 / (9 * kPi * kPi * ds * ds)));

    // long kernels sum to (almost) zero: the ramp kills DC
    const auto big = ramp_kernel(200001, 1.0);
    const double total = std::accumulate(big.begin(), big.end(), 0.0);
    CHECK(std::abs(total) < 1e-5);

    const auto h = ramp_kernel(4, ds, RampWindow::hann);
    CHECK(h[3] == doctest::Approx(0.5 * q[3] + 0.5 * q[2]));
    CHECK(h[2] == doctest::Approx(0.25 * q[3] + 0.5 * q[2] + 0.25 * q[1]));
}

TEST_CASE("filtering an impulse reproduces the kernel") {
    const SampleGrid s{-1.0, 1.0, 9};
    RadonSinogram imp(1, s);
    imp.at(0, 4) = 1.0;
    const auto out = ramp_filter(imp);
    const auto q = ramp_kernel(9, s.step());
    for (std::size_t i = 0; i < 9; ++i)
        CHECK(out.at(0, i) == doctest::Approx(q[i + 4]));

    CHECK_THROWS_AS(ramp_filter(RadonSinogram(1, SampleGrid{0, 0, 1})), ValidationError);

    // a constant row is (nearly) annihilated away from the ends
    const SampleGrid wide{-1.0, 1.0, 257};
    RadonSinogram constant_row(1, wide);
    for (double& v : constant_row.data())
        v = 3.0;
    const auto flat = ramp_filter(constant_row);
    double mean = 0.0;
    for (std::size_t i = 64; i < 193; ++i)
        mean += flat.at(0, i);
    mean /= 129.0;
    const double ds = wide.step();
    CHECK(std::abs(mean) < 1e-3 * 3.0 / (ds * ds));
    CHECK_THROWS_AS(ramp_filter(RadonSinogram(1, SampleGrid{0, 0, 1})), ValidationError);
}

TEST_CASE("hann filtering of a zero sinogram is zero") {
    RadonSinogram z(4, SampleGrid{-1, 1, 16});
    const auto out = ramp_filter(z, RampWindow::hann);
    for (double v : out.data())
        CHECK(v == 0.0);
}

TEST_CASE("FBP recovers a disk from analytic data") {
    const SampleGrid s{-1.0, 1.0, 256};
    const auto sin = disk_sinogram(0.1, -0.2, 0.35, 1.0, 256, s);
    const ImageGeometry g = ImageGeometry::square(256);
    const auto rec = fbp(sin, g);
    double inner = 0.0;
    std::size_t n_in = 0;
    double outer = 0.0;
    std::size_t n_out = 0;
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) {
            const double r = std::hypot(g.x_at(i) - 0.1, g.y_at(j) + 0.2);
            if (r < 0.3) {
                inner += rec.image.at(i, j);
                ++n_in;
            } else if (r > 0.4 && std::hypot(g.x_at(i), g.y_at(j)) < 0.9) {
                outer += rec.image.at(i, j) * rec.image.at(i, j);
                ++n_out;
            }
        }
    CHECK(inner / n_in == doctest::Approx(1.0).epsilon(0.05));
    CHECK(std::sqrt(outer / n_out) < 0.05);
    CHECK(fbp_weight(sin) == doctest::Approx(sin.theta_step() * s.step() / 2));

    const auto hann = fbp(sin, g, RampWindow::hann);
    CHECK(hann.image.at(141, 102) == doctest::Approx(1.0).epsilon(0.03));

    const auto zero = fbp(RadonSinogram(256, s), g);
    for (double v : zero.image.data())
        CHECK(v == 0.0);
}

TEST_CASE("rotating the data by a whole number of angular steps rotates the image") {
    const SampleGrid s{-1.0, 1.0, 128};
    const auto sin = disk_sinogram(0.3, 0.1, 0.2, 1.0, 128, s);
    // shift by a quarter turn
    RadonSinogram rot(128, s);
    for (std::size_t j = 0; j < 128; ++j)
        for (std::size_t i = 0; i < s.n; ++i)
            rot.at((j + 32) % 128, i) = sin.at(j, i);
    const ImageGeometry g{64, 64, {-1.0, 1.0}, {-1.0, 1.0}};
    const auto a = fbp(sin, g).image;
    const auto b = fbp(rot, g).image;
    // rotating by +90 degrees maps (x, y) -> (-y, x); on a centred even grid
    // pixel (i, j) goes to (63 - j, i)
    GridImage turned(g);
    for (std::size_t j = 0; j < 64; ++j)
        for (std::size_t i = 0; i < 64; ++i)
            turned.at(63 - j, i) = a.at(i, j);
    CHECK(rel_l2(b, turned) < 1e-12);
}

TEST_CASE("shifting the data by one angle rotates the image by one angular step") {
    const SampleGrid s{-1.0, 1.0, 256};
    const oracle::MollifiedDisk bump{0.3, 0.1, 0.4, 1.0};
    const auto sin = radon_forward([&](double x, double y) { return bump.bump(x, y); }, 256, s,
                                   1.0 / 512, 1.0);
    RadonSinogram shifted(256, s);
    for (std::size_t j = 0; j < 256; ++j)
        for (std::size_t i = 0; i < s.n; ++i)
            shifted.at((j + 1) % 256, i) = sin.at(j, i);
    const ImageGeometry g = ImageGeometry::square(256);
    const auto a = fbp(sin, g).image;
    const auto b = fbp(shifted, g).image;
    const double dth = sin.theta_step();
    GridImage rotated(g);
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) {
            const double x = g.x_at(i);
            const double y = g.y_at(j);
            rotated.at(i, j) = a.sample(std::cos(dth) * x + std::sin(dth) * y,
                                        -std::sin(dth) * x + std::cos(dth) * y);
        }
    CHECK(rel_l2(b, rotated, 0.95) < 0.02);
}

TEST_CASE("FBP of smooth data converges to the bump") {
    const oracle::MollifiedDisk b{0.2, -0.1, 0.5, 1.0};
    const PlanarField k = [&](double x, double y) { return b.bump(x, y); };
    auto run = [&](std::size_t n) {
        const SampleGrid s{-1.0, 1.0, n};
        const auto sin = radon_forward(k, n, s, 1.0 / 512, 1.0);
        const ImageGeometry g{n, n, {-1.0, 1.0}, {-1.0, 1.0}};
        const auto rec = fbp(sin, g).image;
        GridImage ref(g);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                ref.at(i, j) = b.bump(g.x_at(i), g.y_at(j));
        // pixels with |z| < 1 never leave the s-range; outside it the data
        // do not determine the image
        return rel_l2(rec, ref, 1.0);
    };
    const double e256 = run(256);
    CHECK(e256 < 0.02);
    const double e512 = run(512);
    CHECK(e512 < 0.01);
    CHECK(e512 < e256);
}

TEST_CASE("backprojection is the adjoint of the discrete projector") {
    // <R k, w> vs <k, R^T w> for a smooth k and random nonnegative w
    const oracle::MollifiedDisk b{-0.1, 0.2, 0.4, 1.0};
    const PlanarField k = [&](double x, double y) { return b.bump(x, y); };
    const SampleGrid s{-1.0, 1.0, 128};
    const std::size_t nt = 128;
    const auto rk = radon_forward(k, nt, s, 1.0 / 512, 1.0);
    RadonSinogram g(nt, s);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double& v : g.data())
        v = unit(rng);
    double lhs = 0.0;
    for (std::size_t q = 0; q < g.data().size(); ++q)
        lhs += rk.data()[q] * g.data()[q];
    lhs *= g.theta_step() * s.step();

    const ImageGeometry geom{256, 256, {-1.0, 1.0}, {-1.0, 1.0}};
    const auto bt = backproject_weighted(g, geom, g.theta_step()).image;
    double rhs = 0.0;
    for (std::size_t j = 0; j < geom.ny; ++j)
        for (std::size_t i = 0; i < geom.nx; ++i)
            rhs += b.bump(geom.x_at(i), geom.y_at(j)) * bt.at(i, j);
    rhs *= geom.dx() * geom.dy();
    CHECK(rhs == doctest::Approx(lhs).epsilon(0.01));
}

TEST_CASE("FBP is linear") {
    const SampleGrid s{-1.0, 1.0, 64};
    const auto a = disk_sinogram(0.1, 0.1, 0.3, 1.0, 64, s);
    const auto b = disk_sinogram(-0.2, 0.0, 0.2, 2.0, 64, s);
    RadonSinogram c(64, s);
    for (std::size_t q = 0; q < c.data().size(); ++q)
        c.data()[q] = 2.0 * a.data()[q] - 0.5 * b.data()[q];
    const ImageGeometry g{32, 32, {-1.0, 1.0}, {-1.0, 1.0}};
    const auto ra = fbp(a, g).image;
    const auto rb = fbp(b, g).image;
    const auto rc = fbp(c, g).image;
    for (std::size_t q = 0; q < rc.data().size(); ++q)
        CHECK(std::abs(rc.data()[q] - (2.0 * ra.data()[q] - 0.5 * rb.data()[q])) < 1e-12);
}

TEST_CASE("backprojection counts samples outside the s-range") {
    const SampleGrid s{-0.5, 0.5, 32};
    RadonSinogram z(16, s);
    const ImageGeometry g{8, 8, {-1.0, 1.0}, {-1.0, 1.0}};
    const auto bp = backproject(z, g);
    CHECK(bp.clipped > 0);
    const auto inside = backproject(RadonSinogram(16, SampleGrid{-2, 2, 32}), g);
    CHECK(inside.clipped == 0);
    for (double v : bp.image.data())
        CHECK(v == 0.0);
}
