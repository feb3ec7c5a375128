#include <doctest.h>

#include <cmath>
#include <random>

#include "ert/geometry.hpp"

using namespace ert;

namespace {

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("anisotropy parameters reject non-positive or non-finite axes") {
    CHECK_THROWS_AS(AnisotropyParams({1.0}), DomainError);
    CHECK_THROWS_AS(AnisotropyParams({1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(AnisotropyParams({-0.5, 1.0}), DomainError);
    CHECK_THROWS_AS(AnisotropyParams({1.0, INFINITY}), DomainError);
    const auto a = AnisotropyParams::planar(0.8, 1.0);
    CHECK(a.product() == doctest::Approx(0.8));
    CHECK(a.normal_axis() == 1.0);
    // a_i > 1 is allowed
    CHECK_NOTHROW(AnisotropyParams({3.0, 7.0, 2.0}));
}

TEST_CASE("forward_map examples") {
    const auto id = AnisotropyParams::identity(2);
    auto x = forward_map({{0.0, 1.0}}, id);
    CHECK(x.x[0] == 0.0);
    CHECK(x.x[1] == 1.0);

    // boundary |z'|^2 = z_n goes to the hyperplane
    x = forward_map({{0.5, 0.25}}, id);
    CHECK(x.x[1] == 0.0);

    x = forward_map({{0.5, 0.5}}, AnisotropyParams::planar(0.8, 1.0));
    CHECK(x.x[0] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(x.x[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("forward_map domain errors respect the boundary tolerance") {
    const auto id = AnisotropyParams::identity(2);
    CHECK_THROWS_AS(forward_map({{1.0, 0.5}}, id), DomainError);
    CHECK_NOTHROW(forward_map({{1.0, 1.0 - 5e-13}}, id));
    CHECK_THROWS_AS(forward_map({{1.0, 1.0 - 5e-12}}, id), DomainError);
    CHECK_THROWS_AS(forward_map({{1.0, 2.0, 3.0}}, id), DomainError);
}

TEST_CASE("inverse_map examples") {
    const auto id = AnisotropyParams::identity(2);
    auto z = inverse_map({{0.0, 1.0}}, id);
    CHECK(z.z[0] == 0.0);
    CHECK(z.z[1] == 1.0);

    z = inverse_map({{0.4, 0.5}}, AnisotropyParams::planar(0.8, 1.0));
    CHECK(z.z[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(z.z[1] == doctest::Approx(0.5).epsilon(1e-15));

    const auto a3 = AnisotropyParams({0.5, 2.0, 1.5});
    z = inverse_map({{0.3, -0.4, 0.0}}, a3);
    CHECK(z.z[0] == doctest::Approx(0.6));
    CHECK(z.z[1] == doctest::Approx(-0.2));
    CHECK(z.z[2] == doctest::Approx(0.36 + 0.04));  // boundary of the paraboloid region

    CHECK_THROWS_AS(inverse_map({{0.0, -0.1}}, id), DomainError);
}

TEST_CASE("ellipse_to_hyperplane examples") {
    const auto id = AnisotropyParams::identity(2);
    const std::vector<double> zero{0.0};
    auto h = ellipse_to_hyperplane(zero, 1.0, id);
    CHECK(h.normal[0] == 0.0);
    CHECK(h.normal[1] == 1.0);
    CHECK(h.offset == 1.0);

    const std::vector<double> u{0.4};
    h = ellipse_to_hyperplane(u, 1.0, AnisotropyParams::planar(0.8, 1.0));
    CHECK(h.normal[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(h.normal[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(h.offset == doctest::Approx(0.75 / std::sqrt(2.0)).epsilon(1e-14));

    h = ellipse_to_hyperplane(zero, 0.0, id);
    CHECK(h.normal[1] == 1.0);
    CHECK(h.offset == 0.0);

    CHECK_THROWS_AS(ellipse_to_hyperplane(zero, -1.0, id), DomainError);
}

TEST_CASE("focal stretch is at least one, with equality only at u = 0") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ua(0.1, 10.0);
    std::uniform_real_distribution<double> uu(-5.0, 5.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto a = AnisotropyParams({ua(rng), ua(rng), ua(rng)});
        const std::vector<double> u{uu(rng), uu(rng)};
        CHECK(focal_stretch(u, a) > 1.0);
        const std::vector<double> zero{0.0, 0.0};
        CHECK(focal_stretch(zero, a) == 1.0);
    }
}

TEST_CASE("round trip inverse_map(forward_map(z)) = z") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ua(0.1, 10.0);
    std::uniform_real_distribution<double> uz(-3.0, 3.0);
    std::uniform_real_distribution<double> ugap(0.0, 4.0);
    for (std::size_t n : {2u, 3u, 5u}) {
        double worst = 0.0;
        for (int trial = 0; trial < 10000; ++trial) {
            std::vector<double> axes(n);
            for (double& v : axes)
                v = ua(rng);
            const AnisotropyParams a(axes);
            ParaboloidPoint z;
            z.z.resize(n);
            double tangential = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                z.z[i] = uz(rng);
                tangential += z.z[i] * z.z[i];
            }
            z.z[n - 1] = tangential + ugap(rng);
            const ParaboloidPoint back = inverse_map(forward_map(z, a), a);
            std::vector<double> diff(n);
            for (std::size_t i = 0; i < n; ++i)
                diff[i] = back.z[i] - z.z[i];
            worst = std::max(worst, norm(diff) / norm(z.z));
        }
        CAPTURE(n);
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("ellipsoids map to the stated hyperplanes") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ua(0.1, 10.0);
    std::uniform_real_distribution<double> uu(-2.0, 2.0);
    std::uniform_real_distribution<double> ut(0.0, 3.0);
    std::normal_distribution<double> gauss;
    for (std::size_t n : {2u, 3u, 5u}) {
        for (int c = 0; c < 20; ++c) {
            std::vector<double> axes(n);
            for (double& v : axes)
                v = ua(rng);
            const AnisotropyParams a(axes);
            std::vector<double> u(n - 1);
            for (double& v : u)
                v = uu(rng);
            const double t = ut(rng);
            const HyperplaneCoords h = ellipse_to_hyperplane(u, t, a);
            CHECK(std::abs(norm(h.normal) - 1.0) < 1e-12);
            for (int p = 0; p < 100; ++p) {
                std::vector<double> y(n);
                for (double& v : y)
                    v = gauss(rng);
                const double len = norm(y);
                HalfSpacePoint x;
                x.x.resize(n);
                for (std::size_t i = 0; i < n; ++i) {
                    const double yi = i + 1 == n ? std::abs(y[i]) : y[i];
                    x.x[i] = (i + 1 < n ? u[i] : 0.0) + a[i] * t * yi / len;
                }
                const ParaboloidPoint z = inverse_map(x, a);
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    dot += z.z[i] * h.normal[i];
                CHECK(std::abs(dot - h.offset) < 1e-10);
            }
        }
    }
}
