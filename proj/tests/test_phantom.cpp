#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ert/phantom.hpp"

using namespace ert;

namespace {

double analytic_mass(const Phantom& p) {
    double m = 0.0;
    for (const Disk& d : p.disks())
        m += d.value * std::numbers::pi * d.radius * d.radius;
    return m;
}

double raster_mass(const GridImage& img) {
    double s = 0.0;
    for (double v : img.data())
        s += v;
    return s * img.geometry().dx() * img.geometry().dy();
}

}  // namespace

TEST_CASE("reference phantom is the symmetrised eight-disk object") {
    const Phantom p = reference_phantom();
    REQUIRE(p.disks().size() == 8);
    const auto upper = p.upper_disks();
    REQUIRE(upper.size() == 4);
    const double centers[4][2] = {{0.2, 0.4}, {0.0, 0.5}, {-0.3, 0.3}, {-0.5, 0.2}};
    const double radii[4] = {0.2, 0.15, 0.05, 0.05};
    const double values[4] = {1.0, 0.5, 1.5, 2.0};
    for (int i = 0; i < 4; ++i) {
        CHECK(upper[i].center[0] == centers[i][0]);
        CHECK(upper[i].center[1] == centers[i][1]);
        CHECK(upper[i].radius == radii[i]);
        CHECK(upper[i].value == values[i]);
        const Disk& mirror = p.disks()[2 * i + 1];
        CHECK(mirror.center[0] == centers[i][0]);
        CHECK(mirror.center[1] == -centers[i][1]);
        CHECK(mirror.radius == radii[i]);
        CHECK(mirror.value == values[i]);
    }
}

TEST_CASE("make_phantom validation") {
    CHECK(make_phantom({}).empty());
    CHECK(make_phantom({})(0.1, 0.2) == 0.0);

    const std::vector<Disk> crossing{{{0.0, 0.5}, 0.6, 1.0}};
    CHECK_THROWS_AS(make_phantom(crossing), ValidationError);

    const std::vector<Disk> touching{{{0.0, 0.3}, 0.3, 1.0}};
    CHECK_THROWS_AS(make_phantom(touching), ValidationError);

    const std::vector<Disk> mixed{{{0.0, 0.5}, 0.1, 1.0}, {{0.1, 0.1}, 0.2, 1.0}, {{0.3, -0.5}, 0.1, 1.0}};
    try {
        make_phantom(mixed);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("#1") != std::string::npos);
        CHECK(msg.find("#2") != std::string::npos);
        CHECK(msg.find("#0") == std::string::npos);
    }

    const std::vector<Disk> zero_radius{{{0.0, 0.5}, 0.0, 1.0}};
    CHECK_THROWS_AS(make_phantom(zero_radius), ValidationError);
}

TEST_CASE("eval_phantom examples") {
    const Phantom p = reference_phantom();
    // (0.2, 0.4) is the centre of disk 0; disk 1 at (0, 0.5) r = 0.15 is
    // 0.2236 away, the small disks are farther still.
    CHECK(eval_phantom(p, 0.2, 0.4) == 1.0);
    CHECK(eval_phantom(p, 0.2, -0.4) == 1.0);
    CHECK(eval_phantom(p, 10.0, 10.0) == 0.0);
    // boundary counts as inside
    CHECK(eval_phantom(p, -0.5, 0.25) == 2.0);
    // overlap of disks 0 and 1
    CHECK(eval_phantom(p, 0.05, 0.45) == 1.5);
}

TEST_CASE("phantoms are exactly even in x2") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uc(-1.0, 1.0);
    std::uniform_real_distribution<double> ur(0.01, 0.3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Disk> upper;
        for (int k = 0; k < 5; ++k) {
            const double r = ur(rng);
            upper.push_back({{uc(rng), r + 0.01 + std::abs(uc(rng))}, r, uc(rng)});
        }
        const Phantom p = make_phantom(upper);
        for (int s = 0; s < 200; ++s) {
            const double x1 = 1.5 * uc(rng);
            const double x2 = 1.5 * uc(rng);
            CHECK(p(x1, x2) == p(x1, -x2));
        }
    }
}

TEST_CASE("rasterize examples") {
    const ImageGeometry g = ImageGeometry::square(32);
    for (double v : rasterize(make_phantom({}), g).data())
        CHECK(v == 0.0);

    const std::vector<Disk> one{{{0.3, 0.7}, 0.1, 2.5}};
    const GridImage single = rasterize(make_phantom(one), ImageGeometry{1, 1, {0.2, 0.4}, {0.6, 0.8}});
    CHECK(single.at(0, 0) == 2.5);

    const Phantom p = reference_phantom();
    const GridImage img = rasterize(p, ImageGeometry::square(256), true);
    CHECK(std::abs(raster_mass(img) - analytic_mass(p)) < 0.02 * analytic_mass(p));
}

TEST_CASE("rasterization converges under refinement") {
    const Phantom p = reference_phantom();
    const GridImage coarse = rasterize(p, ImageGeometry::square(256), true);
    const GridImage fine = rasterize(p, ImageGeometry::square(512), true);
    double l1 = 0.0;
    for (std::size_t j = 0; j < 256; ++j)
        for (std::size_t i = 0; i < 256; ++i) {
            const double down = 0.25 * (fine.at(2 * i, 2 * j) + fine.at(2 * i + 1, 2 * j) +
                                        fine.at(2 * i, 2 * j + 1) + fine.at(2 * i + 1, 2 * j + 1));
            l1 += std::abs(down - coarse.at(i, j));
        }
    l1 *= coarse.geometry().dx() * coarse.geometry().dy();
    CHECK(l1 < 0.01 * analytic_mass(p));
}

TEST_CASE("validate_admissible examples") {
    const auto a = AnisotropyParams::planar(0.8, 1.0);
    const auto ref = validate_admissible(reference_phantom(), a);
    CHECK(ref.admissible);
    CHECK(ref.max_norm < 1.0);

    const std::vector<Disk> far{{{0.0, 2.0}, 0.1, 1.0}};
    const auto bad = validate_admissible(make_phantom(far), AnisotropyParams::identity(2));
    CHECK_FALSE(bad.admissible);
    CHECK(bad.max_norm > 3.0);

    const auto empty = validate_admissible(make_phantom({}), a);
    CHECK(empty.admissible);
    CHECK(empty.max_norm == 0.0);

    CHECK_THROWS_AS(validate_admissible(reference_phantom(), AnisotropyParams::identity(3)),
                    DomainError);
}

TEST_CASE("validate_admissible is monotone under shrinking radii") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uc(-0.9, 0.9);
    std::uniform_real_distribution<double> ur(0.02, 0.3);
    std::uniform_real_distribution<double> shrink(0.1, 1.0);
    const auto a = AnisotropyParams::planar(0.8, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Disk> upper;
        for (int k = 0; k < 3; ++k) {
            const double r = ur(rng);
            upper.push_back({{uc(rng), r + 0.01 + std::abs(uc(rng))}, r, 1.0});
        }
        const auto before = validate_admissible(make_phantom(upper), a);
        for (Disk& d : upper)
            d.radius *= shrink(rng);
        const auto after = validate_admissible(make_phantom(upper), a);
        if (before.admissible)
            CHECK(after.admissible);
        CHECK(after.max_norm <= before.max_norm + 1e-12);
    }
}

TEST_CASE("phantom JSON") {
    const auto j = nlohmann::json::parse(R"({"disks": [
        {"center": [0.2, 0.4], "radius": 0.2, "value": 1},
        {"center": [0.0, 0.5], "radius": 0.15, "value": 0.5}]})");
    const Phantom p = phantom_from_json(j);
    CHECK(p.disks().size() == 4);
    CHECK(p(0.2, -0.4) == 1.0);

    const Phantom again = phantom_from_json(phantom_to_json(reference_phantom()));
    REQUIRE(again.disks().size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(again.disks()[i].center == reference_phantom().disks()[i].center);
        CHECK(again.disks()[i].radius == reference_phantom().disks()[i].radius);
    }

    CHECK_THROWS_AS(phantom_from_json(nlohmann::json::parse(R"([{"center": [0, 0.1], "radius": 0.5, "value": 1}])")),
                    ValidationError);
    CHECK_THROWS_AS(phantom_from_json(nlohmann::json::parse(R"([{"center": [0], "radius": 0.1, "value": 1}])")),
                    ValidationError);
    CHECK_THROWS_AS(phantom_from_json(nlohmann::json::parse(R"([{"radius": 0.1, "value": 1}])")),
                    ValidationError);
    CHECK_THROWS_AS(load_phantom("/nonexistent/phantom.json"), IoError);
}
