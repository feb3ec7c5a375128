#include "ert/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace ert {

std::vector<Disk> Phantom::upper_disks() const {
    std::vector<Disk> out;
    out.reserve(disks_.size() / 2);
    for (std::size_t i = 0; i < disks_.size(); i += 2)
        out.push_back(disks_[i]);
    return out;
}

double Phantom::operator()(double x1, double x2) const {
    double sum = 0.0;
    for (const Disk& d : disks_)
        if (d.contains(x1, x2))
            sum += d.value;
    return sum;
}

Phantom make_phantom(std::span<const Disk> upper) {
    std::ostringstream bad;
    std::size_t n_bad = 0;
    for (std::size_t i = 0; i < upper.size(); ++i) {
        const Disk& d = upper[i];
        if (!(d.radius > 0.0) || !std::isfinite(d.radius) || !std::isfinite(d.value) ||
            !std::isfinite(d.center[0]) || !std::isfinite(d.center[1])) {
            bad << (n_bad++ ? ", " : "") << "#" << i << " (invalid radius/value)";
        } else if (!(d.center[1] > d.radius)) {
            bad << (n_bad++ ? ", " : "") << "#" << i << " (center (" << d.center[0] << ", "
                << d.center[1] << "), radius " << d.radius << ")";
        }
    }
    if (n_bad > 0)
        throw ValidationError("phantom: disks must lie strictly above the x1 axis: " + bad.str());

    Phantom p;
    p.disks_.reserve(2 * upper.size());
    for (const Disk& d : upper) {
        p.disks_.push_back(d);
        p.disks_.push_back(d.mirrored());
    }
    return p;
}

Phantom reference_phantom() {
    const std::array<Disk, 4> upper{{
        {{0.2, 0.4}, 0.2, 1.0},
        {{0.0, 0.5}, 0.15, 0.5},
        {{-0.3, 0.3}, 0.05, 1.5},
        {{-0.5, 0.2}, 0.05, 2.0},
    }};
    return make_phantom(upper);
}

double eval_phantom(const Phantom& p, double x1, double x2) { return p(x1, x2); }

GridImage rasterize(const Phantom& p, const ImageGeometry& geom, bool supersample) {
    GridImage img(geom);
    if (p.empty())
        return img;
    const int sub = supersample ? 4 : 1;
    const double dx = geom.dx();
    const double dy = geom.dy();
    const double inv = 1.0 / (sub * sub);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(geom.ny); ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        for (std::size_t i = 0; i < geom.nx; ++i) {
            if (sub == 1) {
                img.at(i, j) = p(geom.x_at(i), geom.y_at(j));
                continue;
            }
            const double x0 = geom.x.lo + static_cast<double>(i) * dx;
            const double y0 = geom.y.lo + static_cast<double>(j) * dy;
            double acc = 0.0;
            for (int b = 0; b < sub; ++b)
                for (int a = 0; a < sub; ++a)
                    acc += p(x0 + (a + 0.5) * dx / sub, y0 + (b + 0.5) * dy / sub);
            img.at(i, j) = acc * inv;
        }
    }
    return img;
}

AdmissibilityReport validate_admissible(const Phantom& p, const AnisotropyParams& a) {
    if (a.dim() != 2)
        throw DomainError("validate_admissible: only n = 2 is supported");
    // |m^{-1}(x)|^2 = (x1/a1)^2 + ((x1/a1)^2 + (x2/a2)^2)^2 has its only critical
    // point at the origin (a minimum), so its maximum over a disk is attained
    // on the boundary circle.
    constexpr int kBoundarySamples = 2048;
    AdmissibilityReport report;
    for (const Disk& d : p.disks()) {
        for (int m = 0; m < kBoundarySamples; ++m) {
            const double phi = 2.0 * std::numbers::pi * m / kBoundarySamples;
            const double x1 = d.center[0] + d.radius * std::cos(phi);
            const double x2 = std::abs(d.center[1] + d.radius * std::sin(phi));
            const ParaboloidPoint z = inverse_map({{x1, x2}}, a);
            report.max_norm = std::max(report.max_norm, std::hypot(z.z[0], z.z[1]));
        }
    }
    report.admissible = report.max_norm < 1.0;
    return report;
}

Phantom phantom_from_json(const nlohmann::json& j) {
    if (!j.is_array() && !(j.is_object() && j.contains("disks")))
        throw ValidationError("phantom spec: expected an array of disks or an object with 'disks'");
    const nlohmann::json& list = j.is_array() ? j : j.at("disks");
    if (!list.is_array())
        throw ValidationError("phantom spec: 'disks' must be an array");
    std::vector<Disk> upper;
    for (const auto& item : list) {
        try {
            const auto& c = item.at("center");
            if (!c.is_array() || c.size() != 2)
                throw ValidationError("phantom spec: center must be [x1, x2]");
            upper.push_back({{c[0].get<double>(), c[1].get<double>()},
                             item.at("radius").get<double>(),
                             item.at("value").get<double>()});
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(std::string("phantom spec: ") + e.what());
        }
    }
    return make_phantom(upper);
}

nlohmann::json phantom_to_json(const Phantom& p) {
    nlohmann::json disks = nlohmann::json::array();
    for (const Disk& d : p.upper_disks())
        disks.push_back({{"center", {d.center[0], d.center[1]}},
                         {"radius", d.radius},
                         {"value", d.value}});
    return {{"disks", disks}};
}

Phantom load_phantom(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open phantom spec: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("phantom spec " + path.string() + ": " + e.what());
    }
    return phantom_from_json(j);
}

}  // namespace ert
