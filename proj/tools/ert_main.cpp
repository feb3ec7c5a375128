// ert: command line front end for the elliptical Radon transform library.
//
// Exit codes: 0 success, 1 invalid input, 2 file errors.

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ert/container.hpp"
#include "ert/errors.hpp"
#include "ert/forward.hpp"
#include "ert/inversion.hpp"
#include "ert/metrics.hpp"
#include "ert/noise.hpp"
#include "ert/phantom.hpp"
#include "ert/radon.hpp"
#include "ert/render.hpp"

using namespace ert;

namespace {

Interval parse_range(const std::string& text, const char* flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw ValidationError(std::string(flag) + ": expected LO,HI, got '" + text + "'");
    auto number = [&](std::string_view part) {
        double v = 0.0;
        const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || end != part.data() + part.size())
            throw ValidationError(std::string(flag) + ": not a number: '" + std::string(part) + "'");
        return v;
    };
    const std::string_view all(text);
    const Interval r{number(all.substr(0, comma)), number(all.substr(comma + 1))};
    if (!(r.lo <= r.hi))
        throw ValidationError(std::string(flag) + ": LO must not exceed HI");
    return r;
}

Phantom phantom_or_default(const std::string& path) {
    return path.empty() ? reference_phantom() : load_phantom(path);
}

template <class T>
T expect(ContainerObject obj, const std::string& path, const char* what) {
    if (auto* v = std::get_if<T>(&obj))
        return std::move(*v);
    throw ValidationError(path + ": expected " + what);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

struct PlanarFlags {
    double a1 = 0.8;
    double a2 = 1.0;
    CLI::Option* a1_opt = nullptr;
    CLI::Option* a2_opt = nullptr;

    void add(CLI::App* app) {
        a1_opt = app->add_option("--a1", a1, "semi-axis scale along x1")->capture_default_str();
        a2_opt = app->add_option("--a2", a2, "semi-axis scale along x2")->capture_default_str();
    }
    AnisotropyParams params() const { return AnisotropyParams::planar(a1, a2); }

    // Sinograms carry their own A; explicit flags must agree with it.
    void check(const AnisotropyParams& a) const {
        if ((a1_opt->count() && a1 != a[0]) || (a2_opt->count() && a2 != a[1]))
            throw ValidationError("--a1/--a2 disagree with the anisotropy stored in the input");
    }
};

ReconstructionOptions recon_options(std::size_t ntheta, std::size_t ns, const Interval& s,
                                    std::size_t size, bool hann) {
    ReconstructionOptions opt;
    opt.n_theta = ntheta;
    opt.s = {s.lo, s.hi, ns};
    opt.k_geometry = ImageGeometry::square(size);
    opt.f_geometry = ImageGeometry::square(size);
    opt.window = hann ? RampWindow::hann : RampWindow::ram_lak;
    return opt;
}

EllipticalDataSource make_source(const std::string& in, const std::string& spec,
                                 const PlanarFlags& planar) {
    if (!in.empty()) {
        auto sin = expect<EllipticalSinogram>(read_container(in), in, "an elliptical sinogram");
        planar.check(sin.anisotropy());
        return EllipticalDataSource::gridded(std::move(sin));
    }
    return EllipticalDataSource::analytic(phantom_or_default(spec), planar.params());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elliptical Radon transform: forward model, reduction and inversion"};
    app.require_subcommand(1);

    // phantom
    std::string spec;
    std::string out;
    std::size_t size = 256;
    bool supersample = false;
    auto* phantom_cmd = app.add_subcommand("phantom", "rasterize a disk phantom");
    phantom_cmd->add_option("--spec", spec, "phantom JSON (default: reference phantom)");
    phantom_cmd->add_option("--size", size)->capture_default_str();
    phantom_cmd->add_option("--out", out)->required();
    phantom_cmd->add_flag("--supersample", supersample, "4x4 supersampling");

    // forward
    PlanarFlags fwd_a;
    std::size_t nu = 256;
    std::size_t nt = 256;
    std::string u_range = "-1,1";
    std::string t_range = "0,2";
    std::string mode = "quadrature";
    auto* forward_cmd = app.add_subcommand("forward", "elliptical sinogram of a phantom");
    forward_cmd->add_option("--spec", spec);
    fwd_a.add(forward_cmd);
    forward_cmd->add_option("--nu", nu)->capture_default_str();
    forward_cmd->add_option("--nt", nt)->capture_default_str();
    forward_cmd->add_option("--u-range", u_range)->capture_default_str();
    forward_cmd->add_option("--t-range", t_range)->capture_default_str();
    forward_cmd->add_option("--mode", mode)
        ->check(CLI::IsMember({"quadrature", "pixel"}))
        ->capture_default_str();
    forward_cmd->add_option("--size", size, "raster size for pixel mode")->capture_default_str();
    forward_cmd->add_option("--out", out)->required();

    // noise
    std::string in;
    double ratio = 0.05;
    std::uint64_t seed = 0;
    auto* noise_cmd = app.add_subcommand("noise", "add Gaussian noise with a fixed norm ratio");
    noise_cmd->add_option("--in", in)->required();
    noise_cmd->add_option("--ratio", ratio)->capture_default_str();
    noise_cmd->add_option("--seed", seed)->capture_default_str();
    noise_cmd->add_option("--out", out)->required();

    // reduce
    PlanarFlags red_a;
    std::size_t ntheta = 256;
    std::size_t ns = 256;
    std::string s_range = "-1,1";
    auto* reduce_cmd = app.add_subcommand("reduce", "elliptical data to a regular Radon sinogram");
    auto* reduce_in = reduce_cmd->add_option("--in", in, "elliptical sinogram container");
    reduce_cmd->add_option("--spec", spec)->excludes(reduce_in);
    red_a.add(reduce_cmd);
    reduce_cmd->add_option("--ntheta", ntheta)->capture_default_str();
    reduce_cmd->add_option("--ns", ns)->capture_default_str();
    reduce_cmd->add_option("--s-range", s_range)->capture_default_str();
    reduce_cmd->add_option("--out", out)->required();

    // fbp
    bool hann = false;
    auto* fbp_cmd = app.add_subcommand("fbp", "filtered backprojection of a Radon sinogram");
    fbp_cmd->add_option("--in", in)->required();
    fbp_cmd->add_option("--size", size)->capture_default_str();
    fbp_cmd->add_flag("--hann", hann, "Hann-windowed ramp");
    fbp_cmd->add_option("--out", out)->required();

    // lift
    PlanarFlags lift_a;
    auto* lift_cmd = app.add_subcommand("lift", "recover f from the paraboloid density k");
    lift_cmd->add_option("--in", in)->required();
    lift_a.add(lift_cmd);
    lift_cmd->add_option("--size", size)->capture_default_str();
    lift_cmd->add_option("--out", out)->required();

    // reconstruct
    PlanarFlags rec_a;
    std::string report;
    double rec_noise = 0.0;
    auto* recon_cmd = app.add_subcommand("reconstruct", "reduce, filter, backproject and lift");
    auto* recon_in = recon_cmd->add_option("--in", in, "elliptical sinogram container");
    recon_cmd->add_option("--spec", spec)->excludes(recon_in);
    rec_a.add(recon_cmd);
    recon_cmd->add_option("--ntheta", ntheta)->capture_default_str();
    recon_cmd->add_option("--ns", ns)->capture_default_str();
    recon_cmd->add_option("--s-range", s_range)->capture_default_str();
    recon_cmd->add_option("--size", size)->capture_default_str();
    recon_cmd->add_option("--noise", rec_noise, "noise ratio on the sampled data")->capture_default_str();
    recon_cmd->add_option("--seed", seed)->capture_default_str();
    recon_cmd->add_flag("--hann", hann);
    recon_cmd->add_option("--out", out)->required();
    recon_cmd->add_option("--report", report);

    // direct
    PlanarFlags dir_a;
    double band = 0.0;
    std::string x_range = "-1,1";
    std::string y_range = "-1,1";
    auto* direct_cmd = app.add_subcommand("direct", "band-limited direct inversion");
    direct_cmd->add_option("--in", in)->required();
    dir_a.add(direct_cmd);
    direct_cmd->add_option("--size", size)->capture_default_str();
    direct_cmd->add_option("--band", band, "band limit B (0: pi / median t-step of t^2)")
        ->capture_default_str();
    direct_cmd->add_option("--x-range", x_range)->capture_default_str();
    direct_cmd->add_option("--y-range", y_range)->capture_default_str();
    direct_cmd->add_option("--out", out)->required();

    // compare
    std::string path_a;
    std::string path_b;
    std::string mask = "all";
    auto* compare_cmd = app.add_subcommand("compare", "error metrics of --b against --a");
    compare_cmd->add_option("--a", path_a, "reference image")->required();
    compare_cmd->add_option("--b", path_b, "test image")->required();
    compare_cmd->add_option("--mask", mask)->check(CLI::IsMember({"all", "disks"}))->capture_default_str();
    compare_cmd->add_option("--spec", spec, "phantom for the disk mask and disk means");
    compare_cmd->add_option("--report", report);

    // render
    std::string window;
    auto* render_cmd = app.add_subcommand("render", "write an image as 16-bit PGM");
    render_cmd->add_option("--in", in)->required();
    render_cmd->add_option("--out", out)->required();
    render_cmd->add_option("--window", window, "LO,HI (default: image range)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*phantom_cmd) {
            const Phantom p = phantom_or_default(spec);
            write_container(out, rasterize(p, ImageGeometry::square(size), supersample));
        } else if (*forward_cmd) {
            const Interval ur = parse_range(u_range, "--u-range");
            const Interval tr = parse_range(t_range, "--t-range");
            const SampleGrid ug{ur.lo, ur.hi, nu};
            const SampleGrid tg{tr.lo, tr.hi, nt};
            const Phantom p = phantom_or_default(spec);
            const AnisotropyParams a = fwd_a.params();
            if (mode == "pixel") {
                const GridImage img = rasterize(p, ImageGeometry::square(size));
                write_container(out, pixel_sinogram(img, a, ug, tg));
            } else {
                NodePolicy policy;
                policy.pixel_size = 2.0 / static_cast<double>(size);
                write_container(out, elliptical_sinogram(p, a, ug, tg, policy));
            }
        } else if (*noise_cmd) {
            ContainerObject obj = read_container(in);
            std::visit([&](auto& o) { add_noise_inplace(o.data(), ratio, seed); }, obj);
            write_container(out, obj);
        } else if (*reduce_cmd) {
            const Interval sr = parse_range(s_range, "--s-range");
            const auto src = make_source(in, spec, red_a);
            const Reduction r = reduce_to_radon(src, ntheta, {sr.lo, sr.hi, ns});
            write_container(out, r.sinogram);
            std::cout << "zeroed_rows = " << r.zeroed_rows << "\n"
                      << "clipped_samples = " << r.clipped_samples << "\n";
        } else if (*fbp_cmd) {
            const auto sin = expect<RadonSinogram>(read_container(in), in, "a Radon sinogram");
            const Backprojection b = fbp(sin, ImageGeometry::square(size),
                                         hann ? RampWindow::hann : RampWindow::ram_lak);
            write_container(out, b.image);
        } else if (*lift_cmd) {
            const auto k = expect<GridImage>(read_container(in), in, "an image");
            write_container(out, lift_k_to_f(k, lift_a.params(), ImageGeometry::square(size)));
        } else if (*recon_cmd) {
            const Interval sr = parse_range(s_range, "--s-range");
            const auto src = make_source(in, spec, rec_a);
            ReconstructionOptions opt = recon_options(ntheta, ns, sr, size, hann);
            opt.noise_ratio = rec_noise;
            opt.seed = seed;
            const Reconstruction rec = reconstruct(src, opt);
            write_container(out, rec.f);

            std::ostringstream rep;
            rep << "source = " << (src.is_analytic() ? "analytic" : "gridded") << "\n"
                << "a1 = " << fmt(src.anisotropy()[0]) << "\n"
                << "a2 = " << fmt(src.anisotropy()[1]) << "\n"
                << "ntheta = " << ntheta << "\n"
                << "ns = " << ns << "\n"
                << "s_range = " << fmt(sr.lo) << "," << fmt(sr.hi) << "\n"
                << "size = " << size << "\n"
                << "window = " << (hann ? "hann" : "ram-lak") << "\n"
                << "noise_ratio = " << fmt(rec_noise) << "\n"
                << "noise_algorithm = " << kNoiseAlgorithm << "\n"
                << "seed = " << seed << "\n"
                << "zeroed_rows = " << rec.report.zeroed_rows << "\n"
                << "clipped_samples = " << rec.report.clipped_samples << "\n"
                << "clipped_backprojection = " << rec.report.clipped_backprojection << "\n"
                << "seconds_reduce = " << rec.report.seconds_reduce << "\n"
                << "seconds_fbp = " << rec.report.seconds_fbp << "\n"
                << "seconds_lift = " << rec.report.seconds_lift << "\n";
            if (in.empty()) {
                const Phantom p = phantom_or_default(spec);
                const GridImage ref = rasterize(p, opt.f_geometry, true);
                rep << format_metrics(compare(ref, rec.f, {}, &p));
            }
            if (!report.empty())
                write_text(report, rep.str());
            else
                std::cout << rep.str();
        } else if (*direct_cmd) {
            const auto sin =
                expect<EllipticalSinogram>(read_container(in), in, "an elliptical sinogram");
            dir_a.check(sin.anisotropy());
            const Interval xr = parse_range(x_range, "--x-range");
            const Interval yr = parse_range(y_range, "--y-range");
            const double b = band > 0.0 ? band : default_band(sin);
            if (band < 0.0)
                throw ValidationError("--band must be positive (or 0 for the default)");
            write_container(out, direct_invert(sin, {size, size, xr, yr}, b));
            std::cout << "band = " << fmt(b) << "\n";
        } else if (*compare_cmd) {
            const auto a = expect<GridImage>(read_container(path_a), path_a, "an image");
            const auto b = expect<GridImage>(read_container(path_b), path_b, "an image");
            std::optional<Phantom> p;
            if (!spec.empty() || mask == "disks")
                p = phantom_or_default(spec);
            const auto m = make_mask(a.geometry(), mask == "disks" ? MaskKind::disks : MaskKind::all,
                                     p ? &*p : nullptr);
            const std::string text = format_metrics(compare(a, b, m, p ? &*p : nullptr));
            if (!report.empty())
                write_text(report, text);
            std::cout << text;
        } else if (*render_cmd) {
            const auto img = expect<GridImage>(read_container(in), in, "an image");
            std::optional<Interval> w;
            if (!window.empty())
                w = parse_range(window, "--window");
            render_pgm(img, out, w);
        }
    } catch (const IoError& e) {
        std::cerr << "ert: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ert: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
