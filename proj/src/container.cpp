#include "ert/container.hpp"

#include <bit>
#include <fstream>
#include <iterator>
#include <sstream>

namespace ert {

ContainerError::ContainerError(const std::string& what, std::size_t offset, std::string field)
    : IoError(what), offset_(offset), field_(std::move(field)) {}

ContainerKind kind_of(const ContainerObject& obj) {
    return static_cast<ContainerKind>(obj.index());
}

namespace {

class Writer {
public:
    void bytes(const char* p, std::size_t n) { buf_.insert(buf_.end(), p, p + n); }
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i)
            buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void f64(double v) {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        for (int i = 0; i < 8; ++i)
            buf_.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
    }
    void f64s(std::span<const double> v) {
        for (double x : v)
            f64(x);
    }
    std::vector<std::uint8_t> take() { return std::move(buf_); }

private:
    std::vector<std::uint8_t> buf_;
};

std::uint32_t checked_u32(std::size_t v, const char* field) {
    if (v > 0xFFFFFFFFu)
        throw ValidationError(std::string("container: ") + field + " exceeds 32 bits");
    return static_cast<std::uint32_t>(v);
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> b) : b_(b) {}

    std::size_t offset() const { return pos_; }
    std::size_t remaining() const { return b_.size() - pos_; }

    void need(std::size_t n, const char* field) {
        if (remaining() < n) {
            std::ostringstream msg;
            msg << "container truncated: missing field '" << field << "' at byte offset " << pos_
                << " (need " << n << " bytes, have " << remaining() << ")";
            throw ContainerError(msg.str(), pos_, field);
        }
    }
    std::uint8_t u8(const char* field) {
        need(1, field);
        return b_[pos_++];
    }
    std::uint32_t u32(const char* field) {
        need(4, field);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(b_[pos_++]) << (8 * i);
        return v;
    }
    double f64(const char* field) {
        need(8, field);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(b_[pos_++]) << (8 * i);
        return std::bit_cast<double>(v);
    }
    std::vector<double> f64s(std::size_t count, const char* field) {
        if (count > remaining() / 8)
            need(count * 8, field);
        std::vector<double> out(count);
        for (double& v : out)
            v = f64(field);
        return out;
    }

private:
    std::span<const std::uint8_t> b_;
    std::size_t pos_ = 0;
};

std::size_t checked_count(std::uint32_t a, std::uint32_t b) {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(b);
}

template <class Build>
auto build_object(std::size_t header_end, Build&& build) {
    try {
        return build();
    } catch (const std::invalid_argument& e) {
        throw ContainerError(std::string("container: inconsistent header: ") + e.what(),
                             header_end, "header");
    } catch (const std::domain_error& e) {
        throw ContainerError(std::string("container: inconsistent header: ") + e.what(),
                             header_end, "header");
    }
}

}  // namespace

std::vector<std::uint8_t> encode_container(const ContainerObject& obj) {
    Writer w;
    w.bytes("ERSG", 4);
    w.u32(kContainerVersion);
    w.u8(static_cast<std::uint8_t>(kind_of(obj)));
    if (const auto* e = std::get_if<EllipticalSinogram>(&obj)) {
        w.u32(checked_u32(e->u_grid().n, "nu"));
        w.u32(checked_u32(e->t_grid().n, "nt"));
        w.f64(e->u_grid().lo);
        w.f64(e->u_grid().hi);
        w.f64(e->t_grid().lo);
        w.f64(e->t_grid().hi);
        w.f64(e->anisotropy()[0]);
        w.f64(e->anisotropy()[1]);
        w.u8(static_cast<std::uint8_t>(e->mode()));
        w.f64s(e->data());
    } else if (const auto* s = std::get_if<RadonSinogram>(&obj)) {
        w.u32(checked_u32(s->n_theta(), "n_theta"));
        w.u32(checked_u32(s->ns(), "ns"));
        w.f64(s->s_grid().lo);
        w.f64(s->s_grid().hi);
        w.f64s(s->data());
    } else {
        const auto& img = std::get<GridImage>(obj);
        const ImageGeometry& g = img.geometry();
        w.u32(checked_u32(g.nx, "nx"));
        w.u32(checked_u32(g.ny, "ny"));
        w.f64(g.x.lo);
        w.f64(g.x.hi);
        w.f64(g.y.lo);
        w.f64(g.y.hi);
        w.f64s(img.data());
    }
    return w.take();
}

ContainerObject decode_container(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    r.need(4, "magic");
    if (!(bytes[0] == 'E' && bytes[1] == 'R' && bytes[2] == 'S' && bytes[3] == 'G'))
        throw ContainerError("container: bad magic (expected \"ERSG\") at byte offset 0", 0, "magic");
    (void)r.u32("magic");
    const std::size_t version_at = r.offset();
    const std::uint32_t version = r.u32("version");
    if (version != kContainerVersion)
        throw ContainerError("container: unsupported version " + std::to_string(version) +
                                 " at byte offset " + std::to_string(version_at),
                             version_at, "version");
    const std::size_t kind_at = r.offset();
    const std::uint8_t kind = r.u8("kind");

    auto finish = [&](auto obj) -> ContainerObject {
        if (r.remaining() != 0)
            throw ContainerError("container: " + std::to_string(r.remaining()) +
                                     " trailing bytes after data at byte offset " +
                                     std::to_string(r.offset()),
                                 r.offset(), "data");
        return obj;
    };

    switch (kind) {
        case static_cast<std::uint8_t>(ContainerKind::elliptical): {
            const std::uint32_t nu = r.u32("nu");
            const std::uint32_t nt = r.u32("nt");
            const double u_lo = r.f64("u_lo");
            const double u_hi = r.f64("u_hi");
            const double t_lo = r.f64("t_lo");
            const double t_hi = r.f64("t_hi");
            const double a1 = r.f64("a1");
            const double a2 = r.f64("a2");
            const std::size_t mode_at = r.offset();
            const std::uint8_t mode = r.u8("mode");
            if (mode > 1)
                throw ContainerError("container: unknown projection mode " + std::to_string(mode),
                                     mode_at, "mode");
            const std::size_t header_end = r.offset();
            std::vector<double> data = r.f64s(checked_count(nu, nt), "data");
            return finish(build_object(header_end, [&] {
                return EllipticalSinogram(AnisotropyParams::planar(a1, a2), {u_lo, u_hi, nu},
                                          {t_lo, t_hi, nt}, static_cast<ProjectionMode>(mode),
                                          std::move(data));
            }));
        }
        case static_cast<std::uint8_t>(ContainerKind::radon): {
            const std::uint32_t n_theta = r.u32("n_theta");
            const std::uint32_t ns = r.u32("ns");
            const double s_lo = r.f64("s_lo");
            const double s_hi = r.f64("s_hi");
            const std::size_t header_end = r.offset();
            std::vector<double> data = r.f64s(checked_count(n_theta, ns), "data");
            return finish(build_object(header_end, [&] {
                return RadonSinogram(n_theta, {s_lo, s_hi, ns}, std::move(data));
            }));
        }
        case static_cast<std::uint8_t>(ContainerKind::image): {
            const std::uint32_t nx = r.u32("nx");
            const std::uint32_t ny = r.u32("ny");
            const double x_lo = r.f64("x_lo");
            const double x_hi = r.f64("x_hi");
            const double y_lo = r.f64("y_lo");
            const double y_hi = r.f64("y_hi");
            const std::size_t header_end = r.offset();
            std::vector<double> data = r.f64s(checked_count(nx, ny), "data");
            return finish(build_object(header_end, [&] {
                return GridImage(ImageGeometry{nx, ny, {x_lo, x_hi}, {y_lo, y_hi}},
                                 std::move(data));
            }));
        }
        default:
            throw ContainerError("container: unsupported kind " + std::to_string(kind) +
                                     " at byte offset " + std::to_string(kind_at),
                                 kind_at, "kind");
    }
}

void write_container(const std::filesystem::path& path, const ContainerObject& obj) {
    const std::vector<std::uint8_t> bytes = encode_container(obj);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("write failed: " + path.string());
}

ContainerObject read_container(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open for reading: " + path.string());
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                          std::istreambuf_iterator<char>());
    return decode_container(bytes);
}

}  // namespace ert
