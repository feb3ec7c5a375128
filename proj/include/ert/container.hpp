#pragma once

// ERSG container: little-endian binary file holding one sinogram or image.
//
//   offset  size  field
//   0       4     magic "ERSG"
//   4       4     version (u32) = 1
//   8       1     kind (u8): 0 elliptical sinogram, 1 regular sinogram, 2 image
//   9       ...   kind header
//           ...   data, f64 values in the object's own layout
//
//   kind 0: nu u32, nt u32, u_lo u_hi t_lo t_hi f64, a1 a2 f64, mode u8;
//           nu*nt values, u-major
//   kind 1: n_theta u32, ns u32, s_lo s_hi f64; n_theta*ns values, theta-major
//   kind 2: nx u32, ny u32, x_lo x_hi y_lo y_hi f64; nx*ny values, x fastest

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ert/errors.hpp"
#include "ert/forward.hpp"
#include "ert/image.hpp"
#include "ert/radon.hpp"

namespace ert {

inline constexpr std::uint32_t kContainerVersion = 1;

enum class ContainerKind : std::uint8_t { elliptical = 0, radon = 1, image = 2 };

using ContainerObject = std::variant<EllipticalSinogram, RadonSinogram, GridImage>;

/// Malformed container; carries the byte offset and the field being decoded.
class ContainerError : public IoError {
public:
    ContainerError(const std::string& what, std::size_t offset, std::string field);

    std::size_t offset() const { return offset_; }
    const std::string& field() const { return field_; }

private:
    std::size_t offset_;
    std::string field_;
};

ContainerKind kind_of(const ContainerObject& obj);

std::vector<std::uint8_t> encode_container(const ContainerObject& obj);
ContainerObject decode_container(std::span<const std::uint8_t> bytes);

void write_container(const std::filesystem::path& path, const ContainerObject& obj);
ContainerObject read_container(const std::filesystem::path& path);

}  // namespace ert
