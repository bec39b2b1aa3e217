#pragma once

#include <filesystem>

#include "vvl/field.hpp"

namespace vvl {

/// Binary snapshot format, used for all field persistence:
///   bytes 0..3   magic "VVL1"
///   bytes 4..11  n as 8-byte little-endian unsigned
///   bytes 12..15 payload kind tag, 4-byte little-endian unsigned:
///                0 = scalar field (n*n doubles),
///                1 = velocity field (2 * n*n doubles, x component first)
///   payload      row-major 8-byte little-endian IEEE-754 grid values
void write_field(const std::filesystem::path& path, const SpectralField& f);
void write_field(const std::filesystem::path& path, const VelocityField& u);

SpectralField read_scalar_field(const std::filesystem::path& path);
VelocityField read_velocity_field(const std::filesystem::path& path);

}  // namespace vvl
