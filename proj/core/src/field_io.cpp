#include "vvl/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "vvl/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "field_io assumes a little-endian host");

namespace vvl {

namespace {

constexpr char kMagic[4] = {'V', 'V', 'L', '1'};
constexpr uint32_t kKindScalar = 0;
constexpr uint32_t kKindVelocity = 1;

void write_header(std::ofstream& out, uint64_t n, uint32_t kind) {
  out.write(kMagic, 4);
  out.write(reinterpret_cast<const char*>(&n), 8);
  out.write(reinterpret_cast<const char*>(&kind), 4);
}

void write_grid(std::ofstream& out, const std::vector<double>& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

struct Header {
  uint64_t n;
  uint32_t kind;
};

Header read_header(std::ifstream& in, const std::filesystem::path& path) {
  char magic[4];
  Header h{};
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&h.n), 8);
  in.read(reinterpret_cast<char*>(&h.kind), 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw ConsistencyError("field_io: " + path.string() +
                           " is not a VVL1 snapshot");
  return h;
}

std::vector<double> read_grid(std::ifstream& in, uint64_t n,
                              const std::filesystem::path& path) {
  std::vector<double> v(n * n);
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (!in)
    throw ConsistencyError("field_io: truncated payload in " + path.string());
  return v;
}

}  // namespace

void write_field(const std::filesystem::path& path, const SpectralField& f) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("field_io: cannot open " + path.string());
  write_header(out, static_cast<uint64_t>(f.n()), kKindScalar);
  write_grid(out, f.values());
}

void write_field(const std::filesystem::path& path, const VelocityField& u) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("field_io: cannot open " + path.string());
  write_header(out, static_cast<uint64_t>(u.grid().n), kKindVelocity);
  write_grid(out, u.x.values());
  write_grid(out, u.y.values());
}

SpectralField read_scalar_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("field_io: cannot open " + path.string());
  Header h = read_header(in, path);
  if (h.kind != kKindScalar)
    throw ConsistencyError("field_io: " + path.string() +
                           " does not hold a scalar field");
  GridSpec grid(static_cast<int>(h.n));
  return SpectralField::from_values(grid, read_grid(in, h.n, path));
}

VelocityField read_velocity_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("field_io: cannot open " + path.string());
  Header h = read_header(in, path);
  if (h.kind != kKindVelocity)
    throw ConsistencyError("field_io: " + path.string() +
                           " does not hold a velocity field");
  GridSpec grid(static_cast<int>(h.n));
  auto vx = read_grid(in, h.n, path);
  auto vy = read_grid(in, h.n, path);
  return {SpectralField::from_values(grid, std::move(vx)),
          SpectralField::from_values(grid, std::move(vy))};
}

}  // namespace vvl
