#include "gdnls/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "gdnls/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; big-endian hosts are not "
              "supported");

namespace gdnls {

namespace {
constexpr char kMagic[6] = {'G', 'D', 'N', 'L', 'S', '1'};
}  // namespace

void write_snapshot(const std::string& path, const Field& f, double time,
                    double sigma) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open snapshot for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t n = static_cast<std::uint32_t>(f.size());
  const double length = f.grid()->length();
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(&length), 8);
  out.write(reinterpret_cast<const char*>(&time), 8);
  out.write(reinterpret_cast<const char*>(&sigma), 8);
  out.write(reinterpret_cast<const char*>(f.values().data()),
            static_cast<std::streamsize>(16 * f.size()));
  if (!out) throw ValidationError("snapshot write failed: " + path);
}

Field read_snapshot(const std::string& path, SnapshotMeta* meta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open snapshot: " + path);
  char magic[6];
  in.read(magic, 6);
  if (!in || std::memcmp(magic, kMagic, 6) != 0) {
    throw ValidationError("not a snapshot file (bad magic): " + path);
  }
  std::uint32_t n = 0;
  double length = 0.0, time = 0.0, sigma = 0.0;
  in.read(reinterpret_cast<char*>(&n), 4);
  in.read(reinterpret_cast<char*>(&length), 8);
  in.read(reinterpret_cast<char*>(&time), 8);
  in.read(reinterpret_cast<char*>(&sigma), 8);
  if (!in) throw ValidationError("snapshot header truncated: " + path);
  GridPtr grid = make_grid(static_cast<int>(n), length);
  std::vector<complex> values(n);
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(16) * n);
  if (!in || in.gcount() != static_cast<std::streamsize>(16) * n) {
    throw ValidationError("snapshot truncated: " + path);
  }
  if (meta) {
    meta->time = time;
    meta->sigma = sigma;
  }
  return Field(std::move(grid), std::move(values));
}

}  // namespace gdnls
