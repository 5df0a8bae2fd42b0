#include "nsalpha/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include "nsalpha/errors.hpp"

namespace nsalpha {

namespace {

constexpr char kMagic[8] = {'N', 'S', 'A', 'L', 'P', 'H', 'A', '\0'};
constexpr std::size_t kHeaderBytes = 8 + 4 + 4 + 8 + 8 + 4 + 4 + 8;

template <class T>
void put(std::vector<unsigned char>& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.insert(out.end(), bytes, bytes + sizeof(T));
}

template <class T>
T take(const unsigned char*& p) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  p += sizeof(T);
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

std::vector<unsigned char> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open snapshot '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

SnapshotHeader parse_header(const std::vector<unsigned char>& bytes, const std::string& path) {
  if (bytes.size() < kHeaderBytes) throw SnapshotError("snapshot '" + path + "': truncated header");
  if (std::memcmp(bytes.data(), kMagic, 8) != 0)
    throw SnapshotError("snapshot '" + path + "': bad magic, not a snapshot file");
  const unsigned char* p = bytes.data() + 8;
  SnapshotHeader h;
  h.version = take<std::uint32_t>(p);
  if (h.version != kSnapshotVersion)
    throw SnapshotError("snapshot '" + path + "': format version " + std::to_string(h.version) +
                        " not supported (reader handles version " + std::to_string(kSnapshotVersion) + ")");
  h.n = take<std::uint32_t>(p);
  h.length = take<double>(p);
  h.dealias_fraction = take<double>(p);
  h.components = take<std::uint32_t>(p);
  h.ordering = take<std::uint32_t>(p);
  h.t = take<double>(p);
  if (h.components != 3) throw SnapshotError("snapshot '" + path + "': expected 3 components");
  if (h.ordering != kHalfSpectrumOrdering)
    throw SnapshotError("snapshot '" + path + "': unknown mode ordering tag " + std::to_string(h.ordering));
  if (h.n < 4 || h.n % 2 != 0 || h.n > 4096 || !(h.length > 0.0))
    throw SnapshotError("snapshot '" + path + "': corrupt grid description");
  return h;
}

}  // namespace

void write_snapshot(const SpectralField& field, double t, const std::string& path) {
  const TorusGrid& g = field.grid();
  std::vector<unsigned char> out;
  out.reserve(kHeaderBytes + 3 * g.spectral_size() * 16);
  out.insert(out.end(), kMagic, kMagic + 8);
  put<std::uint32_t>(out, kSnapshotVersion);
  put<std::uint32_t>(out, std::uint32_t(g.n()));
  put<double>(out, g.length());
  put<double>(out, g.dealias_fraction());
  put<std::uint32_t>(out, 3);
  put<std::uint32_t>(out, kHalfSpectrumOrdering);
  put<double>(out, t);
  for (int d = 0; d < 3; ++d)
    for (const Complex& c : field.component(d)) {
      put<double>(out, c.real());
      put<double>(out, c.imag());
    }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw SnapshotError("cannot open '" + path + "' for writing");
  file.write(reinterpret_cast<const char*>(out.data()), std::streamsize(out.size()));
  if (!file) throw SnapshotError("failed writing snapshot '" + path + "'");
}

SnapshotHeader read_snapshot_header(const std::string& path) {
  return parse_header(slurp(path), path);
}

Snapshot read_snapshot(const std::string& path) {
  const auto bytes = slurp(path);
  const SnapshotHeader h = parse_header(bytes, path);
  TorusGrid grid(h.length, int(h.n), h.dealias_fraction);
  const std::size_t expected = kHeaderBytes + 3 * grid.spectral_size() * 16;
  if (bytes.size() < expected) throw SnapshotError("snapshot '" + path + "': truncated payload");
  if (bytes.size() > expected) throw SnapshotError("snapshot '" + path + "': trailing bytes after payload");
  const unsigned char* p = bytes.data() + kHeaderBytes;
  std::array<Coeffs, 3> comps;
  for (int d = 0; d < 3; ++d) {
    comps[d].resize(grid.spectral_size());
    for (auto& c : comps[d]) {
      const double re = take<double>(p);
      const double im = take<double>(p);
      c = Complex(re, im);
    }
  }
  return Snapshot{h, SpectralField(grid, std::move(comps))};
}

Snapshot read_snapshot(const std::string& path, const TorusGrid& expected) {
  Snapshot s = read_snapshot(path);
  if (s.field.grid() != expected)
    throw SnapshotError("snapshot '" + path + "' was written on a different grid (N=" +
                        std::to_string(s.header.n) + ")");
  return s;
}

}  // namespace nsalpha
