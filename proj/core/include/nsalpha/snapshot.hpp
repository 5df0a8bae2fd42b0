#pragma once

#include <cstdint>
#include <string>

#include "nsalpha/spectral_field.hpp"

namespace nsalpha {

/// Binary field snapshot, all values little-endian:
///
///   char[8] magic "NSALPHA\0"
///   u32     format version (kSnapshotVersion)
///   u32     N
///   f64     L
///   f64     dealias fraction
///   u32     component count (3)
///   u32     mode ordering tag (1: half-spectrum, x1 slowest, z3 >= 0)
///   f64     t
///   f64[2]  (re, im) per coefficient, component-major, then storage order
///
/// The header fixes the payload length: 3 * N * N * (N/2 + 1) pairs.
inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::uint32_t kHalfSpectrumOrdering = 1;

struct SnapshotHeader {
  std::uint32_t version = kSnapshotVersion;
  std::uint32_t n = 0;
  double length = 0.0;
  double dealias_fraction = 0.0;
  std::uint32_t components = 3;
  std::uint32_t ordering = kHalfSpectrumOrdering;
  double t = 0.0;
};

struct Snapshot {
  SnapshotHeader header;
  SpectralField field;
};

/// Throws SnapshotError if the file cannot be written.
void write_snapshot(const SpectralField& field, double t, const std::string& path);

/// Throws SnapshotError on bad magic, unsupported version or ordering,
/// truncated or oversized payload.
Snapshot read_snapshot(const std::string& path);
/// As above, and rejects a snapshot taken on a different grid.
Snapshot read_snapshot(const std::string& path, const TorusGrid& expected);

SnapshotHeader read_snapshot_header(const std::string& path);

}  // namespace nsalpha
