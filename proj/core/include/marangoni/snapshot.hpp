#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "marangoni/array2d.hpp"

namespace marangoni {

/// Raised on malformed snapshot files; messages carry the line number.
class SnapshotError : public std::runtime_error {
public:
    explicit SnapshotError(const std::string& what) : std::runtime_error(what) {}
};

/// Metadata of one stored field. nx/ny are the array extents (which for
/// staggered components differ from the cell counts).
struct SnapshotHeader {
    std::string field_name;
    int nx = 0;
    int ny = 0;
    double lx = 0.0;
    double ly = 0.0;
    double t = 0.0;
};

/// Plain-text field dump. Line 1:
///   MARANGONI-FIELD v1 <field_name> <nx> <ny> <lx> <ly> <t>
/// followed by ny rows bottom to top, each with nx values, space separated,
/// 17 significant digits (lossless for binary64).
void write_snapshot(const std::string& path, const SnapshotHeader& header,
                    const Array2D& values);

/// Exact inverse of write_snapshot. Throws SnapshotError naming the line of
/// the first problem (bad magic, malformed header, wrong row/column counts,
/// non-numeric tokens, trailing content).
std::pair<SnapshotHeader, Array2D> read_snapshot(const std::string& path);

} // namespace marangoni
