#include "marangoni/snapshot.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace marangoni {

namespace {

constexpr const char* kMagic = "MARANGONI-FIELD";
constexpr const char* kVersion = "v1";

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_value(const std::string& token, int lineno) {
    // from_chars, unlike stod, accepts subnormals without an ERANGE trip,
    // which the 17-digit lossless round-trip relies on.
    double v = 0.0;
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), last, v);
    if (ec == std::errc{} && ptr == last) return v;
    throw SnapshotError("non-numeric token '" + token + "' at line " +
                        std::to_string(lineno));
}

} // namespace

void write_snapshot(const std::string& path, const SnapshotHeader& header,
                    const Array2D& values) {
    if (header.field_name.empty() ||
        header.field_name.find_first_of(" \t\n") != std::string::npos)
        throw SnapshotError("field name must be nonempty and contain no whitespace");
    if (header.nx != values.nx() || header.ny != values.ny())
        throw SnapshotError("header extents do not match the array");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw SnapshotError("cannot open '" + path + "' for writing");

    out << kMagic << ' ' << kVersion << ' ' << header.field_name << ' ' << header.nx
        << ' ' << header.ny << ' ' << fmt17(header.lx) << ' ' << fmt17(header.ly) << ' '
        << fmt17(header.t) << '\n';
    for (int j = 0; j < header.ny; ++j) {
        for (int i = 0; i < header.nx; ++i) {
            if (i) out << ' ';
            out << fmt17(values(i, j));
        }
        out << '\n';
    }
    if (!out) throw SnapshotError("write failed for '" + path + "'");
}

std::pair<SnapshotHeader, Array2D> read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot open '" + path + "' for reading");

    std::string line;
    if (!std::getline(in, line)) throw SnapshotError("empty file: missing header at line 1");

    std::istringstream head(line);
    std::string magic, version;
    SnapshotHeader header;
    std::string lx_s, ly_s, t_s;
    if (!(head >> magic >> version >> header.field_name >> header.nx >> header.ny >>
          lx_s >> ly_s >> t_s))
        throw SnapshotError("malformed header at line 1: '" + line + "'");
    std::string extra;
    if (head >> extra)
        throw SnapshotError("trailing content in header at line 1: '" + extra + "'");
    if (magic != kMagic || version != kVersion)
        throw SnapshotError("bad magic '" + magic + " " + version + "' at line 1, expected '" +
                            kMagic + " " + kVersion + "'");
    if (header.nx < 1 || header.ny < 1)
        throw SnapshotError("invalid extents " + std::to_string(header.nx) + " x " +
                            std::to_string(header.ny) + " at line 1");
    header.lx = parse_value(lx_s, 1);
    header.ly = parse_value(ly_s, 1);
    header.t = parse_value(t_s, 1);

    Array2D values(header.nx, header.ny);
    for (int j = 0; j < header.ny; ++j) {
        const int lineno = j + 2;
        if (!std::getline(in, line))
            throw SnapshotError("unexpected end of file at line " + std::to_string(lineno) +
                                ": expected " + std::to_string(header.ny) + " rows, got " +
                                std::to_string(j));
        std::istringstream row(line);
        std::string token;
        for (int i = 0; i < header.nx; ++i) {
            if (!(row >> token))
                throw SnapshotError("row at line " + std::to_string(lineno) + " has " +
                                    std::to_string(i) + " values, expected " +
                                    std::to_string(header.nx));
            values(i, j) = parse_value(token, lineno);
        }
        if (row >> token)
            throw SnapshotError("row at line " + std::to_string(lineno) +
                                " has more than " + std::to_string(header.nx) + " values");
    }
    while (std::getline(in, line)) {
        if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos)
            throw SnapshotError("trailing content after data rows: '" + line + "'");
    }
    return {std::move(header), std::move(values)};
}

} // namespace marangoni
