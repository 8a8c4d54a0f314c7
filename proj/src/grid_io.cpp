#include "mwfzp/grid_io.hpp"

#include "mwfzp/errors.hpp"

#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "grid files are little-endian; big-endian hosts are unsupported");

namespace mwfzp {

namespace {

void atomic_write(const std::string& path, const void* header, std::size_t header_len,
                  const void* payload, std::size_t payload_len) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw config_error("cannot open for writing: " + tmp);
        out.write(static_cast<const char*>(header), header_len);
        if (payload_len > 0) out.write(static_cast<const char*>(payload), payload_len);
        if (!out) throw config_error("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw config_error("rename failed for " + path + ": " + ec.message());
}

std::string field_header(const GridSpec& g, const char* kind) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "MWFZP 1 %d %d %.17g %s\n", g.nx, g.ny, g.dx, kind);
    return buf;
}

struct ParsedHeader {
    int rows = 0, cols = 0;
    double dx = 0.0;
    std::string kind;
    std::streampos data_start;
};

ParsedHeader read_header(std::ifstream& in, const std::string& path) {
    std::string line;
    if (!std::getline(in, line)) throw config_error("empty grid file: " + path);
    std::istringstream ss(line);
    std::string magic;
    int version = 0;
    ParsedHeader h;
    ss >> magic >> version >> h.rows >> h.cols >> h.dx >> h.kind;
    if (!ss || magic != "MWFZP" || version != 1 || h.rows <= 0 || h.cols <= 0) {
        throw config_error("bad grid file header: " + path);
    }
    h.data_start = in.tellg();
    return h;
}

}  // namespace

void export_field(const ScalarField2D& field, const std::string& path) {
    const std::string hdr = field_header(field.grid, "scalar");
    atomic_write(path, hdr.data(), hdr.size(), field.v.data(),
                 field.v.size() * sizeof(double));
}

void export_field(const ComplexField2D& field, const std::string& path) {
    const std::string hdr = field_header(field.grid, "complex");
    atomic_write(path, hdr.data(), hdr.size(), field.v.data(),
                 field.v.size() * sizeof(Complex));
}

ScalarField2D import_scalar_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open: " + path);
    const ParsedHeader h = read_header(in, path);
    if (h.kind != "scalar") throw config_error("not a scalar field: " + path);
    ScalarField2D f(GridSpec::make(h.rows, h.cols, h.dx, 0.0, 0.0));
    in.read(reinterpret_cast<char*>(f.v.data()), f.v.size() * sizeof(double));
    if (!in) throw config_error("truncated grid file: " + path);
    return f;
}

ComplexField2D import_complex_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open: " + path);
    const ParsedHeader h = read_header(in, path);
    if (h.kind != "complex") throw config_error("not a complex field: " + path);
    ComplexField2D f(GridSpec::make(h.rows, h.cols, h.dx, 0.0, 0.0));
    in.read(reinterpret_cast<char*>(f.v.data()), f.v.size() * sizeof(Complex));
    if (!in) throw config_error("truncated grid file: " + path);
    return f;
}

std::string format_sig9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void export_profile(const AxialProfile& profile, const std::string& path) {
    std::ostringstream out;
    out << "x,intensity\n";
    for (std::size_t i = 0; i < profile.x.size(); ++i) {
        out << format_sig9(profile.x[i]) << ',' << format_sig9(profile.intensity[i]) << '\n';
    }
    write_text_file(path, out.str());
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        out << header[c] << (c + 1 < header.size() ? "," : "");
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << row[c] << (c + 1 < row.size() ? "," : "");
        }
        out << '\n';
    }
    write_text_file(path, out.str());
}

void write_text_file(const std::string& path, const std::string& content) {
    atomic_write(path, content.data(), content.size(), nullptr, 0);
}

}  // namespace mwfzp
