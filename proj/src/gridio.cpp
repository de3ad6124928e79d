#include "toroton/gridio.hpp"

#include <cstring>
#include <fstream>

namespace toroton {

namespace {

constexpr char kMagic[8] = {'S', 'O', 'L', 'G', 'R', 'I', 'D', '1'};
constexpr std::size_t kMaxDim = std::size_t{1} << 24;

// this code assumes a little-endian host, as do the tests
void put_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), 8);
}
void put_f64(std::ostream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), 8);
}

}  // namespace

void dump_grid(const ScalarField& field, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw GridFormatError("dump_grid: cannot open " + path);
    out.write(kMagic, 8);
    put_u64(out, field.nx);
    put_u64(out, field.ny);
    put_f64(out, field.dx);
    put_f64(out, field.dy);
    put_f64(out, field.z);
    for (const auto& a : field.amp) {
        put_f64(out, a.real());
        put_f64(out, a.imag());
    }
    if (!out) throw GridFormatError("dump_grid: write failed for " + path);
}

ScalarField load_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GridFormatError("load_grid: cannot open " + path);

    std::size_t offset = 0;
    auto need = [&](char* dst, std::size_t n, const char* what) {
        in.read(dst, static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in.gcount()) != n)
            throw GridTruncationError(std::string("load_grid: truncated while reading ") + what,
                                      offset + static_cast<std::size_t>(in.gcount()));
        offset += n;
    };

    char magic[8];
    need(magic, 8, "magic");
    if (std::memcmp(magic, kMagic, 8) != 0)
        throw GridFormatError("load_grid: bad magic, not a SOLGRID1 file");

    std::uint64_t nx = 0, ny = 0;
    double dx = 0, dy = 0, z = 0;
    need(reinterpret_cast<char*>(&nx), 8, "nx");
    need(reinterpret_cast<char*>(&ny), 8, "ny");
    need(reinterpret_cast<char*>(&dx), 8, "dx");
    need(reinterpret_cast<char*>(&dy), 8, "dy");
    need(reinterpret_cast<char*>(&z), 8, "z");
    if (nx == 0 || ny == 0 || nx > kMaxDim || ny > kMaxDim || nx * ny > kMaxDim)
        throw GridFormatError("load_grid: dimension overflow (nx = " + std::to_string(nx) +
                              ", ny = " + std::to_string(ny) + ")");

    ScalarField f(static_cast<std::size_t>(nx), static_cast<std::size_t>(ny), dx, dy);
    f.z = z;
    for (auto& a : f.amp) {
        double re, im;
        need(reinterpret_cast<char*>(&re), 8, "sample");
        need(reinterpret_cast<char*>(&im), 8, "sample");
        a = {re, im};
    }
    return f;
}

}  // namespace toroton
