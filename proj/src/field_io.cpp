#include "musklab/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace musk {

namespace {

constexpr char kMagic[8] = {'M', 'U', 'S', 'K', '1', '\0', '\0', '\0'};

void put_u32_le(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32_le(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

void put_f64_le(std::ostream& os, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64_le(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double d;
    std::memcpy(&d, &v, 8);
    return d;
}

}  // namespace

void write_musk1(const InterfaceField& field, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open snapshot for writing: " + path);
    os.write(kMagic, 8);
    put_u32_le(os, static_cast<std::uint32_t>(field.grid.n));
    put_f64_le(os, field.grid.period);
    put_f64_le(os, field.time);
    for (double v : field.values) put_f64_le(os, v);
    if (!os) throw std::runtime_error("snapshot write failed: " + path);
}

InterfaceField read_musk1(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open snapshot: " + path);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error("not a MUSK1 snapshot: " + path);
    const std::uint32_t n = get_u32_le(is);
    const double period = get_f64_le(is);
    const double time = get_f64_le(is);
    InterfaceField field;
    field.grid = PeriodicGrid::make(period, static_cast<int>(n));
    field.time = time;
    field.values.resize(static_cast<std::size_t>(n) * n);
    for (double& v : field.values) v = get_f64_le(is);
    if (!is) throw std::runtime_error("snapshot truncated: " + path);
    return field;
}

void write_field_csv(const PeriodicGrid& grid, const std::vector<double>& values,
                     const std::string& path) {
    if (values.size() != static_cast<std::size_t>(grid.n) * grid.n)
        throw std::invalid_argument("csv export: value count does not match grid");
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open csv for writing: " + path);
    os << "x1,x2,value\n";
    os.precision(17);
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j)
            os << grid.coord(i) << ',' << grid.coord(j) << ','
               << values[static_cast<std::size_t>(i) * grid.n + j] << '\n';
    if (!os) throw std::runtime_error("csv write failed: " + path);
}

}  // namespace musk
