#pragma once

#include <string>

#include "musklab/grid.hpp"

namespace musk {

// Snapshot format "MUSK1": 8-byte magic "MUSK1\0\0\0", little-endian u32 n,
// f64 period, f64 time, then n^2 f64 values in row-major order.
void write_musk1(const InterfaceField& field, const std::string& path);
InterfaceField read_musk1(const std::string& path);

// CSV with header x1,x2,value
void write_field_csv(const PeriodicGrid& grid, const std::vector<double>& values,
                     const std::string& path);

}  // namespace musk
