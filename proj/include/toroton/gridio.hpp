#pragma once

#include <string>

#include "toroton/bpm.hpp"

namespace toroton {

// "SOLGRID1" binary grid dump: 8-byte magic, little-endian u64 nx, u64 ny,
// f64 dx, f64 dy, f64 z, then nx*ny (f64 re, f64 im) row-major.
void dump_grid(const ScalarField& field, const std::string& path);
ScalarField load_grid(const std::string& path);

struct GridFormatError : std::runtime_error {
    explicit GridFormatError(const std::string& msg) : std::runtime_error(msg) {}
};

struct GridTruncationError : GridFormatError {
    std::size_t byte_offset;
    GridTruncationError(const std::string& msg, std::size_t offset)
        : GridFormatError(msg + " (at byte " + std::to_string(offset) + ")"),
          byte_offset(offset) {}
};

}  // namespace toroton
