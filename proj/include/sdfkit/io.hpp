#pragma once

#include <string>
#include <variant>

#include "sdfkit/grid.hpp"

namespace sdfkit {

// Grid file format "SDF1" (little-endian):
//   magic "SDF1"; u8 payload kind (0 = float64 scalar, 1 = u8 binary);
//   u8 ndim; per-axis u32 dims; float64 spacing; per-axis float64 origin;
//   row-major payload (float64 per cell, or one u8 per cell holding 0/1).

void save_field(const std::string& path, const ScalarField& field);
void save_field(const std::string& path, const BinaryField& field);

using LoadedField = std::variant<ScalarField, BinaryField>;
LoadedField load_field(const std::string& path);

ScalarField load_scalar_field(const std::string& path);
BinaryField load_binary_field(const std::string& path);

// CSV export for 1D/2D fields: header `i[,j],value`, one row per cell,
// 17-significant-digit decimals.
void write_csv(const std::string& path, const ScalarField& field);
void write_csv(const std::string& path, const BinaryField& field);

// 8-bit binary PGM (P5, maxval 255) of a 2D field, linearly normalized to
// [0,255]; the original min/max are recorded in a comment line. For plotting
// only -- analysis reads the SDF1/CSV outputs.
void write_pgm(const std::string& path, const ScalarField& field);
void write_pgm(const std::string& path, const BinaryField& field);

// Shared 17-significant-digit decimal formatting used by every CSV writer.
std::string format_double(double v);

} // namespace sdfkit
