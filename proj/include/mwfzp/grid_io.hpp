// Field and profile export: "MWFZP 1 <rows> <cols> <dx> <kind>" text header
// followed by little-endian 64-bit floats, row-major (X-major); complex
// fields interleave (re, im). Writes are atomic (temp file + rename).
#pragma once

#include "mwfzp/diagnostics.hpp"
#include "mwfzp/grid.hpp"

#include <string>
#include <vector>

namespace mwfzp {

void export_field(const ScalarField2D& field, const std::string& path);
void export_field(const ComplexField2D& field, const std::string& path);

ScalarField2D import_scalar_field(const std::string& path);
ComplexField2D import_complex_field(const std::string& path);

/// Two-column CSV (x, intensity) with a header row.
void export_profile(const AxialProfile& profile, const std::string& path);

/// Arbitrary CSV with 9-significant-digit numeric formatting.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string format_sig9(double v);

/// Whole-file atomic text write.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace mwfzp
