#pragma once

#include <filesystem>
#include <variant>

#include "json.hpp"

#include "canon/matrix.hpp"

namespace canon {

/// A matrix read from disk; the field tag in the file picks the alternative.
using AnyMatrix = std::variant<RealMatrix, ComplexMatrix>;

/// JSON matrix layout:
///
///   {"rows": R, "cols": C, "field": "real" | "complex", "data": [...]}
///
/// `data` is row-major; complex entries are [re, im] pairs. A square matrix
/// may give "dim": N instead of rows/cols. Doubles are written in shortest
/// round-trip form, so write-then-parse is bit-exact.
AnyMatrix matrix_from_json(const nlohmann::json& j);

template <Field F>
nlohmann::json matrix_to_json(const Matrix<F>& a);

/// Throws Error{ParseError | ShapeError | NonFinite}.
AnyMatrix parse_matrix_file(const std::filesystem::path& path);

template <Field F>
void write_matrix_file(const std::filesystem::path& path, const Matrix<F>& a);

/// Reads a whole file as JSON; ParseError on I/O or syntax failure.
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Writes `j` with two-space indentation and a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

/// FNV-1a 64-bit digest of the file bytes, as "fnv1a64:<16 hex digits>".
std::string file_digest(const std::filesystem::path& path);

template <Field F>
const Matrix<F>* get_if_field(const AnyMatrix& a) {
  return std::get_if<Matrix<F>>(&a);
}

}  // namespace canon
