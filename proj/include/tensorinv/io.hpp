#pragma once

// File formats: polynomials, bases, arrays, orbit tables and pipeline
// reports. JSON carries integers as decimal strings wherever they may exceed
// 64 bits; subscripts and ids in human-facing output are 1-based.

#include <stdexcept>
#include <string>
#include <string_view>

#include "tensorinv/evaluation.hpp"
#include "tensorinv/pipeline.hpp"
#include "tensorinv/symmetry.hpp"

namespace tensorinv {

inline constexpr std::string_view kGenerator = "tensorinv 1.0.0";
inline constexpr std::string_view kNormalization = "content 1, least term positive";

/// Malformed input file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical JSON text, one term per line. Deterministic.
std::string render_polynomial(const InvariantPolynomial& poly);
/// Throws ParseError. Terms must be strictly increasing with nonzero
/// coefficients.
InvariantPolynomial parse_polynomial(std::string_view text);

std::string render_basis(const MonomialBasis& basis, int degree, const Weight& weight);
struct BasisFile {
  int degree = 0;
  Weight weight;
  MonomialBasis basis;
};
BasisFile parse_basis(std::string_view text);

/// JSON with slices[k][i][j] = t_{ijk}, entries as decimal strings.
std::string render_array(const NumericArray& t);
/// Accepts the JSON layout (numbers or strings) or the plain matrix form:
/// p lines, each with r blocks of q integers separated by '|'.
NumericArray parse_array(std::string_view text);

/// Text table: orbit id, size, representative in matrix form.
std::string render_orbit_table(const OrbitPartition& orbits);
std::string render_orbit_json(const OrbitPartition& orbits);

std::string render_census_table(const Census& census);

std::string render_report_text(const PipelineReport& report);
std::string render_report_json(const PipelineReport& report);

std::string read_file(const std::string& path);
/// Throws std::runtime_error when the file cannot be written.
void write_file(const std::string& path, std::string_view contents);

}  // namespace tensorinv
