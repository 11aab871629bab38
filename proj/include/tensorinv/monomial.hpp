#pragma once

// Exponent arrays of monomials in the entries x_ijk of a p x q x r array,
// their weights under the diagonal Cartan elements, and enumeration of the
// monomial basis of a weight space W(d; weight).
//
// Subscripts are 0-based in this API. Everything printed for humans
// (matrix form, reports, file headers) uses 1-based subscripts.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tensorinv {

using Exponent = std::uint8_t;

struct Format {
  int p = 1;
  int q = 1;
  int r = 1;

  Format() = default;
  Format(int p_, int q_, int r_);

  std::size_t size() const { return std::size_t(p) * q * r; }
  int dim(int mode) const { return mode == 0 ? p : mode == 1 ? q : r; }

  std::size_t offset(int i, int j, int k) const {
    return (std::size_t(i) * q + j) * r + k;
  }
  std::array<int, 3> subscripts(std::size_t pos) const {
    return {int(pos / (std::size_t(q) * r)), int(pos / r % q), int(pos % r)};
  }

  std::string to_string() const;  // "3x3x2"
  friend bool operator==(const Format&, const Format&) = default;
};

class ExponentArray {
 public:
  ExponentArray() = default;
  explicit ExponentArray(Format format);
  ExponentArray(Format format, std::span<const Exponent> flat);
  /// Throws std::invalid_argument on a negative entry, an entry above 255,
  /// or a length different from p*q*r.
  static ExponentArray from_ints(Format format, std::span<const int> flat);

  const Format& format() const { return format_; }
  std::span<const Exponent> flat() const { return entries_; }
  std::span<Exponent> flat() { return entries_; }

  Exponent operator()(int i, int j, int k) const {
    return entries_[format_.offset(i, j, k)];
  }
  Exponent& operator()(int i, int j, int k) {
    return entries_[format_.offset(i, j, k)];
  }

  int degree() const;

  friend bool operator==(const ExponentArray&, const ExponentArray&) = default;

 private:
  Format format_;
  std::vector<Exponent> entries_;
};

/// Lexicographic order on flattenings. Throws std::invalid_argument when the
/// formats differ.
std::strong_ordering compare(const ExponentArray& a, const ExponentArray& b);
std::strong_ordering compare_flat(std::span<const Exponent> a,
                                  std::span<const Exponent> b);

inline bool operator<(const ExponentArray& a, const ExponentArray& b) {
  return compare(a, b) < 0;
}

/// Eigenvalues under H_i of the three summands, one list per mode
/// (lengths p-1, q-1, r-1).
struct Weight {
  std::array<std::vector<int>, 3> modes;

  static Weight zero(const Format& format);
  /// Splits a concatenated list of p+q+r-3 integers.
  static Weight from_flat(const Format& format, std::span<const int> flat);

  std::vector<int> flat() const;
  bool is_zero() const;
  std::string to_string() const;  // "[2,-1,0,0,0]"
  friend bool operator==(const Weight&, const Weight&) = default;
};

/// Entry sums over the 2-dimensional slices, one list per mode.
struct SliceSums {
  std::array<std::vector<int>, 3> modes;
  friend bool operator==(const SliceSums&, const SliceSums&) = default;
};

SliceSums slice_sums(const ExponentArray& e);
Weight weight_of(const ExponentArray& e);

/// Solves T(i) - T(i+1) = w_i, sum T = degree in each mode. Returns nullopt
/// when the solution is non-integral or negative, i.e. W(degree; w) is empty.
std::optional<SliceSums> slice_sums_from_weight(const Format& format, int degree,
                                                const Weight& weight);

/// A sorted, duplicate-free list of exponent arrays of one format stored in
/// contiguous flattened form.
class MonomialBasis {
 public:
  MonomialBasis() = default;
  explicit MonomialBasis(Format format) : format_(format) {}

  const Format& format() const { return format_; }
  std::size_t size() const { return format_.size() ? data_.size() / format_.size() : 0; }
  bool empty() const { return data_.empty(); }

  std::span<const Exponent> operator[](std::size_t index) const {
    return {data_.data() + index * format_.size(), format_.size()};
  }
  ExponentArray array(std::size_t index) const { return {format_, (*this)[index]}; }

  /// Binary search; nullopt when absent.
  std::optional<std::size_t> find(std::span<const Exponent> flat) const;
  std::optional<std::size_t> find(const ExponentArray& e) const { return find(e.flat()); }

  /// Appends an element; the caller keeps the list strictly increasing.
  void push_back(std::span<const Exponent> flat);
  void reserve(std::size_t n) { data_.reserve(n * format_.size()); }

 private:
  Format format_;
  std::vector<Exponent> data_;
};

/// All degree-d arrays of the given weight, ascending. Empty when infeasible.
MonomialBasis enumerate_weight_space(const Format& format, int degree, const Weight& weight);

/// Number of arrays in W(d; weight) without materializing them.
std::size_t count_weight_space(const Format& format, int degree, const Weight& weight);

/// Zero-based binary search, kept as a free function for symmetry with the
/// other operations.
std::optional<std::size_t> index_of(const ExponentArray& e, const MonomialBasis& basis);

struct DegreeInfo {
  int lcm_step = 1;
  std::optional<int> hyperdeterminant_degree;
};

DegreeInfo invariant_degree_info(const Format& format);

/// Human-readable layout: p rows, each holding r blocks of q entries
/// separated by " | ". One line per row, no trailing newline.
std::string to_matrix_form(const ExponentArray& e);

/// Comma-separated flattening, e.g. "0,0,1,2".
std::string to_flat_string(std::span<const Exponent> flat);

}  // namespace tensorinv
