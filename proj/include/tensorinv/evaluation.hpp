#pragma once

// Exact evaluation of invariants on integer arrays, the GL_p x GL_q x GL_r
// action on arrays, and the slice-pencil discriminant used as an
// independent check for p x p x 2 arrays.

#include <cstdint>
#include <optional>
#include <vector>

#include "tensorinv/pipeline.hpp"

namespace tensorinv {

/// p x q x r array of exact integers, stored in flattening order.
struct NumericArray {
  Format format;
  std::vector<BigInt> entries;

  explicit NumericArray(Format f) : format(f), entries(f.size(), 0) {}
  NumericArray(Format f, std::vector<BigInt> values);

  const BigInt& operator()(int i, int j, int k) const { return entries[format.offset(i, j, k)]; }
  BigInt& operator()(int i, int j, int k) { return entries[format.offset(i, j, k)]; }
  friend bool operator==(const NumericArray&, const NumericArray&) = default;
};

/// Dense square integer matrix, row-major.
struct IntMatrix {
  int n = 0;
  std::vector<BigInt> a;

  explicit IntMatrix(int size) : n(size), a(std::size_t(size) * size, 0) {}
  static IntMatrix identity(int size);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  const BigInt& operator()(int i, int j) const { return a[std::size_t(i) * n + j]; }
  BigInt& operator()(int i, int j) { return a[std::size_t(i) * n + j]; }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);

/// Fraction-free (Bareiss) determinant.
BigInt determinant(const IntMatrix& m);

/// Univariate integer polynomial, coefficients from constant term upward.
/// The leading coefficient may be zero.
struct IntPolynomial1D {
  std::vector<BigInt> coefficients;

  int degree_bound() const { return int(coefficients.size()) - 1; }
  IntPolynomial1D derivative() const;
  friend bool operator==(const IntPolynomial1D&, const IntPolynomial1D&) = default;
};

BigInt evaluate(const InvariantPolynomial& poly, const NumericArray& t);

/// t'_{ijk} = sum A_ia B_jb C_kc t_abc. Throws std::invalid_argument on a
/// size mismatch.
NumericArray multilinear_act(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c,
                             const NumericArray& t);

/// Product of random elementary shears; determinant exactly 1. Shears that
/// would push an entry above `cap` in absolute value are rejected.
IntMatrix random_unimodular(int n, std::uint64_t seed, int shears = 12, long long cap = 6);

/// Random integer array with entries uniform in [lo, hi].
NumericArray random_array(const Format& format, std::uint64_t seed, int lo = -5, int hi = 5);

/// det(A + t B) for the two slices of a p x p x 2 array.
IntPolynomial1D slice_pencil(const NumericArray& t);

/// Sylvester resultant of f and g taken with their nominal degrees.
BigInt resultant(const IntPolynomial1D& f, const IntPolynomial1D& g);

/// Discriminant (-1)^{p(p-1)/2} Res(f, f') / lc(f) of f = det(A + tB).
/// nullopt when det B = 0 (degenerate pencil). Throws std::invalid_argument
/// for a format that is not p x p x 2.
std::optional<BigInt> pencil_discriminant(const NumericArray& t);

struct CovarianceReport {
  bool pass = false;
  BigInt lhs;     // evaluate(poly, (A,B,C) . T)
  BigInt rhs;     // det(A)^{d/p} det(B)^{d/q} det(C)^{d/r} evaluate(poly, T)
  BigInt factor;  // det(A)^{d/p} det(B)^{d/q} det(C)^{d/r}
};

CovarianceReport covariance_check(const InvariantPolynomial& poly, const NumericArray& t,
                                  const IntMatrix& a, const IntMatrix& b, const IntMatrix& c);

}  // namespace tensorinv
