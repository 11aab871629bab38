#pragma once

// Invariants of degree d as the common kernel of the simple raising
// operators on W(d; 0): modular nullspace, lift to integers, exact
// verification, and orbit bookkeeping.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tensorinv/modular.hpp"
#include "tensorinv/monomial.hpp"
#include "tensorinv/raising.hpp"
#include "tensorinv/symmetry.hpp"

namespace tensorinv {

using BigInt = boost::multiprecision::cpp_int;

struct Term {
  std::int64_t coefficient;
  ExponentArray array;
  friend bool operator==(const Term&, const Term&) = default;
};

struct OrbitTerm {
  ExponentArray representative;
  std::size_t size;
  std::int64_t coefficient;
  friend bool operator==(const OrbitTerm&, const OrbitTerm&) = default;
};

struct InvariantPolynomial {
  Format format;
  int degree = 0;
  std::vector<Term> terms;  // ascending by array, nonzero coefficients
  std::optional<std::vector<OrbitTerm>> orbit_view;

  /// Sorts terms, merges duplicates, drops zeros, divides by the content and
  /// makes the coefficient of the least array positive.
  void normalize();
  bool is_normalized() const;

  std::vector<std::int64_t> distinct_coefficients() const;
  friend bool operator==(const InvariantPolynomial&, const InvariantPolynomial&) = default;
};

struct CensusRow {
  std::int64_t coefficient;
  std::size_t multiplicity;
  std::vector<std::size_t> orbit_ids;  // 1-based
};

struct Census {
  bool constant_on_orbits = true;
  std::vector<std::size_t> nonconstant_orbits;  // 1-based
  std::vector<CensusRow> rows;                  // ascending by coefficient
};

/// Aggregates coefficients by orbit. `orbits` must be computed on `basis`,
/// the full weight-zero basis of the polynomial's degree.
Census coefficient_census(const InvariantPolynomial& poly, const MonomialBasis& basis,
                          const OrbitPartition& orbits);

/// Attaches the orbit view (representative, size, coefficient) for every
/// orbit with a nonzero coefficient. Requires constancy on orbits.
void attach_orbit_view(InvariantPolynomial& poly, const MonomialBasis& basis,
                       const OrbitPartition& orbits);

struct ResidualTerm {
  BigInt coefficient;
  ExponentArray array;
};

/// Exact image of the polynomial under one raising operator, coincident
/// monomials merged and zeros dropped. Accumulates in 64 bits and redoes the
/// computation in arbitrary precision when an overflow is detected.
std::vector<ResidualTerm> verify_annihilation_integer(const InvariantPolynomial& poly,
                                                      const RaisingOp& op);

/// Fills `overflowed` when the 64-bit path overflowed and the wide fallback
/// was taken.
std::vector<ResidualTerm> verify_annihilation_integer(const InvariantPolynomial& poly,
                                                      const RaisingOp& op, bool& overflowed);

struct OperatorStats {
  RaisingOp op;
  std::size_t codomain_size = 0;
  std::size_t cumulative_rank = 0;
};

struct CandidateCheck {
  std::size_t terms = 0;
  std::vector<std::string> failed_operators;  // labels with nonempty residual
  bool orbit_constant = true;
  bool orbit_check_applies = true;
  bool certified = false;
};

struct PipelineReport {
  Format format;
  int degree = 0;
  std::uint32_t prime = 0;
  std::size_t basis_size = 0;
  std::vector<OperatorStats> operators;
  std::size_t nullity = 0;  // modular nullity: upper bound for the rational one

  // filled by certify()
  std::optional<std::uint32_t> second_prime;
  std::optional<std::vector<std::size_t>> second_prime_ranks;
  std::vector<CandidateCheck> candidates;
  std::size_t certified = 0;  // lower bound for the rational nullity
  bool exact = false;         // certified == nullity
  std::size_t orbit_count = 0;
  std::vector<Census> census;  // one per certified invariant
};

struct InvariantSpace {
  std::vector<InvariantPolynomial> candidates;
  PipelineReport report;
};

/// Candidates are modular until verified.
InvariantSpace compute_invariant_space(const Format& format, int degree, std::uint32_t prime);

/// Lifts a modular kernel vector to a primitive integer vector. Tries small
/// rescalings and keeps the one with the least maximal symmetric lift.
std::vector<std::int64_t> lift_kernel_vector(const ModVector& v, std::uint32_t prime,
                                             std::uint32_t max_scale = 256);

struct Certification {
  std::vector<InvariantPolynomial> invariants;  // with orbit views attached
  PipelineReport report;
  OrbitPartition orbits;
  MonomialBasis basis;
};

/// True when d/p, d/q and d/r are all even. Slice permutations are then
/// matrices whose determinants enter with even exponents, so invariants are
/// constant on orbits; otherwise they may change sign.
bool orbit_constancy_expected(const Format& format, int degree);

/// Computes candidates and keeps those annihilated over the integers by
/// every simple raising operator and, when orbit_constancy_expected(),
/// constant on orbits. When `second_prime` is set, the rank ladder is
/// recomputed modulo it as well.
Certification certify(const Format& format, int degree, std::uint32_t prime,
                      std::optional<std::uint32_t> second_prime = std::nullopt);

/// Rank ladder modulo `prime` without computing the nullspace.
std::vector<std::size_t> rank_ladder(const Format& format, int degree, std::uint32_t prime);

/// Converts a block's integer rows to F_p.
std::vector<ModVector> to_mod_rows(const OperatorBlock& block, std::size_t columns,
                                   std::uint32_t prime);

}  // namespace tensorinv
