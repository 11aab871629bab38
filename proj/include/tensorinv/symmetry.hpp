#pragma once

// The symmetry group G = (S_p x S_q x S_r) x| S_2 of the weight-zero basis:
// slice permutations in the three directions, plus transposition of the
// first two modes when p = q.

#include <cstddef>
#include <vector>

#include "tensorinv/monomial.hpp"

namespace tensorinv {

struct GroupElement {
  std::vector<int> alpha;  // permutation of {0..p-1}
  std::vector<int> beta;   // permutation of {0..q-1}
  std::vector<int> gamma;  // permutation of {0..r-1}
  bool swap12 = false;

  static GroupElement identity(const Format& format);

  /// Destination of each flattened position: act(g, E)[map[n]] = E[n].
  std::vector<std::size_t> position_map(const Format& format) const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// All elements, permutations in lex order with alpha outermost and the
/// swap flag innermost. The swap is only included when p = q.
std::vector<GroupElement> group_elements(const Format& format);

/// Applies alpha, then beta, then gamma, then the transposition, each stage
/// moving the entry at subscript i to subscript alpha(i). Throws
/// std::invalid_argument for swap12 with p != q or mismatched sizes.
ExponentArray act(const GroupElement& g, const ExponentArray& e);

/// The element whose action equals act(g, act(h, .)).
GroupElement compose(const GroupElement& g, const GroupElement& h);

struct Orbit {
  ExponentArray representative;       // least member
  std::vector<std::size_t> members;   // sorted basis indices
  std::size_t size() const { return members.size(); }
};

struct OrbitPartition {
  std::vector<Orbit> orbits;  // ascending by representative

  /// orbit index (0-based) of each basis element
  std::vector<std::size_t> orbit_of;
};

/// Greedy sweep: take the least unassigned basis element, collect its
/// images under every group element, repeat. Throws std::runtime_error when
/// an image is missing from the basis.
OrbitPartition orbit_partition(const MonomialBasis& basis);

}  // namespace tensorinv
