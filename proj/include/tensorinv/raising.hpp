#pragma once

// Simple raising operators U_i = x_{..i..} d/dx_{..i+1..} acting on
// monomials, and their matrices between weight spaces.

#include <cstdint>
#include <string>
#include <vector>

#include "tensorinv/monomial.hpp"

namespace tensorinv {

struct RaisingOp {
  int mode = 0;   // 0, 1, 2
  int index = 0;  // 0 .. dim(mode) - 2; moves one unit from slice index+1 to slice index

  /// "U1^(1)" style label with 1-based subscripts.
  std::string label() const;
  friend bool operator==(const RaisingOp&, const RaisingOp&) = default;
};

/// Row i (0-based) of the Cartan matrix of sl_n.
std::vector<int> cartan_row(int n, int i);

/// Mode-1 operators by index, then mode 2, then mode 3.
std::vector<RaisingOp> simple_raising_ops(const Format& format);

Weight target_weight(const RaisingOp& op, const Format& format);

struct RaisedTerm {
  std::int64_t coefficient;
  ExponentArray array;
};

/// One term per position of slice index+1 with a positive exponent; terms
/// are listed in flattening order and never merged.
std::vector<RaisedTerm> apply_raising(const RaisingOp& op, const ExponentArray& e);

/// Visits (coefficient, source position, target position) without building
/// arrays; used by the hot loops.
template <class Visit>
void for_each_raising_move(const RaisingOp& op, const Format& f, std::span<const Exponent> flat,
                           Visit&& visit) {
  for (std::size_t pos = 0; pos < flat.size(); ++pos) {
    if (flat[pos] == 0) continue;
    const auto s = f.subscripts(pos);
    if (s[op.mode] != op.index + 1) continue;
    auto t = s;
    t[op.mode] = op.index;
    visit(std::int64_t(flat[pos]), pos, f.offset(t[0], t[1], t[2]));
  }
}

struct BlockEntry {
  std::uint32_t column;
  std::int64_t coefficient;
};

/// Matrix of one raising operator from W(d; 0) to W(d; target): rows are
/// codomain monomials, columns are domain indices.
struct OperatorBlock {
  RaisingOp op;
  MonomialBasis codomain;
  std::vector<std::vector<BlockEntry>> rows;  // sorted by column
};

/// Throws std::logic_error when an image is not found in the codomain.
OperatorBlock operator_block(const RaisingOp& op, const MonomialBasis& domain);
OperatorBlock operator_block(const RaisingOp& op, int degree, const Format& format);

}  // namespace tensorinv
