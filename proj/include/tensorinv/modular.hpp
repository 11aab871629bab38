#pragma once

// Sparse row reduction over F_p. The state is kept in reduced row-echelon
// form between blocks: every pivot row has a leading 1 and zeros in all
// other pivot columns.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace tensorinv {

struct ModEntry {
  std::uint32_t column;
  std::uint32_t value;  // in [1, p)
  friend bool operator==(const ModEntry&, const ModEntry&) = default;
};

/// Sparse vector over F_p; entries sorted by column, no zeros.
struct ModVector {
  std::size_t length = 0;
  std::vector<ModEntry> entries;

  std::uint32_t at(std::size_t column) const;
  friend bool operator==(const ModVector&, const ModVector&) = default;
};

bool is_prime(std::uint64_t n);

/// Reduces an arbitrary integer into [0, p).
std::uint32_t mod_reduce(std::int64_t x, std::uint32_t p);

/// Representative in (-p/2, p/2).
std::int64_t symmetric_lift(std::uint32_t x, std::uint32_t p);
std::vector<std::int64_t> symmetric_lift(const ModVector& v, std::uint32_t p);

std::uint32_t mod_inverse(std::uint32_t x, std::uint32_t p);

class ModRref {
 public:
  /// Throws std::invalid_argument unless `prime` is a prime below 2^31.
  ModRref(std::uint32_t prime, std::size_t columns);

  std::uint32_t prime() const { return prime_; }
  std::size_t columns() const { return columns_; }
  std::size_t rank() const { return rows_.size(); }

  /// Pivot rows in ascending order of pivot column.
  const std::vector<ModVector>& rows() const { return rows_; }
  bool is_pivot(std::size_t column) const { return pivot_row_[column] >= 0; }

  /// Reduces each row against the current pivots, keeps the nonzero
  /// survivors, and restores full reduction. Rows are processed in order;
  /// the pivot of a survivor is its leftmost nonzero column.
  void absorb(std::span<const ModVector> block);

  /// Checks the reduced row-echelon structure; used by tests.
  bool is_reduced() const;

  /// One vector per non-pivot column f: entry 1 at f, pivot entries solved.
  std::vector<ModVector> nullspace() const;

 private:
  ModVector reduce(const ModVector& row, const std::vector<std::int32_t>& fresh_pivot,
                   const std::vector<ModVector>& fresh);
  ModVector eliminate_fresh(const ModVector& row, const std::vector<std::int32_t>& fresh_pivot,
                            const std::vector<ModVector>& fresh);
  void rebuild_index();

  std::uint32_t prime_;
  std::size_t columns_;
  std::vector<ModVector> rows_;
  std::vector<std::int32_t> pivot_row_;  // column -> row, -1 when free

  // dense scratch accumulator, all zero between calls
  std::vector<std::uint64_t> acc_;
  std::vector<char> touched_;
};

struct IntEntry {
  std::uint32_t column;
  std::int64_t value;
};

/// Row echelon form over Q by fraction-free sparse elimination with content
/// removal. Intended for small cross-checks of the modular ranks.
class RationalEchelon {
 public:
  explicit RationalEchelon(std::size_t columns);
  ~RationalEchelon();
  RationalEchelon(RationalEchelon&&) noexcept;
  RationalEchelon& operator=(RationalEchelon&&) noexcept;

  void absorb(std::span<const std::vector<IntEntry>> block);
  std::size_t rank() const;
  std::size_t columns() const { return columns_; }

 private:
  struct Rows;
  std::size_t columns_;
  std::unique_ptr<Rows> rows_;
};

}  // namespace tensorinv
