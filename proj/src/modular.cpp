#include "tensorinv/modular.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tensorinv {

namespace {

// Accumulator entries are folded back below p once they pass this bound;
// each added product is below p^2 < 2^62.
constexpr std::uint64_t kFoldAt = std::uint64_t(1) << 63;

}  // namespace

std::uint32_t ModVector::at(std::size_t column) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), column,
                             [](const ModEntry& e, std::size_t c) { return e.column < c; });
  return it != entries.end() && it->column == column ? it->value : 0;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t mod_reduce(std::int64_t x, std::uint32_t p) {
  std::int64_t r = x % std::int64_t(p);
  return std::uint32_t(r < 0 ? r + p : r);
}

std::int64_t symmetric_lift(std::uint32_t x, std::uint32_t p) {
  return x > p / 2 ? std::int64_t(x) - std::int64_t(p) : std::int64_t(x);
}

std::vector<std::int64_t> symmetric_lift(const ModVector& v, std::uint32_t p) {
  std::vector<std::int64_t> out(v.length, 0);
  for (const auto& e : v.entries) out[e.column] = symmetric_lift(e.value, p);
  return out;
}

std::uint32_t mod_inverse(std::uint32_t x, std::uint32_t p) {
  // extended Euclid
  std::int64_t a = x % p, m = p, u = 1, v = 0;
  if (a == 0) throw std::domain_error("zero has no inverse");
  while (m != 0) {
    const std::int64_t t = a / m;
    a -= t * m;
    std::swap(a, m);
    u -= t * v;
    std::swap(u, v);
  }
  return mod_reduce(u, p);
}

ModRref::ModRref(std::uint32_t prime, std::size_t columns)
    : prime_(prime), columns_(columns), pivot_row_(columns, -1), acc_(columns, 0),
      touched_(columns, 0) {
  if (prime >= (std::uint32_t(1) << 31) || !is_prime(prime))
    throw std::invalid_argument("modulus " + std::to_string(prime) +
                                " is not a prime below 2^31");
}

ModVector ModRref::reduce(const ModVector& row, const std::vector<std::int32_t>& fresh_pivot,
                          const std::vector<ModVector>& fresh) {
  const std::uint64_t p = prime_;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> pending;
  auto add = [&](std::uint32_t c, std::uint64_t v) {
    if (!touched_[c]) {
      touched_[c] = 1;
      pending.push(c);
    }
    acc_[c] += v;
    if (acc_[c] >= kFoldAt) acc_[c] %= p;
  };
  for (const auto& e : row.entries) add(e.column, e.value % p);

  ModVector out{columns_, {}};
  // Every stored row is zero left of its pivot, so subtracting one only
  // touches columns to the right and the sweep is monotone.
  while (!pending.empty()) {
    const std::uint32_t c = pending.top();
    pending.pop();
    const std::uint64_t v = acc_[c] % p;
    acc_[c] = 0;
    touched_[c] = 0;
    if (v == 0) continue;
    const ModVector* pivot = nullptr;
    if (pivot_row_[c] >= 0)
      pivot = &rows_[pivot_row_[c]];
    else if (fresh_pivot[c] >= 0)
      pivot = &fresh[fresh_pivot[c]];
    if (!pivot) {
      out.entries.push_back({c, std::uint32_t(v)});
      continue;
    }
    const std::uint64_t m = p - v;
    for (std::size_t n = 1; n < pivot->entries.size(); ++n)
      add(pivot->entries[n].column, m * pivot->entries[n].value);
  }
  return out;
}

ModVector ModRref::eliminate_fresh(const ModVector& row,
                                   const std::vector<std::int32_t>& fresh_pivot,
                                   const std::vector<ModVector>& fresh) {
  // Rows in `fresh` referenced here are already fully reduced, so one pass
  // over the original pivot-column entries suffices.
  const std::uint64_t p = prime_;
  std::vector<std::uint32_t> cols;
  cols.reserve(row.entries.size() * 2);
  auto add = [&](std::uint32_t c, std::uint64_t v) {
    if (!touched_[c]) {
      touched_[c] = 1;
      cols.push_back(c);
    }
    acc_[c] += v;
    if (acc_[c] >= kFoldAt) acc_[c] %= p;
  };
  const std::uint32_t lead = row.entries.front().column;
  for (const auto& e : row.entries) add(e.column, e.value);
  for (const auto& e : row.entries) {
    if (e.column == lead || fresh_pivot[e.column] < 0) continue;
    const ModVector& pivot = fresh[fresh_pivot[e.column]];
    acc_[e.column] = 0;
    const std::uint64_t m = p - e.value;
    for (std::size_t n = 1; n < pivot.entries.size(); ++n)
      add(pivot.entries[n].column, m * pivot.entries[n].value);
  }
  std::sort(cols.begin(), cols.end());
  ModVector out{columns_, {}};
  out.entries.reserve(cols.size());
  for (std::uint32_t c : cols) {
    const std::uint64_t v = acc_[c] % p;
    acc_[c] = 0;
    touched_[c] = 0;
    if (v) out.entries.push_back({c, std::uint32_t(v)});
  }
  return out;
}

void ModRref::absorb(std::span<const ModVector> block) {
  std::vector<ModVector> fresh;
  std::vector<std::int32_t> fresh_pivot(columns_, -1);

  for (const auto& row : block) {
    if (row.length != columns_)
      throw std::invalid_argument("row length " + std::to_string(row.length) +
                                  " does not match " + std::to_string(columns_) + " columns");
    ModVector w = reduce(row, fresh_pivot, fresh);
    if (w.entries.empty()) continue;
    const std::uint64_t inv = mod_inverse(w.entries.front().value, prime_);
    for (auto& e : w.entries) e.value = std::uint32_t(e.value * inv % prime_);
    fresh_pivot[w.entries.front().column] = std::int32_t(fresh.size());
    fresh.push_back(std::move(w));
  }
  if (fresh.empty()) return;

  // Back-substitute among the new rows, rightmost pivot first.
  std::vector<std::size_t> order(fresh.size());
  for (std::size_t n = 0; n < order.size(); ++n) order[n] = n;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return fresh[a].entries.front().column > fresh[b].entries.front().column;
  });
  for (std::size_t n : order) fresh[n] = eliminate_fresh(fresh[n], fresh_pivot, fresh);

  // Clear the new pivot columns from the existing rows.
  for (auto& row : rows_) {
    const bool hit = std::any_of(row.entries.begin() + 1, row.entries.end(),
                                 [&](const ModEntry& e) { return fresh_pivot[e.column] >= 0; });
    if (hit) row = eliminate_fresh(row, fresh_pivot, fresh);
  }

  std::sort(fresh.begin(), fresh.end(), [](const ModVector& a, const ModVector& b) {
    return a.entries.front().column < b.entries.front().column;
  });
  std::vector<ModVector> merged;
  merged.reserve(rows_.size() + fresh.size());
  std::merge(std::make_move_iterator(rows_.begin()), std::make_move_iterator(rows_.end()),
             std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()),
             std::back_inserter(merged), [](const ModVector& a, const ModVector& b) {
               return a.entries.front().column < b.entries.front().column;
             });
  rows_ = std::move(merged);
  rebuild_index();
}

void ModRref::rebuild_index() {
  std::fill(pivot_row_.begin(), pivot_row_.end(), -1);
  for (std::size_t n = 0; n < rows_.size(); ++n)
    pivot_row_[rows_[n].entries.front().column] = std::int32_t(n);
}

bool ModRref::is_reduced() const {
  std::size_t pivots = 0;
  std::uint32_t last = 0;
  for (std::size_t n = 0; n < rows_.size(); ++n) {
    const auto& row = rows_[n];
    if (row.length != columns_ || row.entries.empty()) return false;
    const auto lead = row.entries.front();
    if (lead.value != 1) return false;
    if (n > 0 && lead.column <= last) return false;
    last = lead.column;
    if (pivot_row_[lead.column] != std::int32_t(n)) return false;
    ++pivots;
    for (std::size_t m = 0; m < row.entries.size(); ++m) {
      const auto& e = row.entries[m];
      if (e.value == 0 || e.value >= prime_ || e.column >= columns_) return false;
      if (m > 0 && e.column <= row.entries[m - 1].column) return false;
      if (m > 0 && pivot_row_[e.column] >= 0) return false;
    }
  }
  const auto marked = std::count_if(pivot_row_.begin(), pivot_row_.end(),
                                    [](std::int32_t r) { return r >= 0; });
  return std::size_t(marked) == pivots;
}

std::vector<ModVector> ModRref::nullspace() const {
  std::vector<std::vector<ModEntry>> by_free(columns_);
  for (const auto& row : rows_) {
    const std::uint32_t pivot = row.entries.front().column;
    for (std::size_t n = 1; n < row.entries.size(); ++n)
      by_free[row.entries[n].column].push_back({pivot, prime_ - row.entries[n].value});
  }
  std::vector<ModVector> basis;
  for (std::uint32_t f = 0; f < columns_; ++f) {
    if (pivot_row_[f] >= 0) continue;
    ModVector v{columns_, std::move(by_free[f])};
    auto it = std::lower_bound(v.entries.begin(), v.entries.end(), f,
                               [](const ModEntry& e, std::uint32_t c) { return e.column < c; });
    v.entries.insert(it, {f, 1});
    basis.push_back(std::move(v));
  }
  return basis;
}

// --- exact rational echelon -------------------------------------------------

using boost::multiprecision::cpp_int;

struct RationalEchelon::Rows {
  // pivot column -> primitive row with positive leading entry
  std::map<std::uint32_t, std::map<std::uint32_t, cpp_int>> pivots;
};

RationalEchelon::RationalEchelon(std::size_t columns)
    : columns_(columns), rows_(std::make_unique<Rows>()) {}
RationalEchelon::~RationalEchelon() = default;
RationalEchelon::RationalEchelon(RationalEchelon&&) noexcept = default;
RationalEchelon& RationalEchelon::operator=(RationalEchelon&&) noexcept = default;

std::size_t RationalEchelon::rank() const { return rows_->pivots.size(); }

void RationalEchelon::absorb(std::span<const std::vector<IntEntry>> block) {
  auto make_primitive = [](std::map<std::uint32_t, cpp_int>& v) {
    cpp_int g = 0;
    for (const auto& [c, x] : v) g = gcd(g, abs(x));
    if (g > 1)
      for (auto& [c, x] : v) x /= g;
    if (!v.empty() && v.begin()->second < 0)
      for (auto& [c, x] : v) x = -x;
  };
  for (const auto& row : block) {
    std::map<std::uint32_t, cpp_int> v;
    for (const auto& e : row) {
      if (e.column >= columns_) throw std::invalid_argument("column out of range");
      if (e.value != 0) v[e.column] += e.value;
    }
    std::erase_if(v, [](const auto& kv) { return kv.second == 0; });
    while (!v.empty()) {
      const auto lead = v.begin()->first;
      auto it = rows_->pivots.find(lead);
      if (it == rows_->pivots.end()) break;
      const auto& pivot = it->second;
      const cpp_int a = pivot.begin()->second;
      const cpp_int b = v.begin()->second;
      const cpp_int g = gcd(a, abs(b));
      const cpp_int sa = a / g, sb = b / g;
      for (auto& [c, x] : v) x *= sa;
      for (const auto& [c, x] : pivot) v[c] -= sb * x;
      std::erase_if(v, [](const auto& kv) { return kv.second == 0; });
      make_primitive(v);
    }
    if (v.empty()) continue;
    make_primitive(v);
    rows_->pivots.emplace(v.begin()->first, std::move(v));
  }
}

}  // namespace tensorinv
