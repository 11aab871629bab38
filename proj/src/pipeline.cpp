#include "tensorinv/pipeline.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <stdexcept>

#include "tensorinv/threads.hpp"

namespace tensorinv {

namespace {

bool less_array(const Term& a, const Term& b) { return compare_flat(a.array.flat(), b.array.flat()) < 0; }

}  // namespace

void InvariantPolynomial::normalize() {
  std::sort(terms.begin(), terms.end(), less_array);
  std::vector<Term> merged;
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().array == t.array)
      merged.back().coefficient += t.coefficient;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const Term& t) { return t.coefficient == 0; });
  terms = std::move(merged);
  if (terms.empty()) return;
  std::int64_t g = 0;
  for (const auto& t : terms) g = std::gcd(g, t.coefficient);
  if (terms.front().coefficient < 0) g = -g;
  for (auto& t : terms) t.coefficient /= g;
  if (orbit_view)
    for (auto& o : *orbit_view) o.coefficient /= g;
}

bool InvariantPolynomial::is_normalized() const {
  if (terms.empty()) return true;
  std::int64_t g = 0;
  for (std::size_t n = 0; n < terms.size(); ++n) {
    if (terms[n].coefficient == 0) return false;
    if (n && compare_flat(terms[n - 1].array.flat(), terms[n].array.flat()) >= 0) return false;
    g = std::gcd(g, terms[n].coefficient);
  }
  return g == 1 && terms.front().coefficient > 0;
}

std::vector<std::int64_t> InvariantPolynomial::distinct_coefficients() const {
  std::vector<std::int64_t> out;
  for (const auto& t : terms) out.push_back(t.coefficient);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// coefficient of every basis element, 0 when absent
std::vector<std::int64_t> dense_coefficients(const InvariantPolynomial& poly,
                                             const MonomialBasis& basis) {
  std::vector<std::int64_t> coef(basis.size(), 0);
  for (const auto& t : poly.terms) {
    const auto idx = basis.find(t.array);
    if (!idx)
      throw std::invalid_argument("term " + to_flat_string(t.array.flat()) +
                                  " is not in the weight-zero basis");
    coef[*idx] = t.coefficient;
  }
  return coef;
}

}  // namespace

Census coefficient_census(const InvariantPolynomial& poly, const MonomialBasis& basis,
                          const OrbitPartition& orbits) {
  const auto coef = dense_coefficients(poly, basis);
  Census census;
  std::map<std::int64_t, CensusRow> rows;
  for (std::size_t o = 0; o < orbits.orbits.size(); ++o) {
    const auto& members = orbits.orbits[o].members;
    const std::int64_t c = coef[members.front()];
    const bool constant = std::all_of(members.begin(), members.end(),
                                      [&](std::size_t m) { return coef[m] == c; });
    if (!constant) {
      census.constant_on_orbits = false;
      census.nonconstant_orbits.push_back(o + 1);
      continue;
    }
    if (c == 0) continue;
    auto& row = rows[c];
    row.coefficient = c;
    row.multiplicity += members.size();
    row.orbit_ids.push_back(o + 1);
  }
  for (auto& [c, row] : rows) census.rows.push_back(std::move(row));
  return census;
}

void attach_orbit_view(InvariantPolynomial& poly, const MonomialBasis& basis,
                       const OrbitPartition& orbits) {
  const auto coef = dense_coefficients(poly, basis);
  std::vector<OrbitTerm> view;
  for (const auto& orbit : orbits.orbits) {
    const std::int64_t c = coef[orbit.members.front()];
    for (std::size_t m : orbit.members)
      if (coef[m] != c) throw std::invalid_argument("coefficients are not constant on orbits");
    if (c != 0) view.push_back({orbit.representative, orbit.size(), c});
  }
  poly.orbit_view = std::move(view);
}

namespace {

template <class Coef>
std::vector<ResidualTerm> merge_images(std::vector<std::pair<std::vector<Exponent>, Coef>>& images,
                                       const Format& format) {
  std::sort(images.begin(), images.end(),
            [](const auto& a, const auto& b) { return compare_flat(a.first, b.first) < 0; });
  std::vector<ResidualTerm> out;
  for (std::size_t n = 0; n < images.size();) {
    BigInt sum = 0;
    std::size_t m = n;
    for (; m < images.size() && images[m].first == images[n].first; ++m) sum += images[m].second;
    if (sum != 0) out.push_back({sum, ExponentArray(format, images[n].first)});
    n = m;
  }
  return out;
}

}  // namespace

std::vector<ResidualTerm> verify_annihilation_integer(const InvariantPolynomial& poly,
                                                      const RaisingOp& op, bool& overflowed) {
  const Format& f = poly.format;
  overflowed = false;
  std::vector<std::pair<std::vector<Exponent>, std::int64_t>> images;
  for (const auto& t : poly.terms) {
    const auto src = t.array.flat();
    for_each_raising_move(op, f, src, [&](std::int64_t c, std::size_t from, std::size_t to) {
      std::int64_t product;
      if (__builtin_mul_overflow(c, t.coefficient, &product)) overflowed = true;
      std::vector<Exponent> image(src.begin(), src.end());
      image[from] -= 1;
      image[to] += 1;
      images.emplace_back(std::move(image), product);
    });
  }
  if (!overflowed) {
    // Check that every partial sum of coincident images fits as well.
    std::sort(images.begin(), images.end(),
              [](const auto& a, const auto& b) { return compare_flat(a.first, b.first) < 0; });
    for (std::size_t n = 0; n < images.size() && !overflowed;) {
      std::int64_t sum = 0;
      std::size_t m = n;
      for (; m < images.size() && images[m].first == images[n].first; ++m)
        if (__builtin_add_overflow(sum, images[m].second, &sum)) overflowed = true;
      n = m;
    }
  }
  if (!overflowed) return merge_images(images, f);

  std::vector<std::pair<std::vector<Exponent>, BigInt>> wide;
  for (const auto& t : poly.terms) {
    const auto src = t.array.flat();
    for_each_raising_move(op, f, src, [&](std::int64_t c, std::size_t from, std::size_t to) {
      std::vector<Exponent> image(src.begin(), src.end());
      image[from] -= 1;
      image[to] += 1;
      wide.emplace_back(std::move(image), BigInt(c) * BigInt(t.coefficient));
    });
  }
  return merge_images(wide, f);
}

std::vector<ResidualTerm> verify_annihilation_integer(const InvariantPolynomial& poly,
                                                      const RaisingOp& op) {
  bool overflowed = false;
  return verify_annihilation_integer(poly, op, overflowed);
}

std::vector<ModVector> to_mod_rows(const OperatorBlock& block, std::size_t columns,
                                   std::uint32_t prime) {
  std::vector<ModVector> rows;
  rows.reserve(block.rows.size());
  for (const auto& r : block.rows) {
    ModVector v{columns, {}};
    for (const auto& e : r) {
      const std::uint32_t x = mod_reduce(e.coefficient, prime);
      if (x) v.entries.push_back({e.column, x});
    }
    rows.push_back(std::move(v));
  }
  return rows;
}

std::vector<std::int64_t> lift_kernel_vector(const ModVector& v, std::uint32_t prime,
                                             std::uint32_t max_scale) {
  std::vector<std::int64_t> best;
  std::int64_t best_max = -1;
  for (std::uint32_t s = 1; s <= std::min(max_scale, prime - 1); ++s) {
    std::vector<std::int64_t> lifted(v.length, 0);
    std::int64_t m = 0;
    for (const auto& e : v.entries) {
      const auto x = symmetric_lift(std::uint32_t(std::uint64_t(e.value) * s % prime), prime);
      lifted[e.column] = x;
      m = std::max<std::int64_t>(m, x < 0 ? -x : x);
    }
    if (best_max < 0 || m < best_max) {
      best_max = m;
      best = std::move(lifted);
    }
  }
  std::int64_t g = 0;
  for (auto x : best) g = std::gcd(g, x);
  if (g > 1)
    for (auto& x : best) x /= g;
  return best;
}

InvariantSpace compute_invariant_space(const Format& format, int degree, std::uint32_t prime) {
  if (prime < 3) throw std::invalid_argument("prime must be at least 3");
  InvariantSpace space;
  PipelineReport& report = space.report;
  report.format = format;
  report.degree = degree;
  report.prime = prime;

  const MonomialBasis basis = enumerate_weight_space(format, degree, Weight::zero(format));
  report.basis_size = basis.size();
  ModRref state(prime, basis.size());
  for (const auto& op : simple_raising_ops(format)) {
    const OperatorBlock block = operator_block(op, basis);
    state.absorb(to_mod_rows(block, basis.size(), prime));
    report.operators.push_back({op, block.codomain.size(), state.rank()});
  }
  const auto kernel = state.nullspace();
  report.nullity = kernel.size();

  for (const auto& v : kernel) {
    const auto lifted = lift_kernel_vector(v, prime);
    InvariantPolynomial poly{format, degree, {}, std::nullopt};
    for (std::size_t n = 0; n < lifted.size(); ++n)
      if (lifted[n] != 0) poly.terms.push_back({lifted[n], basis.array(n)});
    poly.normalize();
    space.candidates.push_back(std::move(poly));
  }
  return space;
}

std::vector<std::size_t> rank_ladder(const Format& format, int degree, std::uint32_t prime) {
  const MonomialBasis basis = enumerate_weight_space(format, degree, Weight::zero(format));
  ModRref state(prime, basis.size());
  std::vector<std::size_t> ranks;
  for (const auto& op : simple_raising_ops(format)) {
    state.absorb(to_mod_rows(operator_block(op, basis), basis.size(), prime));
    ranks.push_back(state.rank());
  }
  return ranks;
}

bool orbit_constancy_expected(const Format& format, int degree) {
  for (int m = 0; m < 3; ++m) {
    const int n = format.dim(m);
    if (n > 1 && (degree % n != 0 || (degree / n) % 2 != 0)) return false;
  }
  return true;
}

Certification certify(const Format& format, int degree, std::uint32_t prime,
                      std::optional<std::uint32_t> second_prime) {
  InvariantSpace space = compute_invariant_space(format, degree, prime);
  Certification cert;
  cert.report = std::move(space.report);
  PipelineReport& report = cert.report;
  cert.basis = enumerate_weight_space(format, degree, Weight::zero(format));
  cert.orbits = orbit_partition(cert.basis);
  report.orbit_count = cert.orbits.orbits.size();

  if (second_prime) {
    if (*second_prime == prime) throw std::invalid_argument("the two primes must differ");
    report.second_prime = *second_prime;
    report.second_prime_ranks = rank_ladder(format, degree, *second_prime);
  }

  const auto ops = simple_raising_ops(format);
  for (auto& poly : space.candidates) {
    CandidateCheck check;
    check.terms = poly.terms.size();
    std::vector<std::future<bool>> verdicts;
    for (const auto& op : ops)
      verdicts.push_back(run_task([&poly, op] {
        return verify_annihilation_integer(poly, op).empty();
      }));
    for (std::size_t n = 0; n < ops.size(); ++n)
      if (!verdicts[n].get()) check.failed_operators.push_back(ops[n].label());
    const Census census = coefficient_census(poly, cert.basis, cert.orbits);
    check.orbit_constant = census.constant_on_orbits;
    check.orbit_check_applies = orbit_constancy_expected(format, degree);
    check.certified = check.failed_operators.empty() &&
                      (check.orbit_constant || !check.orbit_check_applies);
    if (check.certified) {
      if (check.orbit_constant) {
        attach_orbit_view(poly, cert.basis, cert.orbits);
        report.census.push_back(census);
      }
      cert.invariants.push_back(std::move(poly));
    }
    report.candidates.push_back(std::move(check));
  }
  report.certified = cert.invariants.size();
  report.exact = report.certified == report.nullity;
  return cert;
}

}  // namespace tensorinv
