#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "support.hpp"
#include "tensorinv/pipeline.hpp"

using namespace tensorinv;
using tensorinv::testing::from_matrix;

namespace {

const Format k332(3, 3, 2);

// Symbolic polynomials in the entries of a small array, keyed by exponent list.
using Symbolic = std::map<std::vector<int>, BigInt>;

Symbolic variable(const Format& f, int i, int j, int k) {
  std::vector<int> e(f.size(), 0);
  e[f.offset(i, j, k)] = 1;
  return {{e, 1}};
}

Symbolic operator*(const Symbolic& a, const Symbolic& b) {
  Symbolic out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      auto e = ea;
      for (std::size_t n = 0; n < e.size(); ++n) e[n] += eb[n];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Symbolic combine(const Symbolic& a, const Symbolic& b, int sign) {
  Symbolic out = a;
  for (const auto& [e, c] : b) out[e] += sign * c;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Symbolic scale(const Symbolic& a, int s) {
  Symbolic out;
  for (const auto& [e, c] : a) out[e] = c * s;
  return out;
}

// b^2 - 4ac of det(A + tB) for the two slices of a 2x2x2 array.
Symbolic pencil_discriminant_2x2() {
  const Format f(2, 2, 2);
  auto a = [&](int i, int j) { return variable(f, i, j, 0); };
  auto b = [&](int i, int j) { return variable(f, i, j, 1); };
  const Symbolic c0 = combine(a(0, 0) * a(1, 1), a(0, 1) * a(1, 0), -1);
  const Symbolic c2 = combine(b(0, 0) * b(1, 1), b(0, 1) * b(1, 0), -1);
  const Symbolic c1 = combine(combine(a(0, 0) * b(1, 1), b(0, 0) * a(1, 1), 1),
                              combine(a(0, 1) * b(1, 0), b(0, 1) * a(1, 0), 1), -1);
  return combine(c1 * c1, scale(c0 * c2, 4), -1);
}

Symbolic as_symbolic(const InvariantPolynomial& poly) {
  Symbolic out;
  for (const auto& t : poly.terms) out[std::vector<int>(t.array.flat().begin(), t.array.flat().end())] = t.coefficient;
  return out;
}

const Certification& degree12() {
  static const Certification cert = certify(k332, 12, 1009);
  return cert;
}

}  // namespace

TEST_CASE("normalization") {
  const Format f(1, 1, 2);
  InvariantPolynomial poly{f, 2, {}, std::nullopt};
  poly.terms.push_back({-6, ExponentArray::from_ints(f, std::vector<int>{2, 0})});
  poly.terms.push_back({4, ExponentArray::from_ints(f, std::vector<int>{0, 2})});
  poly.terms.push_back({2, ExponentArray::from_ints(f, std::vector<int>{1, 1})});
  poly.terms.push_back({-2, ExponentArray::from_ints(f, std::vector<int>{1, 1})});
  poly.terms.push_back({10, ExponentArray::from_ints(f, std::vector<int>{0, 2})});
  CHECK_FALSE(poly.is_normalized());
  poly.normalize();
  REQUIRE(poly.terms.size() == 2);
  CHECK(poly.terms[0].coefficient == 7);
  CHECK(poly.terms[0].array.flat()[0] == 0);
  CHECK(poly.terms[1].coefficient == -3);
  CHECK(poly.is_normalized());
  const auto copy = poly;
  poly.normalize();
  CHECK(poly == copy);
  CHECK(poly.distinct_coefficients() == std::vector<std::int64_t>{-3, 7});
}

TEST_CASE("kernel lifting") {
  // (1, 1/2) scales to (2, 1)
  const ModVector v{2, {{0, 1}, {1, mod_inverse(2, 1009)}}};
  CHECK(lift_kernel_vector(v, 1009) == std::vector<std::int64_t>{2, 1});
  const ModVector w{3, {{0, 3}, {2, 1003}}};
  CHECK(lift_kernel_vector(w, 1009) == std::vector<std::int64_t>{1, 0, -2});
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(compute_invariant_space(k332, 6, 2), std::invalid_argument);
  CHECK_THROWS_AS(certify(k332, 6, 1009, 1009), std::invalid_argument);
}

TEST_CASE("orbit constancy applies only for even slice exponents") {
  CHECK(orbit_constancy_expected(k332, 12));
  CHECK_FALSE(orbit_constancy_expected(k332, 6));
  CHECK(orbit_constancy_expected(Format(4, 4, 2), 8));
  CHECK(orbit_constancy_expected(Format(2, 2, 2), 4));
  CHECK_FALSE(orbit_constancy_expected(Format(2, 2, 3), 6));
}

TEST_CASE("degree 6 has no invariants") {
  const auto cert = certify(k332, 6, 1009, 2003);
  CHECK(cert.report.nullity == 0);
  CHECK(cert.invariants.empty());
  CHECK(cert.report.exact);
  REQUIRE(cert.report.second_prime_ranks);
  CHECK(*cert.report.second_prime_ranks == std::vector<std::size_t>{204, 277, 283, 286, 288});
  CHECK(cert.report.orbit_count == 8);
}

TEST_CASE("2x2x2 invariant equals the pencil discriminant") {
  const Format f(2, 2, 2);
  const auto cert = certify(f, 4, 1009, 2003);
  REQUIRE(cert.invariants.size() == 1);
  CHECK(cert.report.exact);
  const auto& poly = cert.invariants[0];
  CHECK(poly.terms.size() == 12);
  std::map<std::int64_t, int> histogram;
  for (const auto& t : poly.terms) ++histogram[t.coefficient];
  CHECK(histogram == std::map<std::int64_t, int>{{-2, 6}, {1, 4}, {4, 2}});
  const Symbolic disc = pencil_discriminant_2x2();
  CHECK((as_symbolic(poly) == disc || as_symbolic(poly) == scale(disc, -1)));
}

TEST_CASE("sign-twisted invariant of 2x2x3 arrays") {
  const Format f(2, 2, 3);
  const auto cert = certify(f, 6, 1009);
  REQUIRE(cert.invariants.size() == 1);
  REQUIRE(cert.report.candidates.size() == 1);
  const auto& check = cert.report.candidates[0];
  CHECK(check.certified);
  CHECK_FALSE(check.orbit_check_applies);
  CHECK_FALSE(check.orbit_constant);
  CHECK(cert.invariants[0].terms.size() == 66);
  CHECK_FALSE(cert.invariants[0].orbit_view);
  // each orbit carries one absolute value
  const auto census = coefficient_census(cert.invariants[0], cert.basis, cert.orbits);
  std::map<std::size_t, std::set<std::int64_t>> magnitudes;
  for (const auto& t : cert.invariants[0].terms)
    magnitudes[cert.orbits.orbit_of[*cert.basis.find(t.array)]].insert(std::abs(t.coefficient));
  for (const auto& [orbit, values] : magnitudes) CHECK(values.size() == 1);
  CHECK_FALSE(census.constant_on_orbits);
}

TEST_CASE("4x4x2 degree 4 has no invariants") {
  const auto cert = certify(Format(4, 4, 2), 4, 1009);
  CHECK(cert.report.nullity == 0);
  CHECK(cert.invariants.empty());
}

TEST_CASE("degree 12 census") {
  const auto& cert = degree12();
  REQUIRE(cert.invariants.size() == 1);
  REQUIRE(cert.report.census.size() == 1);
  const auto& census = cert.report.census[0];
  CHECK(census.constant_on_orbits);
  CHECK(census.rows.size() == 41);
  auto row = [&](std::int64_t c) {
    for (const auto& r : census.rows)
      if (r.coefficient == c) return r;
    return CensusRow{0, 0, {}};
  };
  CHECK(row(-104).multiplicity == 18);
  CHECK(row(-104).orbit_ids == std::vector<std::size_t>{153});
  CHECK(row(76).multiplicity == 36);
  CHECK(row(76).orbit_ids == std::vector<std::size_t>{176});
  CHECK(row(-30).multiplicity == 24);
  CHECK(row(-30).orbit_ids == std::vector<std::size_t>{173, 178});
  CHECK(row(-26).multiplicity == 252);
  CHECK(row(4).orbit_ids.size() == 19);
  std::size_t total = 0;
  for (const auto& r : census.rows) total += r.multiplicity;
  CHECK(total == 16749);
  REQUIRE(cert.invariants[0].orbit_view);
  CHECK(cert.invariants[0].orbit_view->size() == 178);
}

TEST_CASE("orbit view of the last orbits") {
  const auto& view = *degree12().invariants[0].orbit_view;
  const auto& o161 = view[160];
  CHECK(o161.coefficient == 24);
  CHECK(o161.size == 144);
  CHECK(o161.representative == from_matrix(k332, "0 0 0 | 1 1 2; 1 1 1 | 0 1 0; 2 1 0 | 0 0 1"));
  const auto& o176 = view[175];
  CHECK(o176.coefficient == 76);
  CHECK(o176.size == 36);
  CHECK(o176.representative == from_matrix(k332, "0 0 2 | 1 1 0; 1 1 0 | 0 1 1; 1 1 0 | 1 0 1"));
}

TEST_CASE("annihilation over the integers") {
  const auto& poly = degree12().invariants[0];
  for (const auto& op : simple_raising_ops(k332)) {
    bool overflowed = true;
    CHECK(verify_annihilation_integer(poly, op, overflowed).empty());
    CHECK_FALSE(overflowed);
  }
}

TEST_CASE("perturbations are detected") {
  auto poly = degree12().invariants[0];
  poly.terms[100].coefficient += 1;
  std::size_t failing = 0;
  for (const auto& op : simple_raising_ops(k332)) failing += !verify_annihilation_integer(poly, op).empty();
  CHECK(failing > 0);

  InvariantPolynomial single{k332, 6, {}, std::nullopt};
  single.terms.push_back({1, from_matrix(k332, "0 0 1 | 0 0 1; 0 1 0 | 0 1 0; 1 0 0 | 1 0 0")});
  const auto residual = verify_annihilation_integer(single, RaisingOp{0, 0});
  REQUIRE(residual.size() == 2);
  CHECK(residual[0].coefficient == 1);
}

TEST_CASE("overflowing coefficients fall back to wide arithmetic") {
  InvariantPolynomial poly{k332, 6, {}, std::nullopt};
  poly.terms.push_back({INT64_MAX, from_matrix(k332, "0 0 0 | 0 0 2; 0 1 0 | 0 1 0; 2 0 0 | 0 0 0")});
  bool overflowed = false;
  const auto residual = verify_annihilation_integer(poly, RaisingOp{2, 0}, overflowed);
  CHECK(overflowed);
  REQUIRE(residual.size() == 2);
  std::set<BigInt> values{residual[0].coefficient, residual[1].coefficient};
  CHECK(values == std::set<BigInt>{BigInt(INT64_MAX), BigInt(INT64_MAX) * 2});

  // 2 * 2^62 and -2^63 meet on one monomial and cancel exactly
  const Format g(1, 2, 2);
  InvariantPolynomial pair{g, 4, {}, std::nullopt};
  pair.terms.push_back({std::int64_t(1) << 62, ExponentArray::from_ints(g, std::vector<int>{0, 2, 2, 0})});
  pair.terms.push_back({INT64_MIN, ExponentArray::from_ints(g, std::vector<int>{1, 1, 1, 1})});
  overflowed = false;
  const auto rest = verify_annihilation_integer(pair, RaisingOp{1, 0}, overflowed);
  CHECK(overflowed);
  const auto cancelled = ExponentArray::from_ints(g, std::vector<int>{1, 2, 1, 0});
  for (const auto& t : rest) CHECK_FALSE(t.array == cancelled);
  CHECK(rest.size() == 1);
}

TEST_CASE("term set is invariant under the full group") {
  const auto& cert = degree12();
  const auto& poly = cert.invariants[0];
  std::map<std::vector<Exponent>, std::int64_t> coef;
  for (const auto& t : poly.terms) coef[{t.array.flat().begin(), t.array.flat().end()}] = t.coefficient;
  for (const auto& g : group_elements(k332)) {
    for (const auto& t : poly.terms) {
      const auto img = act(g, t.array);
      const auto it = coef.find({img.flat().begin(), img.flat().end()});
      REQUIRE(it != coef.end());
      REQUIRE(it->second == t.coefficient);
    }
  }
}

TEST_CASE("census rejects foreign terms") {
  const auto& cert = degree12();
  InvariantPolynomial poly{k332, 12, {}, std::nullopt};
  poly.terms.push_back({1, from_matrix(k332, "0 0 0 | 0 1 2; 0 1 0 | 0 0 0; 2 0 0 | 0 0 6")});
  CHECK_THROWS_AS(coefficient_census(poly, cert.basis, cert.orbits), std::invalid_argument);
}
