#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support.hpp"
#include "tensorinv/evaluation.hpp"
#include "tensorinv/io.hpp"

using namespace tensorinv;
using tensorinv::testing::data_path;

namespace {

const Format k332(3, 3, 2);

const InvariantPolynomial& shipped(const char* name) {
  static std::map<std::string, InvariantPolynomial> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, parse_polynomial(read_file(data_path(name)))).first;
  return it->second;
}

const InvariantPolynomial& hyperdet332() { return shipped("hyperdeterminant_3x3x2_deg12.json"); }
const InvariantPolynomial& hyperdet222() { return shipped("hyperdeterminant_2x2x2_deg4.json"); }

BigInt leibniz(const IntMatrix& m) {
  std::vector<int> perm(m.n);
  std::iota(perm.begin(), perm.end(), 0);
  BigInt total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < m.n; ++i)
      for (int j = i + 1; j < m.n; ++j) inversions += perm[i] > perm[j];
    BigInt term = inversions % 2 ? -1 : 1;
    for (int i = 0; i < m.n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

IntMatrix random_matrix(int n, std::mt19937_64& rng, int span = 3) {
  IntMatrix m(n);
  for (auto& x : m.a) x = int(rng() % (2 * span + 1)) - span;
  return m;
}

NumericArray from_slices(const Format& f, const std::vector<std::vector<long long>>& a,
                         const std::vector<std::vector<long long>>& b) {
  NumericArray t(f);
  for (int i = 0; i < f.p; ++i)
    for (int j = 0; j < f.q; ++j) {
      t(i, j, 0) = a[i][j];
      t(i, j, 1) = b[i][j];
    }
  return t;
}

BigInt power(BigInt x, int e) {
  BigInt out = 1;
  while (e-- > 0) out *= x;
  return out;
}

}  // namespace

TEST_CASE("determinants") {
  CHECK(determinant(IntMatrix::from_rows({{2, 1}, {1, 1}})) == 1);
  CHECK(determinant(IntMatrix::from_rows({{0, 1}, {1, 0}})) == -1);
  CHECK(determinant(IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 0);
  CHECK(determinant(IntMatrix::from_rows({{0, 0, 2}, {0, 3, 0}, {5, 0, 0}})) == -30);
  CHECK(determinant(IntMatrix(0)) == 1);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const IntMatrix m = random_matrix(1 + int(rng() % 5), rng);
    REQUIRE(determinant(m) == leibniz(m));
  }
  CHECK_THROWS_AS(IntMatrix::from_rows({{1, 2}, {3}}), std::invalid_argument);
}

TEST_CASE("random unimodular matrices") {
  for (int n = 1; n <= 4; ++n)
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const IntMatrix m = random_unimodular(n, seed);
      REQUIRE(determinant(m) == 1);
      REQUIRE(m == random_unimodular(n, seed));
      for (const auto& x : m.a) REQUIRE(abs(x) <= 6);
    }
  CHECK(random_unimodular(1, 9) == IntMatrix::identity(1));
  CHECK_FALSE(random_unimodular(3, 1) == IntMatrix::identity(3));
  CHECK_THROWS_AS(random_unimodular(0, 1), std::invalid_argument);
}

TEST_CASE("random arrays") {
  const auto t = random_array(k332, 42);
  CHECK(t == random_array(k332, 42));
  CHECK_FALSE(t == random_array(k332, 43));
  for (const auto& x : t.entries) CHECK((x >= -5 && x <= 5));
  CHECK_THROWS_AS(random_array(k332, 1, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(NumericArray(k332, std::vector<BigInt>(5)), std::invalid_argument);
}

TEST_CASE("multilinear action") {
  std::mt19937_64 rng(8);
  const auto t = random_array(k332, 1);
  const IntMatrix i3 = IntMatrix::identity(3), i2 = IntMatrix::identity(2);
  CHECK(multilinear_act(i3, i3, i2, t) == t);

  const IntMatrix perm = IntMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  const auto moved = multilinear_act(perm, i3, i2, t);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 2; ++k) {
      CHECK(moved(0, j, k) == t(1, j, k));
      CHECK(moved(2, j, k) == t(0, j, k));
    }

  for (int trial = 0; trial < 10; ++trial) {
    const IntMatrix a1 = random_matrix(3, rng), a2 = random_matrix(3, rng);
    const IntMatrix b1 = random_matrix(3, rng), b2 = random_matrix(3, rng);
    const IntMatrix c1 = random_matrix(2, rng), c2 = random_matrix(2, rng);
    CHECK(multilinear_act(a1 * a2, b1 * b2, c1 * c2, t) ==
          multilinear_act(a1, b1, c1, multilinear_act(a2, b2, c2, t)));
  }
  CHECK_THROWS_AS(multilinear_act(i2, i3, i2, t), std::invalid_argument);
}

TEST_CASE("slice pencil and discriminant by hand") {
  const Format f(3, 3, 2);
  const auto t = from_slices(f, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  const auto pencil = slice_pencil(t);
  CHECK(pencil.coefficients == std::vector<BigInt>{1, 6, 11, 6});
  CHECK(pencil_discriminant(t) == BigInt(4));

  const auto same = from_slices(f, {{1, 2, 0}, {0, 1, 3}, {1, 0, 1}}, {{1, 2, 0}, {0, 1, 3}, {1, 0, 1}});
  CHECK(pencil_discriminant(same) == BigInt(0));
  CHECK_FALSE(pencil_discriminant(NumericArray(f)));
  const auto singular_b = from_slices(f, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  CHECK_FALSE(pencil_discriminant(singular_b));
  CHECK_THROWS_AS(slice_pencil(NumericArray(Format(3, 2, 2))), std::invalid_argument);

  // quadratic: b^2 - 4ac
  const Format g(2, 2, 2);
  const auto q = from_slices(g, {{1, 2}, {3, 4}}, {{2, 0}, {1, 1}});
  const auto c = slice_pencil(q).coefficients;
  CHECK(pencil_discriminant(q) == c[1] * c[1] - 4 * c[0] * c[2]);
}

TEST_CASE("resultants") {
  const IntPolynomial1D f{{-1, 1}}, g{{-2, 1}};
  CHECK(resultant(f, g) == -1);
  const IntPolynomial1D h{{2, -3, 1}};  // (x - 1)(x - 2)
  CHECK(resultant(h, f) == 0);
  CHECK(h.derivative().coefficients == std::vector<BigInt>{-3, 2});
  CHECK(IntPolynomial1D{{5}}.derivative().coefficients == std::vector<BigInt>{0});
}

TEST_CASE("evaluation basics") {
  const auto& poly = hyperdet332();
  CHECK(evaluate(poly, NumericArray(k332)) == 0);
  const auto t = random_array(k332, 5);
  NumericArray doubled = t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) doubled(i, j, 1) = doubled(i, j, 0);
  CHECK(evaluate(poly, doubled) == 0);
  CHECK_THROWS_AS(evaluate(poly, NumericArray(Format(2, 2, 2))), std::invalid_argument);
}

TEST_CASE("homogeneity") {
  const auto& poly = hyperdet332();
  const auto t = random_array(k332, 17);
  const BigInt base = evaluate(poly, t);
  CHECK(base != 0);
  for (int c : {-2, 0, 3}) {
    NumericArray s = t;
    for (auto& x : s.entries) x *= c;
    CHECK(evaluate(poly, s) == power(c, 12) * base);
  }
}

TEST_CASE("covariance under integer matrices") {
  const auto& poly = hyperdet332();
  const auto t = random_array(k332, 23);
  const IntMatrix i3 = IntMatrix::identity(3), i2 = IntMatrix::identity(2);

  IntMatrix two(3);
  for (int n = 0; n < 3; ++n) two(n, n) = 2;
  const auto scaled = covariance_check(poly, t, two, i3, i2);
  CHECK(scaled.pass);
  CHECK(scaled.factor == power(8, 4));

  const auto swapped = covariance_check(poly, t, i3, i3, IntMatrix::from_rows({{0, 1}, {1, 0}}));
  CHECK(swapped.pass);
  CHECK(swapped.factor == 1);

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    const IntMatrix a = random_matrix(3, rng, 2), b = random_matrix(3, rng, 2), c = random_matrix(2, rng, 2);
    const auto r = covariance_check(poly, random_array(k332, 100 + trial), a, b, c);
    CHECK(r.pass);
    CHECK(r.factor == power(determinant(a), 4) * power(determinant(b), 4) * power(determinant(c), 6));
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = covariance_check(poly, random_array(k332, 200 + seed), random_unimodular(3, seed),
                                    random_unimodular(3, seed + 50), random_unimodular(2, seed + 90));
    CHECK(r.pass);
    CHECK(r.lhs == r.rhs);
  }
  CHECK_THROWS_AS(covariance_check(InvariantPolynomial{k332, 4, {}, std::nullopt}, t, i3, i3, i2),
                  std::invalid_argument);
}

TEST_CASE("covariance of the 4x4x2 degree 8 invariant") {
  const auto& poly = shipped("invariant_4x4x2_deg8.json");
  const Format f(4, 4, 2);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 2; ++trial) {
    const IntMatrix a = random_matrix(4, rng, 1), b = random_matrix(4, rng, 1), c = random_matrix(2, rng, 2);
    const auto r = covariance_check(poly, random_array(f, 300 + trial, -2, 2), a, b, c);
    CHECK(r.pass);
  }
}

TEST_CASE("hyperdeterminant matches the pencil discriminant") {
  for (const auto* poly : {&hyperdet332(), &hyperdet222()}) {
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 20; ++seed) {
      REQUIRE(seed < 1000);
      const auto t = random_array(poly->format, 7000 + seed);
      const auto disc = pencil_discriminant(t);
      if (!disc) continue;
      REQUIRE(evaluate(*poly, t) == *disc);
      ++checked;
    }
  }
}
