#include "tensorinv/evaluation.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tensorinv {

using boost::multiprecision::cpp_rational;

NumericArray::NumericArray(Format f, std::vector<BigInt> values)
    : format(f), entries(std::move(values)) {
  if (entries.size() != format.size())
    throw std::invalid_argument("array of format " + format.to_string() + " needs " +
                                std::to_string(format.size()) + " entries");
}

IntMatrix IntMatrix::identity(int size) {
  IntMatrix m(size);
  for (int i = 0; i < size; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  IntMatrix m(int(rows.size()));
  for (int i = 0; i < m.n; ++i) {
    if (int(rows[i].size()) != m.n) throw std::invalid_argument("matrix is not square");
    for (int j = 0; j < m.n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.n != y.n) throw std::invalid_argument("matrix sizes differ");
  IntMatrix out(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k)
      if (x(i, k) != 0)
        for (int j = 0; j < x.n; ++j) out(i, j) += x(i, k) * y(k, j);
  return out;
}

namespace {

// Bareiss elimination on a dense row-major copy.
BigInt bareiss_determinant(std::vector<BigInt> m, int n) {
  if (n == 0) return 1;
  auto at = [&](int i, int j) -> BigInt& { return m[std::size_t(i) * n + j]; };
  int sign = 1;
  BigInt prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n && swap < 0; ++i)
        if (at(i, k) != 0) swap = i;
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

BigInt power(const BigInt& base, int e) {
  BigInt out = 1;
  for (int n = 0; n < e; ++n) out *= base;
  return out;
}

}  // namespace

BigInt determinant(const IntMatrix& m) { return bareiss_determinant(m.a, m.n); }

IntPolynomial1D IntPolynomial1D::derivative() const {
  IntPolynomial1D d;
  for (std::size_t n = 1; n < coefficients.size(); ++n)
    d.coefficients.push_back(coefficients[n] * int(n));
  if (d.coefficients.empty()) d.coefficients.push_back(0);
  return d;
}

BigInt evaluate(const InvariantPolynomial& poly, const NumericArray& t) {
  if (!(poly.format == t.format))
    throw std::invalid_argument("array format " + t.format.to_string() +
                                " does not match polynomial format " + poly.format.to_string());
  const std::size_t n = t.format.size();
  int top = 0;
  for (const auto& term : poly.terms)
    for (auto e : term.array.flat()) top = std::max(top, int(e));
  // powers[pos][e] = t_pos^e
  std::vector<std::vector<BigInt>> powers(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    powers[pos].resize(top + 1);
    powers[pos][0] = 1;
    for (int e = 1; e <= top; ++e) powers[pos][e] = powers[pos][e - 1] * t.entries[pos];
  }
  BigInt sum = 0;
  for (const auto& term : poly.terms) {
    BigInt product = term.coefficient;
    const auto flat = term.array.flat();
    for (std::size_t pos = 0; pos < n && product != 0; ++pos)
      if (flat[pos]) product *= powers[pos][flat[pos]];
    sum += product;
  }
  return sum;
}

NumericArray multilinear_act(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c,
                             const NumericArray& t) {
  const Format& f = t.format;
  if (a.n != f.p || b.n != f.q || c.n != f.r)
    throw std::invalid_argument("matrix sizes do not match array format " + f.to_string());
  NumericArray s1(f), s2(f), s3(f);
  for (int i = 0; i < f.p; ++i)
    for (int x = 0; x < f.p; ++x)
      if (a(i, x) != 0)
        for (int j = 0; j < f.q; ++j)
          for (int k = 0; k < f.r; ++k) s1(i, j, k) += a(i, x) * t(x, j, k);
  for (int j = 0; j < f.q; ++j)
    for (int y = 0; y < f.q; ++y)
      if (b(j, y) != 0)
        for (int i = 0; i < f.p; ++i)
          for (int k = 0; k < f.r; ++k) s2(i, j, k) += b(j, y) * s1(i, y, k);
  for (int k = 0; k < f.r; ++k)
    for (int z = 0; z < f.r; ++z)
      if (c(k, z) != 0)
        for (int i = 0; i < f.p; ++i)
          for (int j = 0; j < f.q; ++j) s3(i, j, k) += c(k, z) * s2(i, j, z);
  return s3;
}

IntMatrix random_unimodular(int n, std::uint64_t seed, int shears, long long cap) {
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
  IntMatrix m = IntMatrix::identity(n);
  if (n == 1) return m;
  std::mt19937_64 rng(seed);
  constexpr int kMultipliers[] = {-2, -1, 1, 2};
  for (int s = 0; s < shears; ++s) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      const int i = int(rng() % n);
      int j = int(rng() % (n - 1));
      if (j >= i) ++j;
      const int mult = kMultipliers[rng() % 4];
      std::vector<BigInt> row(n);
      bool ok = true;
      for (int c = 0; c < n && ok; ++c) {
        row[c] = m(i, c) + mult * m(j, c);
        ok = abs(row[c]) <= cap;
      }
      if (!ok) continue;
      for (int c = 0; c < n; ++c) m(i, c) = row[c];
      break;
    }
  }
  return m;
}

NumericArray random_array(const Format& format, std::uint64_t seed, int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("empty entry range");
  std::mt19937_64 rng(seed);
  NumericArray t(format);
  const std::uint64_t span = std::uint64_t(hi - lo) + 1;
  for (auto& x : t.entries) x = lo + std::int64_t(rng() % span);
  return t;
}

IntPolynomial1D slice_pencil(const NumericArray& t) {
  const Format& f = t.format;
  if (f.p != f.q || f.r != 2)
    throw std::invalid_argument("slice pencil needs a p x p x 2 array, got " + f.to_string());
  const int p = f.p;
  // Values at t = 0..p, then Newton divided differences.
  std::vector<cpp_rational> dd(p + 1);
  for (int s = 0; s <= p; ++s) {
    IntMatrix m(p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) m(i, j) = t(i, j, 0) + s * t(i, j, 1);
    dd[s] = cpp_rational(determinant(m));
  }
  for (int level = 1; level <= p; ++level)
    for (int s = p; s >= level; --s) dd[s] = (dd[s] - dd[s - 1]) / level;
  // Horner expansion of sum dd[s] * prod_{u<s} (x - u).
  std::vector<cpp_rational> c(p + 1, cpp_rational(0));
  for (int s = p; s >= 0; --s) {
    // c := c * (x - s) + dd[s]
    for (int n = p; n >= 1; --n) c[n] = c[n - 1] - s * c[n];
    c[0] = dd[s] - s * c[0];
  }
  IntPolynomial1D out;
  for (const auto& x : c) {
    if (denominator(x) != 1) throw std::logic_error("non-integral pencil coefficient");
    out.coefficients.push_back(numerator(x));
  }
  return out;
}

BigInt resultant(const IntPolynomial1D& f, const IntPolynomial1D& g) {
  const int m = f.degree_bound(), n = g.degree_bound();
  if (m < 0 || n < 0) throw std::invalid_argument("empty polynomial");
  const int size = m + n;
  if (size == 0) return 1;
  IntMatrix s(size);
  for (int row = 0; row < n; ++row)
    for (int e = 0; e <= m; ++e) s(row, row + e) = f.coefficients[m - e];
  for (int row = 0; row < m; ++row)
    for (int e = 0; e <= n; ++e) s(n + row, row + e) = g.coefficients[n - e];
  return determinant(s);
}

std::optional<BigInt> pencil_discriminant(const NumericArray& t) {
  const IntPolynomial1D f = slice_pencil(t);
  const int p = f.degree_bound();
  const BigInt& lead = f.coefficients.back();
  if (lead == 0) return std::nullopt;
  const BigInt res = resultant(f, f.derivative());
  if (res % lead != 0) throw std::logic_error("resultant not divisible by leading coefficient");
  BigInt disc = res / lead;
  if ((p * (p - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

CovarianceReport covariance_check(const InvariantPolynomial& poly, const NumericArray& t,
                                  const IntMatrix& a, const IntMatrix& b, const IntMatrix& c) {
  const Format& f = poly.format;
  const int d = poly.degree;
  if (d % f.p || d % f.q || d % f.r)
    throw std::invalid_argument("degree " + std::to_string(d) +
                                " is not a multiple of every dimension");
  CovarianceReport report;
  report.factor =
      power(determinant(a), d / f.p) * power(determinant(b), d / f.q) * power(determinant(c), d / f.r);
  report.lhs = evaluate(poly, multilinear_act(a, b, c, t));
  report.rhs = report.factor * evaluate(poly, t);
  report.pass = report.lhs == report.rhs;
  return report;
}

}  // namespace tensorinv
