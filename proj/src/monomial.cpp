#include "tensorinv/monomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tensorinv {

Format::Format(int p_, int q_, int r_) : p(p_), q(q_), r(r_) {
  if (p < 1 || q < 1 || r < 1)
    throw std::invalid_argument("format dimensions must be positive");
}

std::string Format::to_string() const {
  return std::to_string(p) + "x" + std::to_string(q) + "x" + std::to_string(r);
}

ExponentArray::ExponentArray(Format format) : format_(format), entries_(format.size(), 0) {}

ExponentArray::ExponentArray(Format format, std::span<const Exponent> flat)
    : format_(format), entries_(flat.begin(), flat.end()) {
  if (entries_.size() != format_.size())
    throw std::invalid_argument("flattened array has length " + std::to_string(flat.size()) +
                                ", expected " + std::to_string(format_.size()));
}

ExponentArray ExponentArray::from_ints(Format format, std::span<const int> flat) {
  if (flat.size() != format.size())
    throw std::invalid_argument("flattened array has length " + std::to_string(flat.size()) +
                                ", expected " + std::to_string(format.size()));
  ExponentArray e(format);
  for (std::size_t n = 0; n < flat.size(); ++n) {
    if (flat[n] < 0 || flat[n] > 255)
      throw std::invalid_argument("exponent out of range: " + std::to_string(flat[n]));
    e.entries_[n] = Exponent(flat[n]);
  }
  return e;
}

int ExponentArray::degree() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0);
}

std::strong_ordering compare_flat(std::span<const Exponent> a, std::span<const Exponent> b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::strong_ordering compare(const ExponentArray& a, const ExponentArray& b) {
  if (!(a.format() == b.format()))
    throw std::invalid_argument("cannot compare arrays of formats " + a.format().to_string() +
                                " and " + b.format().to_string());
  return compare_flat(a.flat(), b.flat());
}

Weight Weight::zero(const Format& format) {
  Weight w;
  for (int m = 0; m < 3; ++m) w.modes[m].assign(format.dim(m) - 1, 0);
  return w;
}

Weight Weight::from_flat(const Format& format, std::span<const int> flat) {
  const std::size_t expected = std::size_t(format.p + format.q + format.r - 3);
  if (flat.size() != expected)
    throw std::invalid_argument("weight for format " + format.to_string() + " needs " +
                                std::to_string(expected) + " entries, got " +
                                std::to_string(flat.size()));
  Weight w;
  auto it = flat.begin();
  for (int m = 0; m < 3; ++m) {
    w.modes[m].assign(it, it + (format.dim(m) - 1));
    it += format.dim(m) - 1;
  }
  return w;
}

std::vector<int> Weight::flat() const {
  std::vector<int> out;
  for (const auto& m : modes) out.insert(out.end(), m.begin(), m.end());
  return out;
}

bool Weight::is_zero() const {
  for (const auto& m : modes)
    if (std::any_of(m.begin(), m.end(), [](int x) { return x != 0; })) return false;
  return true;
}

std::string Weight::to_string() const {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (int x : flat()) {
    if (!first) os << ',';
    os << x;
    first = false;
  }
  os << ']';
  return os.str();
}

SliceSums slice_sums(const ExponentArray& e) {
  const Format& f = e.format();
  SliceSums t;
  for (int m = 0; m < 3; ++m) t.modes[m].assign(f.dim(m), 0);
  for (int i = 0; i < f.p; ++i)
    for (int j = 0; j < f.q; ++j)
      for (int k = 0; k < f.r; ++k) {
        const int v = e(i, j, k);
        t.modes[0][i] += v;
        t.modes[1][j] += v;
        t.modes[2][k] += v;
      }
  return t;
}

Weight weight_of(const ExponentArray& e) {
  const SliceSums t = slice_sums(e);
  Weight w;
  for (int m = 0; m < 3; ++m)
    for (std::size_t i = 0; i + 1 < t.modes[m].size(); ++i)
      w.modes[m].push_back(t.modes[m][i] - t.modes[m][i + 1]);
  return w;
}

std::optional<SliceSums> slice_sums_from_weight(const Format& format, int degree,
                                                const Weight& weight) {
  if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
  SliceSums t;
  for (int m = 0; m < 3; ++m) {
    const int n = format.dim(m);
    const auto& w = weight.modes[m];
    if (int(w.size()) != n - 1)
      throw std::invalid_argument("weight does not match format " + format.to_string());
    // T(i) = T(n) + sum_{l >= i} w_l, so sum_i T(i) = n T(n) + sum_l l * w_l.
    long long moment = 0;
    for (int l = 0; l < n - 1; ++l) moment += (long long)(l + 1) * w[l];
    const long long rest = degree - moment;
    if (rest % n != 0) return std::nullopt;
    std::vector<int> sums(n);
    long long value = rest / n;
    for (int i = n - 1; i >= 0; --i) {
      if (i < n - 1) value += w[i];
      if (value < 0) return std::nullopt;
      sums[i] = int(value);
    }
    t.modes[m] = std::move(sums);
  }
  return t;
}

std::optional<std::size_t> MonomialBasis::find(std::span<const Exponent> flat) const {
  if (flat.size() != format_.size()) return std::nullopt;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const auto c = compare_flat((*this)[mid], flat);
    if (c == 0) return mid;
    if (c < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return std::nullopt;
}

void MonomialBasis::push_back(std::span<const Exponent> flat) {
  if (flat.size() != format_.size())
    throw std::invalid_argument("basis element has the wrong length");
  data_.insert(data_.end(), flat.begin(), flat.end());
}

namespace {

// Backtracking over entries in flattening order. Values are tried in
// increasing order, so arrays are produced in ascending lex order.
class SliceBoundedWalk {
 public:
  SliceBoundedWalk(const Format& format, const SliceSums& sums)
      : format_(format), current_(format.size(), 0) {
    for (int m = 0; m < 3; ++m) {
      remaining_[m] = sums.modes[m];
      // cells left in each slice, including the current one
      cells_[m].assign(format.dim(m), int(format.size()) / format.dim(m));
    }
  }

  template <class Visit>
  void run(Visit&& visit) {
    step(0, visit);
  }

 private:
  template <class Visit>
  void step(std::size_t pos, Visit& visit) {
    if (pos == current_.size()) {
      visit(std::span<const Exponent>(current_));
      return;
    }
    const auto [i, j, k] = format_.subscripts(pos);
    const int idx[3] = {i, j, k};
    int hi = std::min({remaining_[0][i], remaining_[1][j], remaining_[2][k]});
    int lo = 0;
    for (int m = 0; m < 3; ++m)
      if (cells_[m][idx[m]] == 1) lo = std::max(lo, remaining_[m][idx[m]]);
    if (lo > hi) return;
    for (int m = 0; m < 3; ++m) --cells_[m][idx[m]];
    for (int v = lo; v <= hi; ++v) {
      current_[pos] = Exponent(v);
      for (int m = 0; m < 3; ++m) remaining_[m][idx[m]] -= v;
      step(pos + 1, visit);
      for (int m = 0; m < 3; ++m) remaining_[m][idx[m]] += v;
    }
    current_[pos] = 0;
    for (int m = 0; m < 3; ++m) ++cells_[m][idx[m]];
  }

  Format format_;
  std::vector<Exponent> current_;
  std::array<std::vector<int>, 3> remaining_;
  std::array<std::vector<int>, 3> cells_;
};

}  // namespace

MonomialBasis enumerate_weight_space(const Format& format, int degree, const Weight& weight) {
  MonomialBasis basis(format);
  const auto sums = slice_sums_from_weight(format, degree, weight);
  if (!sums) return basis;
  if (degree > 255) throw std::invalid_argument("degree above 255 is not supported");
  SliceBoundedWalk walk(format, *sums);
  walk.run([&](std::span<const Exponent> flat) { basis.push_back(flat); });
  return basis;
}

std::size_t count_weight_space(const Format& format, int degree, const Weight& weight) {
  const auto sums = slice_sums_from_weight(format, degree, weight);
  if (!sums) return 0;
  if (degree > 255) throw std::invalid_argument("degree above 255 is not supported");
  std::size_t count = 0;
  SliceBoundedWalk walk(format, *sums);
  walk.run([&](std::span<const Exponent>) { ++count; });
  return count;
}

std::optional<std::size_t> index_of(const ExponentArray& e, const MonomialBasis& basis) {
  if (!(e.format() == basis.format())) return std::nullopt;
  return basis.find(e.flat());
}

DegreeInfo invariant_degree_info(const Format& format) {
  DegreeInfo info;
  info.lcm_step = std::lcm(std::lcm(format.p, format.q), format.r);
  std::array<int, 3> d{format.p, format.q, format.r};
  std::sort(d.begin(), d.end(), std::greater<>());
  const int p = d[0], q = d[1], r = d[2];
  if (p == q + r - 2) {
    // binomial(q + r - 2, q - 1)
    long long binom = 1;
    for (int t = 1; t <= q - 1; ++t) binom = binom * (r - 1 + t) / t;
    info.hyperdeterminant_degree = int(2 * binom * (q - 1) * (r - 1));
  }
  return info;
}

std::string to_matrix_form(const ExponentArray& e) {
  const Format& f = e.format();
  std::ostringstream os;
  for (int i = 0; i < f.p; ++i) {
    if (i) os << '\n';
    for (int k = 0; k < f.r; ++k) {
      if (k) os << " |";
      for (int j = 0; j < f.q; ++j) os << (k == 0 && j == 0 ? "" : " ") << int(e(i, j, k));
    }
  }
  return os.str();
}

std::string to_flat_string(std::span<const Exponent> flat) {
  std::string out;
  for (std::size_t n = 0; n < flat.size(); ++n) {
    if (n) out += ',';
    out += std::to_string(int(flat[n]));
  }
  return out;
}

}  // namespace tensorinv
