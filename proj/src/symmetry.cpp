#include "tensorinv/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tensorinv {

namespace {

std::vector<int> iota_perm(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<std::vector<int>> out;
  auto v = iota_perm(n);
  do out.push_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::vector<int> after(const std::vector<int>& outer, const std::vector<int>& inner) {
  std::vector<int> out(inner.size());
  for (std::size_t n = 0; n < inner.size(); ++n) out[n] = outer[inner[n]];
  return out;
}

void check_element(const GroupElement& g, const Format& f) {
  if (int(g.alpha.size()) != f.p || int(g.beta.size()) != f.q || int(g.gamma.size()) != f.r)
    throw std::invalid_argument("group element does not match format " + f.to_string());
  if (g.swap12 && f.p != f.q)
    throw std::invalid_argument("mode transposition requires p = q");
}

}  // namespace

GroupElement GroupElement::identity(const Format& format) {
  return {iota_perm(format.p), iota_perm(format.q), iota_perm(format.r), false};
}

std::vector<std::size_t> GroupElement::position_map(const Format& f) const {
  check_element(*this, f);
  std::vector<std::size_t> map(f.size());
  for (int i = 0; i < f.p; ++i)
    for (int j = 0; j < f.q; ++j)
      for (int k = 0; k < f.r; ++k) {
        const int a = alpha[i], b = beta[j], c = gamma[k];
        map[f.offset(i, j, k)] = swap12 ? f.offset(b, a, c) : f.offset(a, b, c);
      }
  return map;
}

std::vector<GroupElement> group_elements(const Format& format) {
  const auto sp = all_permutations(format.p);
  const auto sq = all_permutations(format.q);
  const auto sr = all_permutations(format.r);
  std::vector<GroupElement> out;
  const int swaps = format.p == format.q ? 2 : 1;
  out.reserve(sp.size() * sq.size() * sr.size() * swaps);
  for (const auto& a : sp)
    for (const auto& b : sq)
      for (const auto& c : sr)
        for (int d = 0; d < swaps; ++d) out.push_back({a, b, c, d == 1});
  return out;
}

ExponentArray act(const GroupElement& g, const ExponentArray& e) {
  const auto map = g.position_map(e.format());
  ExponentArray out(e.format());
  auto src = e.flat();
  auto dst = out.flat();
  for (std::size_t n = 0; n < src.size(); ++n) dst[map[n]] = src[n];
  return out;
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  // As position maps: no swap is (i,j,k) -> (a i, b j, c k), swap is
  // (i,j,k) -> (b j, a i, c k). Composing two of them gives the cases below.
  GroupElement out;
  out.gamma = after(g.gamma, h.gamma);
  if (!h.swap12) {
    out.alpha = after(g.alpha, h.alpha);
    out.beta = after(g.beta, h.beta);
  } else {
    out.alpha = after(g.beta, h.alpha);
    out.beta = after(g.alpha, h.beta);
  }
  out.swap12 = g.swap12 != h.swap12;
  return out;
}

OrbitPartition orbit_partition(const MonomialBasis& basis) {
  const Format& f = basis.format();
  const auto elements = group_elements(f);
  std::vector<std::vector<std::size_t>> maps;
  maps.reserve(elements.size());
  for (const auto& g : elements) maps.push_back(g.position_map(f));

  constexpr std::size_t unassigned = std::size_t(-1);
  OrbitPartition part;
  part.orbit_of.assign(basis.size(), unassigned);
  std::vector<Exponent> image(f.size());

  for (std::size_t seed = 0; seed < basis.size(); ++seed) {
    if (part.orbit_of[seed] != unassigned) continue;
    const std::size_t id = part.orbits.size();
    const auto src = basis[seed];
    std::vector<std::size_t> members;
    for (const auto& map : maps) {
      for (std::size_t n = 0; n < src.size(); ++n) image[map[n]] = src[n];
      const auto found = basis.find(image);
      if (!found)
        throw std::runtime_error("basis is not closed under the symmetry group: image " +
                                 to_flat_string(image) + " is missing");
      if (part.orbit_of[*found] == unassigned) {
        part.orbit_of[*found] = id;
        members.push_back(*found);
      } else if (part.orbit_of[*found] != id) {
        throw std::runtime_error("orbits overlap; basis is not closed under the group");
      }
    }
    std::sort(members.begin(), members.end());
    part.orbits.push_back({basis.array(members.front()), std::move(members)});
  }
  return part;
}

}  // namespace tensorinv
