#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tensorinv/monomial.hpp"

namespace tensorinv::testing {

// Parses the matrix form: rows separated by ';', and within a row the r
// blocks of q entries separated by '|'.
inline ExponentArray from_matrix(const Format& f, std::string_view text) {
  std::vector<int> rows;
  std::string s(text);
  for (char& c : s)
    if (c == ';' || c == '|') c = ' ';
  std::istringstream is(s);
  for (int x; is >> x;) rows.push_back(x);
  if (rows.size() != f.size()) throw std::invalid_argument("bad matrix form");
  ExponentArray e(f);
  std::size_t n = 0;
  for (int i = 0; i < f.p; ++i)
    for (int k = 0; k < f.r; ++k)
      for (int j = 0; j < f.q; ++j) e(i, j, k) = Exponent(rows[n++]);
  return e;
}

inline std::string data_path(std::string_view name) {
  return std::string(TENSORINV_DATA_DIR) + "/" + std::string(name);
}

}  // namespace tensorinv::testing
