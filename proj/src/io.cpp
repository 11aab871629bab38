#include "tensorinv/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tensorinv {

using nlohmann::json;

namespace {

std::string json_flat(std::span<const Exponent> flat) {
  std::string out = "[";
  for (std::size_t n = 0; n < flat.size(); ++n) {
    if (n) out += ',';
    out += std::to_string(int(flat[n]));
  }
  return out + "]";
}

std::string quoted(std::string_view s) { return json(std::string(s)).dump(); }

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

Format parse_format(const json& j) {
  const auto dims = field<std::vector<int>>(j, "format");
  if (dims.size() != 3) throw ParseError("format needs three dimensions");
  try {
    return Format(dims[0], dims[1], dims[2]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

ExponentArray parse_exponents(const Format& f, const json& j) {
  std::vector<int> flat;
  try {
    flat = j.get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad exponent list: ") + e.what());
  }
  try {
    return ExponentArray::from_ints(f, flat);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::int64_t parse_int64(const json& j) {
  try {
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used != s.size()) throw ParseError("bad integer '" + s + "'");
      return v;
    }
    return j.get<std::int64_t>();
  } catch (const std::logic_error&) {
    throw ParseError("bad integer " + j.dump());
  } catch (const json::exception&) {
    throw ParseError("bad integer " + j.dump());
  }
}

BigInt parse_bigint(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (!j.is_string()) throw ParseError("bad integer " + j.dump());
  const std::string s = j.get<std::string>();
  const std::size_t start = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
    throw ParseError("bad integer '" + s + "'");
  return BigInt(s);
}

}  // namespace

std::string render_polynomial(const InvariantPolynomial& poly) {
  std::ostringstream os;
  const Format& f = poly.format;
  os << "{\n";
  os << "  \"kind\": \"polynomial\",\n";
  os << "  \"generator\": " << quoted(kGenerator) << ",\n";
  os << "  \"format\": [" << f.p << "," << f.q << "," << f.r << "],\n";
  os << "  \"degree\": " << poly.degree << ",\n";
  os << "  \"normalization\": " << quoted(kNormalization) << ",\n";
  os << "  \"term_count\": " << poly.terms.size() << ",\n";
  os << "  \"terms\": [";
  for (std::size_t n = 0; n < poly.terms.size(); ++n) {
    os << (n ? ",\n    " : "\n    ");
    os << "[\"" << poly.terms[n].coefficient << "\", " << json_flat(poly.terms[n].array.flat()) << "]";
  }
  os << (poly.terms.empty() ? "]" : "\n  ]");
  if (poly.orbit_view) {
    os << ",\n  \"orbits\": [";
    const auto& view = *poly.orbit_view;
    for (std::size_t n = 0; n < view.size(); ++n) {
      os << (n ? ",\n    " : "\n    ");
      os << "{\"coefficient\": \"" << view[n].coefficient << "\", \"size\": " << view[n].size
         << ", \"representative\": " << json_flat(view[n].representative.flat()) << "}";
    }
    os << (view.empty() ? "]" : "\n  ]");
  }
  os << "\n}\n";
  return os.str();
}

InvariantPolynomial parse_polynomial(std::string_view text) {
  const json j = parse_json(text);
  if (field<std::string>(j, "kind") != "polynomial") throw ParseError("not a polynomial file");
  InvariantPolynomial poly;
  poly.format = parse_format(j);
  poly.degree = field<int>(j, "degree");
  if (poly.degree < 0) throw ParseError("negative degree");
  const auto& terms = j.at("terms");
  if (!terms.is_array()) throw ParseError("'terms' must be an array");
  for (const auto& t : terms) {
    if (!t.is_array() || t.size() != 2) throw ParseError("term must be [coefficient, exponents]");
    Term term{parse_int64(t[0]), parse_exponents(poly.format, t[1])};
    if (term.coefficient == 0) throw ParseError("zero coefficient");
    if (term.array.degree() != poly.degree) throw ParseError("term of the wrong degree");
    if (!poly.terms.empty() && compare(poly.terms.back().array, term.array) >= 0)
      throw ParseError("terms are not strictly increasing");
    poly.terms.push_back(std::move(term));
  }
  if (j.contains("term_count") && field<std::size_t>(j, "term_count") != poly.terms.size())
    throw ParseError("term_count does not match the number of terms");
  if (j.contains("orbits")) {
    const auto& orbits = j.at("orbits");
    if (!orbits.is_array()) throw ParseError("'orbits' must be an array");
    std::vector<OrbitTerm> view;
    for (const auto& o : orbits) {
      OrbitTerm ot{parse_exponents(poly.format, o.at("representative")),
                   field<std::size_t>(o, "size"), parse_int64(o.at("coefficient"))};
      if (ot.size == 0) throw ParseError("empty orbit");
      view.push_back(std::move(ot));
    }
    poly.orbit_view = std::move(view);
  }
  return poly;
}

std::string render_basis(const MonomialBasis& basis, int degree, const Weight& weight) {
  std::ostringstream os;
  const Format& f = basis.format();
  os << "# weight space basis, flattened in lex subscript order\n";
  os << "format " << f.p << " " << f.q << " " << f.r << "\n";
  os << "degree " << degree << "\n";
  os << "weight " << weight.to_string() << "\n";
  os << "count " << basis.size() << "\n";
  for (std::size_t n = 0; n < basis.size(); ++n) os << to_flat_string(basis[n]) << "\n";
  return os.str();
}

BasisFile parse_basis(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  auto next = [&]() -> std::string {
    while (std::getline(is, line))
      if (!line.empty() && line[0] != '#') return line;
    throw ParseError("unexpected end of basis file");
  };
  auto header = [&](const std::string& key) {
    std::istringstream ls(next());
    std::string k;
    ls >> k;
    if (k != key) throw ParseError("expected '" + key + "' line");
    std::string rest;
    std::getline(ls, rest);
    return rest;
  };
  BasisFile out;
  std::istringstream fs(header("format"));
  int p = 0, q = 0, r = 0;
  if (!(fs >> p >> q >> r) || p < 1 || q < 1 || r < 1) throw ParseError("bad format line");
  const Format f(p, q, r);
  if (!(std::istringstream(header("degree")) >> out.degree)) throw ParseError("bad degree line");
  std::string w = header("weight");
  std::vector<int> wflat;
  for (char& c : w)
    if (c == '[' || c == ']' || c == ',') c = ' ';
  std::istringstream ws(w);
  for (int x; ws >> x;) wflat.push_back(x);
  try {
    out.weight = Weight::from_flat(f, wflat);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  std::size_t count = 0;
  if (!(std::istringstream(header("count")) >> count)) throw ParseError("bad count line");
  out.basis = MonomialBasis(f);
  for (std::size_t n = 0; n < count; ++n) {
    std::string row = next();
    for (char& c : row)
      if (c == ',') c = ' ';
    std::istringstream rs(row);
    std::vector<int> flat;
    for (int x; rs >> x;) flat.push_back(x);
    ExponentArray e = [&] {
      try {
        return ExponentArray::from_ints(f, flat);
      } catch (const std::invalid_argument& err) {
        throw ParseError(err.what());
      }
    }();
    if (n && compare_flat(out.basis[n - 1], e.flat()) >= 0)
      throw ParseError("basis is not strictly increasing");
    out.basis.push_back(e.flat());
  }
  return out;
}

std::string render_array(const NumericArray& t) {
  const Format& f = t.format;
  std::ostringstream os;
  os << "{\"format\": [" << f.p << "," << f.q << "," << f.r << "], \"slices\": [";
  for (int k = 0; k < f.r; ++k) {
    os << (k ? ", [" : "[");
    for (int i = 0; i < f.p; ++i) {
      os << (i ? ", [" : "[");
      for (int j = 0; j < f.q; ++j) os << (j ? ", \"" : "\"") << t(i, j, k) << "\"";
      os << "]";
    }
    os << "]";
  }
  os << "]}\n";
  return os.str();
}

NumericArray parse_array(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("empty array file");
  if (text[first] == '{') {
    const json j = parse_json(text);
    const Format f = parse_format(j);
    const auto& slices = j.at("slices");
    if (!slices.is_array() || int(slices.size()) != f.r) throw ParseError("need r slices");
    NumericArray t(f);
    for (int k = 0; k < f.r; ++k) {
      const auto& s = slices[k];
      if (!s.is_array() || int(s.size()) != f.p) throw ParseError("slice needs p rows");
      for (int i = 0; i < f.p; ++i) {
        if (!s[i].is_array() || int(s[i].size()) != f.q) throw ParseError("row needs q entries");
        for (int j = 0; j < f.q; ++j) t(i, j, k) = parse_bigint(s[i][j]);
      }
    }
    return t;
  }
  // matrix form
  std::vector<std::vector<std::vector<std::string>>> rows;  // row -> block -> entries
  std::istringstream is{std::string(text)};
  for (std::string line; std::getline(is, line);) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::vector<std::vector<std::string>> blocks(1);
    std::string token;
    std::istringstream ls(line);
    while (ls >> token) {
      std::size_t start = 0;
      for (std::size_t n = 0; n <= token.size(); ++n) {
        if (n == token.size() || token[n] == '|') {
          if (n > start) blocks.back().push_back(token.substr(start, n - start));
          if (n < token.size()) blocks.emplace_back();
          start = n + 1;
        }
      }
    }
    rows.push_back(std::move(blocks));
  }
  if (rows.empty()) throw ParseError("empty array file");
  const int p = int(rows.size());
  const int r = int(rows[0].size());
  const int q = int(rows[0][0].size());
  if (q == 0) throw ParseError("empty row");
  for (const auto& row : rows) {
    if (int(row.size()) != r) throw ParseError("rows have different block counts");
    for (const auto& b : row)
      if (int(b.size()) != q) throw ParseError("blocks have different widths");
  }
  NumericArray t(Format(p, q, r));
  for (int i = 0; i < p; ++i)
    for (int k = 0; k < r; ++k)
      for (int j = 0; j < q; ++j) t(i, j, k) = parse_bigint(json(rows[i][k][j]));
  return t;
}

std::string render_orbit_table(const OrbitPartition& orbits) {
  std::ostringstream os;
  os << "# orbit  size  representative\n";
  for (std::size_t o = 0; o < orbits.orbits.size(); ++o) {
    const auto& orbit = orbits.orbits[o];
    std::istringstream rows(to_matrix_form(orbit.representative));
    std::string row;
    bool first = true;
    while (std::getline(rows, row)) {
      std::ostringstream lead;
      if (first) {
        lead.width(7);
        lead << (o + 1);
        lead << "  ";
        lead.width(4);
        lead << orbit.size();
      } else {
        lead << std::string(13, ' ');
      }
      os << lead.str() << "  [ " << row << " ]\n";
      first = false;
    }
  }
  return os.str();
}

std::string render_orbit_json(const OrbitPartition& orbits) {
  std::ostringstream os;
  os << "[";
  for (std::size_t o = 0; o < orbits.orbits.size(); ++o) {
    const auto& orbit = orbits.orbits[o];
    os << (o ? ",\n " : "\n ") << "{\"id\": " << o + 1 << ", \"size\": " << orbit.size()
       << ", \"representative\": " << json_flat(orbit.representative.flat()) << "}";
  }
  os << (orbits.orbits.empty() ? "]\n" : "\n]\n");
  return os.str();
}

std::string render_census_table(const Census& census) {
  std::ostringstream os;
  os << "coef\tmult\torbits\n";
  for (const auto& row : census.rows) {
    os << row.coefficient << "\t" << row.multiplicity << "\t";
    for (std::size_t n = 0; n < row.orbit_ids.size(); ++n) os << (n ? "," : "") << row.orbit_ids[n];
    os << "\n";
  }
  return os.str();
}

std::string render_report_text(const PipelineReport& report) {
  std::ostringstream os;
  os << "format " << report.format.to_string() << ", degree " << report.degree << ", prime "
     << report.prime << "\n";
  os << "weight-zero monomials: " << report.basis_size << "\n";
  os << "operator  codomain  cumulative rank\n";
  for (const auto& s : report.operators)
    os << s.op.label() << "\t" << s.codomain_size << "\t" << s.cumulative_rank << "\n";
  if (report.second_prime_ranks) {
    os << "ranks mod " << *report.second_prime << ":";
    for (auto r : *report.second_prime_ranks) os << " " << r;
    os << "\n";
  }
  os << "modular nullity (upper bound): " << report.nullity << "\n";
  if (report.orbit_count) os << "orbits: " << report.orbit_count << "\n";
  for (std::size_t n = 0; n < report.candidates.size(); ++n) {
    const auto& c = report.candidates[n];
    os << "candidate " << n + 1 << ": " << c.terms << " terms, "
       << (c.certified ? "certified" : "rejected");
    if (!c.failed_operators.empty()) {
      os << " (residual under";
      for (const auto& l : c.failed_operators) os << " " << l;
      os << ")";
    }
    if (!c.orbit_constant)
      os << (c.orbit_check_applies ? " (not constant on orbits)"
                                   : " (orbit coefficients differ by sign; not required)");
    os << "\n";
  }
  os << "certified invariants (lower bound): " << report.certified << "\n";
  os << "dimension " << (report.exact ? "exact" : "not established") << "\n";
  for (std::size_t n = 0; n < report.census.size(); ++n) {
    os << "census of invariant " << n + 1 << " (" << report.census[n].rows.size()
       << " distinct coefficients)\n";
    os << render_census_table(report.census[n]);
  }
  return os.str();
}

std::string render_report_json(const PipelineReport& report) {
  json j;
  j["format"] = {report.format.p, report.format.q, report.format.r};
  j["degree"] = report.degree;
  j["prime"] = report.prime;
  j["basis_size"] = report.basis_size;
  j["operators"] = json::array();
  for (const auto& s : report.operators)
    j["operators"].push_back({{"operator", s.op.label()},
                              {"target_weight", target_weight(s.op, report.format).flat()},
                              {"codomain_size", s.codomain_size},
                              {"cumulative_rank", s.cumulative_rank}});
  if (report.second_prime_ranks) {
    j["second_prime"] = *report.second_prime;
    j["second_prime_ranks"] = *report.second_prime_ranks;
  }
  j["nullity_upper_bound"] = report.nullity;
  j["orbit_count"] = report.orbit_count;
  j["candidates"] = json::array();
  for (const auto& c : report.candidates)
    j["candidates"].push_back({{"terms", c.terms},
                               {"failed_operators", c.failed_operators},
                               {"orbit_constant", c.orbit_constant},
                               {"orbit_check_applies", c.orbit_check_applies},
                               {"certified", c.certified}});
  j["certified_lower_bound"] = report.certified;
  j["exact"] = report.exact;
  j["census"] = json::array();
  for (const auto& census : report.census) {
    json rows = json::array();
    for (const auto& r : census.rows)
      rows.push_back({{"coefficient", std::to_string(r.coefficient)},
                      {"multiplicity", r.multiplicity},
                      {"orbits", r.orbit_ids}});
    j["census"].push_back(rows);
  }
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("error while writing " + path);
}

}  // namespace tensorinv
