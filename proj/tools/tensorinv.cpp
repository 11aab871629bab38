// tensorinv: polynomial invariants of p x q x r arrays.
//
// Exit codes: 0 success, 1 usage or internal error, 2 no invariants found,
// 3 verification failed, 4 I/O error, 5 malformed input file.

#include <chrono>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tensorinv/evaluation.hpp"
#include "tensorinv/io.hpp"
#include "tensorinv/pipeline.hpp"

namespace {

using namespace tensorinv;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kNoInvariants = 2,
  kVerificationFailed = 3,
  kIoError = 4,
  kMalformed = 5,
};

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<int> format{3, 3, 2};
  int degree = 0;
  std::string weight = "0";
  std::uint32_t prime = 1009;
  std::uint32_t second_prime = 2003;
  bool cross_check = false;
  std::uint64_t seed = 1;
  int samples = 20;
  std::string out;
  std::string json_out;
  std::string report;
  std::string report_json;
  std::string poly_path;
  std::string array_path;
  bool quiet = false;
};

Format to_format(const std::vector<int>& dims) { return Format(dims.at(0), dims.at(1), dims.at(2)); }

Weight to_weight(const Format& f, const std::string& text) {
  if (text == "0") return Weight::zero(f);
  std::string s = text;
  for (char& c : s)
    if (c == '[' || c == ']' || c == ',') c = ' ';
  std::istringstream is(s);
  std::vector<int> flat;
  for (int x; is >> x;) flat.push_back(x);
  return Weight::from_flat(f, flat);
}

void save(const std::string& path, std::string_view contents) {
  if (path.empty()) return;
  try {
    write_file(path, contents);
  } catch (const std::runtime_error& e) {
    throw IoFailure(e.what());
  }
}

std::string load(const std::string& path) {
  try {
    return read_file(path);
  } catch (const std::runtime_error& e) {
    throw IoFailure(e.what());
  }
}

int cmd_enumerate(const RunConfig& cfg) {
  const Format f = to_format(cfg.format);
  const Weight w = to_weight(f, cfg.weight);
  const MonomialBasis basis = enumerate_weight_space(f, cfg.degree, w);
  save(cfg.out, render_basis(basis, cfg.degree, w));
  std::cout << basis.size() << "\n";
  return kOk;
}

int cmd_count(const RunConfig& cfg) {
  const Format f = to_format(cfg.format);
  std::cout << count_weight_space(f, cfg.degree, to_weight(f, cfg.weight)) << "\n";
  return kOk;
}

int cmd_orbits(const RunConfig& cfg) {
  const Format f = to_format(cfg.format);
  const MonomialBasis basis = enumerate_weight_space(f, cfg.degree, Weight::zero(f));
  const OrbitPartition orbits = orbit_partition(basis);
  const std::string table = render_orbit_table(orbits);
  save(cfg.out, table);
  save(cfg.json_out, render_orbit_json(orbits));
  if (!cfg.quiet) std::cout << table;
  std::cout << orbits.orbits.size() << " orbits, " << basis.size() << " monomials\n";
  return kOk;
}

int cmd_invariant(const RunConfig& cfg) {
  const Format f = to_format(cfg.format);
  const auto start = std::chrono::steady_clock::now();
  const Certification cert =
      certify(f, cfg.degree, cfg.prime,
              cfg.cross_check ? std::optional<std::uint32_t>(cfg.second_prime) : std::nullopt);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string text = render_report_text(cert.report);
  save(cfg.report, text);
  save(cfg.report_json, render_report_json(cert.report));
  if (!cfg.out.empty() && !cert.invariants.empty()) {
    if (cert.invariants.size() == 1) {
      save(cfg.out, render_polynomial(cert.invariants.front()));
    } else {
      for (std::size_t n = 0; n < cert.invariants.size(); ++n)
        save(cfg.out + "." + std::to_string(n + 1), render_polynomial(cert.invariants[n]));
    }
  }
  if (!cfg.quiet) std::cout << text;
  std::cerr << "elapsed " << seconds << " s\n";
  if (cert.report.certified < cert.report.candidates.size()) return kVerificationFailed;
  if (cert.invariants.empty()) return kNoInvariants;
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  InvariantPolynomial poly = parse_polynomial(load(cfg.poly_path));
  bool ok = true;
  for (const auto& op : simple_raising_ops(poly.format)) {
    const auto residual = verify_annihilation_integer(poly, op);
    std::cout << op.label() << ": " << (residual.empty() ? "pass" : "FAIL");
    if (!residual.empty()) {
      ok = false;
      std::cout << " (" << residual.size() << " residual terms)";
      for (std::size_t n = 0; n < std::min<std::size_t>(residual.size(), 5); ++n)
        std::cout << "\n    " << residual[n].coefficient << " * ["
                  << to_flat_string(residual[n].array.flat()) << "]";
    }
    std::cout << "\n";
  }
  const MonomialBasis basis = enumerate_weight_space(poly.format, poly.degree, Weight::zero(poly.format));
  const OrbitPartition orbits = orbit_partition(basis);
  const Census census = coefficient_census(poly, basis, orbits);
  const bool required = orbit_constancy_expected(poly.format, poly.degree);
  std::cout << "orbit constancy: "
            << (census.constant_on_orbits ? "pass" : required ? "FAIL" : "differs by sign (not required)")
            << "\n";
  ok = ok && (census.constant_on_orbits || !required);
  std::cout << poly.terms.size() << " terms, " << poly.distinct_coefficients().size()
            << " distinct coefficients, " << census.rows.size() << " census rows\n";
  return ok ? kOk : kVerificationFailed;
}

InvariantPolynomial oracle_polynomial(const RunConfig& cfg, const Format& f) {
  if (!cfg.poly_path.empty()) return parse_polynomial(load(cfg.poly_path));
  const auto info = invariant_degree_info(f);
  if (!info.hyperdeterminant_degree)
    throw std::invalid_argument("no hyperdeterminant degree for format " + f.to_string());
  std::cerr << "computing the degree " << *info.hyperdeterminant_degree << " invariant...\n";
  Certification cert = certify(f, *info.hyperdeterminant_degree, cfg.prime);
  if (cert.invariants.size() != 1)
    throw std::runtime_error("expected exactly one invariant in degree " +
                             std::to_string(*info.hyperdeterminant_degree));
  return std::move(cert.invariants.front());
}

int cmd_oracle(const RunConfig& cfg) {
  const Format f = to_format(cfg.format);
  if (f.p != f.q || f.r != 2)
    throw std::invalid_argument("the pencil oracle needs a p x p x 2 format");
  if (cfg.samples <= 0) {
    std::cout << "0 samples: pass\n";
    return kOk;
  }
  const InvariantPolynomial poly = oracle_polynomial(cfg, f);
  if (!(poly.format == f)) throw std::invalid_argument("polynomial format does not match --format");
  int matches = 0, sign = 0, degenerate = 0;
  bool sign_constant = true;
  std::uint64_t draw = 0;
  const int budget = 50 * cfg.samples;
  std::cout << "sample  invariant  discriminant  sign\n";
  for (int s = 0; s < cfg.samples;) {
    if (int(draw) >= budget) {
      std::cerr << "retry budget exhausted after " << degenerate << " degenerate pencils\n";
      return kFailure;
    }
    const NumericArray t = random_array(f, cfg.seed * 1000003ULL + draw++);
    const auto disc = pencil_discriminant(t);
    if (!disc) {
      ++degenerate;
      continue;
    }
    const BigInt value = evaluate(poly, t);
    int ratio = 0;
    if (value == *disc && value == 0)
      ratio = sign == 0 ? 1 : sign;
    else if (value == *disc)
      ratio = 1;
    else if (value == -*disc)
      ratio = -1;
    if (ratio != 0) {
      if (sign == 0) sign = ratio;
      if (ratio != sign) sign_constant = false;
      ++matches;
    }
    std::cout << ++s << "\t" << value << "\t" << *disc << "\t"
              << (ratio == 0 ? "mismatch" : ratio > 0 ? "+" : "-") << "\n";
  }
  const bool pass = matches == cfg.samples && sign_constant;
  std::cout << matches << "/" << cfg.samples << " matches, global sign "
            << (sign >= 0 ? "+1" : "-1") << ", " << degenerate << " degenerate draws skipped: "
            << (pass ? "pass" : "FAIL") << "\n";
  return pass ? kOk : kVerificationFailed;
}

int cmd_evaluate(const RunConfig& cfg) {
  const InvariantPolynomial poly = parse_polynomial(load(cfg.poly_path));
  const NumericArray t = parse_array(load(cfg.array_path));
  std::cout << evaluate(poly, t) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial invariants of p x q x r arrays"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "array dimensions p q r")->expected(3);
  };
  auto add_degree = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--degree", cfg.degree, "polynomial degree")->check(CLI::Range(0, 255));
    if (required) opt->required();
  };

  auto* enumerate = app.add_subcommand("enumerate", "list the monomial basis of a weight space");
  add_format(enumerate);
  add_degree(enumerate, true);
  enumerate->add_option("--weight", cfg.weight, "\"0\" or a comma-separated weight");
  enumerate->add_option("--out", cfg.out, "write the basis to this file");

  auto* count = app.add_subcommand("count", "count a weight space without storing it");
  add_format(count);
  add_degree(count, true);
  count->add_option("--weight", cfg.weight, "\"0\" or a comma-separated weight");

  auto* orbits = app.add_subcommand("orbits", "orbits of the weight-zero basis");
  add_format(orbits);
  add_degree(orbits, true);
  orbits->add_option("--out", cfg.out, "write the orbit table to this file");
  orbits->add_option("--json", cfg.json_out, "write orbit records as JSON");
  orbits->add_flag("--quiet", cfg.quiet, "print only the summary line");

  auto* invariant = app.add_subcommand("invariant", "compute and certify invariants of one degree");
  add_format(invariant);
  add_degree(invariant, true);
  invariant->add_option("--prime", cfg.prime, "modulus for elimination");
  invariant->add_option("--second-prime", cfg.second_prime, "modulus for the rank cross-check");
  invariant->add_flag("--cross-check", cfg.cross_check, "recompute the rank ladder mod the second prime");
  invariant->add_option("--out", cfg.out, "write the certified polynomial here");
  invariant->add_option("--report", cfg.report, "write the text report here");
  invariant->add_option("--report-json", cfg.report_json, "write the JSON report here");
  invariant->add_flag("--quiet", cfg.quiet, "do not print the report");

  auto* verify = app.add_subcommand("verify", "re-verify a stored polynomial");
  verify->add_option("file", cfg.poly_path, "polynomial file")->required();

  auto* oracle = app.add_subcommand("oracle", "compare against the slice-pencil discriminant");
  add_format(oracle);
  oracle->add_option("--samples", cfg.samples, "number of random arrays")->check(CLI::NonNegativeNumber);
  oracle->add_option("--seed", cfg.seed, "random seed");
  oracle->add_option("--poly", cfg.poly_path, "use this polynomial instead of computing it");
  oracle->add_option("--prime", cfg.prime, "modulus when the polynomial is computed");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "evaluate a polynomial on an array");
  evaluate_cmd->add_option("--poly", cfg.poly_path, "polynomial file")->required();
  evaluate_cmd->add_option("--array", cfg.array_path, "array file (JSON or matrix form)")->required();

  CLI11_PARSE(app, argc, argv);

  if (cfg.prime == cfg.second_prime && cfg.cross_check) {
    std::cerr << "error: the two primes must differ\n";
    return kFailure;
  }
  try {
    if (*enumerate) return cmd_enumerate(cfg);
    if (*count) return cmd_count(cfg);
    if (*orbits) return cmd_orbits(cfg);
    if (*invariant) return cmd_invariant(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*oracle) return cmd_oracle(cfg);
    if (*evaluate_cmd) return cmd_evaluate(cfg);
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ParseError& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
