#include "geofreq/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "geofreq/critical_table.hpp"
#include "geofreq/error.hpp"
#include "geofreq/frequency_lab.hpp"
#include "geofreq/metric_models.hpp"
#include "geofreq/report.hpp"
#include "geofreq/suites.hpp"
#include "geofreq/symplectic_perturb.hpp"

namespace geofreq {

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  Report report;
  bool pass = true;
  /// CSV with a fixed column order, used instead of the generic writer.
  std::optional<std::string> fixed_csv;
};

std::string load_model_text(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  std::ifstream in(arg);
  if (!in) throw InvalidModel("cannot read model file '" + arg + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::int64_t as_int(long v) { return static_cast<std::int64_t>(v); }

Outcome frequency_command(const std::string& model_arg, const std::vector<int>& ellipse, int periods) {
  const MetricModel model = parse_model(load_model_text(model_arg));
  Outcome o;
  Record row;
  row["model"] = model_kind(model);
  if (const auto* e = std::get_if<EllipsoidModel>(&model)) {
    if (ellipse.size() != 2) throw PreconditionError("frequency: ellipsoid models need --ellipse i,j");
    const EllipseFrequency f = ellipse_mean_frequency(*e, ellipse[0], ellipse[1], periods);
    const BoundInterval b = ellipse_sandwich(*e, ellipse[0], ellipse[1]);
    row["i"] = static_cast<std::int64_t>(ellipse[0]);
    row["j"] = static_cast<std::int64_t>(ellipse[1]);
    row["length"] = f.length;
    row["alpha_bar"] = f.total.mean_frequency;
    row["lower"] = b.lower;
    row["upper"] = b.upper;
    row["inside"] = b.contains(f.total.mean_frequency);
    row["converged"] = f.total.converged;
    row["tolerance"] = f.total.tolerance;
    if (f.split_discrepancy) row["split_discrepancy"] = *f.split_discrepancy;
    o.pass = b.contains(f.total.mean_frequency);
  } else if (const auto* r = std::get_if<RoundSphereModel>(&model)) {
    if (!ellipse.empty()) throw PreconditionError("frequency: --ellipse applies to ellipsoid models only");
    const ReferenceData ref = reference_data(model);
    const CurvatureProfile p = CurvatureProfile::constant(r->n - 1, r->K, r->prime_length());
    const FrequencyEstimate est = mean_frequency(p, periods);
    row["alpha_bar"] = est.mean_frequency;
    row["reference"] = ref.mean_frequency;
    row["length"] = r->prime_length();
    row["converged"] = est.converged;
    row["tolerance"] = est.tolerance;
    o.pass = std::abs(est.mean_frequency - ref.mean_frequency) <= est.tolerance;
  } else {
    const ReferenceData ref = reference_data(model);
    const auto& k = std::get<KatokModel>(model);
    row["alpha_bar"] = ref.mean_frequency;
    const BoundInterval b = curvature_sandwich(k.n, 1.0, 1.0);
    row["lower"] = b.lower;
    row["upper"] = b.upper;
    if (ref.geodesic_count) row["geodesic_count"] = static_cast<std::int64_t>(*ref.geodesic_count);
    row["reversibility"] = k.reversibility();
    row["tolerance"] = 1e-12;
    for (std::size_t i = 0; i < ref.warnings.size(); ++i) row["warning" + std::to_string(i)] = ref.warnings[i];
    o.pass = b.contains(ref.mean_frequency, 1e-12);
  }
  row["pass"] = o.pass;
  o.report.rows.push_back(std::move(row));
  o.report.metadata["periods"] = static_cast<std::int64_t>(periods);
  return o;
}

Outcome ellipsoid_command(const std::vector<double>& axes, const std::vector<double>& prop86, int periods) {
  Outcome o;
  if (!prop86.empty()) {
    if (prop86.size() != 3) throw PreconditionError("ellipsoid: --prop86 takes mu,m,lambda");
    const Prop86Result p = prop86_separation(prop86[0], static_cast<int>(prop86[1]), prop86[2]);
    for (std::size_t i = 0; i < p.printed.size(); ++i) {
      Record row;
      row["i"] = static_cast<std::int64_t>(i + 1);
      row["printed_lower"] = p.printed[i].lower;
      row["printed_upper"] = p.printed[i].upper;
      row["section_lower"] = p.sections[i].lower;
      row["section_upper"] = p.sections[i].upper;
      o.report.rows.push_back(std::move(row));
    }
    o.report.metadata["threshold"] = p.threshold;
    o.report.metadata["below_threshold"] = p.below_threshold;
    o.report.metadata["printed_separated"] = p.printed_separated;
    o.report.metadata["sections_separated"] = p.sections_separated;
    o.pass = p.below_threshold && p.printed_separated && p.sections_separated;
    return o;
  }
  if (axes.size() != 3) throw InvalidModel("ellipsoid: --axes needs exactly three semi-axes");
  const EllipsoidReport rep = ellipsoid_report(EllipsoidModel(axes), periods);
  for (const auto& r : rep.rows) {
    Record row;
    row["name"] = r.name;
    row["i"] = static_cast<std::int64_t>(r.i);
    row["j"] = static_cast<std::int64_t>(r.j);
    row["length"] = r.length;
    row["alpha_bar"] = r.alpha_bar;
    row["lower"] = r.bound.lower;
    row["upper"] = r.bound.upper;
    row["inside"] = r.inside;
    row["tolerance"] = 1e-4;
    o.report.rows.push_back(std::move(row));
  }
  o.report.metadata["chain_holds"] = rep.chain_holds;
  o.report.metadata["gamma1_below_gamma3"] = rep.gamma1_below_gamma3;
  o.report.metadata["all_distinct"] = rep.all_distinct;
  o.report.metadata["periods"] = static_cast<std::int64_t>(periods);
  o.pass = rep.gamma1_below_gamma3 &&
           std::all_of(rep.rows.begin(), rep.rows.end(), [](const EllipsoidRow& r) { return r.inside; });
  return o;
}

Outcome resonance_command(int n, double L, long max_degree, const std::string& coeffs, bool table) {
  std::optional<CoefficientSpec> spec;
  if (!coeffs.empty()) spec = parse_coefficients(coeffs);
  const CriticalTable t = round_critical_table(n, L, max_degree, spec);
  Outcome o;
  if (table) {
    for (const auto& e : t.entries) {
      o.report.rows.push_back({{"class", e.label},
                               {"degree", as_int(e.degree)},
                               {"critical_level", t.level_value(e)},
                               {"dual_class", e.dual_label}});
    }
    o.fixed_csv = table_csv(t);
    return o;
  }
  const ResonanceReport r = resonance_report(t, n);
  Record row{{"alpha_bar", r.alpha_bar},     {"mu_plus", r.mu_plus}, {"mu_minus", r.mu_minus},
             {"max_deviation", r.max_deviation}, {"bound", r.bound},   {"verdict", r.verdict}};
  if (r.alpha_interval) {
    row["alpha_lower"] = r.alpha_interval->first;
    row["alpha_upper"] = r.alpha_interval->second;
  }
  o.report.rows.push_back(std::move(row));
  o.report.metadata["n"] = static_cast<std::int64_t>(n);
  o.report.metadata["L"] = L;
  o.report.metadata["max_degree"] = as_int(max_degree);
  o.report.metadata["coefficients"] = t.ring.coeffs.name();
  o.report.metadata["worst_class"] = r.worst_class;
  o.pass = r.verdict;
  return o;
}

Outcome ring_command(int n, const std::string& coeffs, const std::string& op, const std::string& x,
                     const std::string& y) {
  const RingSpec ring = RingSpec::sphere(n, coeffs.empty() ? (n % 2 ? CoefficientSpec::integers() : CoefficientSpec::mod(2))
                                                            : parse_coefficients(coeffs));
  const RingElement ex = RingElement::basis(ring, parse_monomial(ring, x));
  auto need_y = [&]() {
    if (y.empty()) throw PreconditionError("ring: --op " + op + " needs --y");
    return RingElement::basis(ring, parse_monomial(ring, y));
  };
  RingElement result(ring);
  if (op == "delta") {
    result = delta(ex);
    if (result != delta_recursive(ex)) throw PreconditionError("ring: closed-form and recursive Delta disagree");
  } else if (op == "product") {
    result = product(ex, need_y());
  } else if (op == "bracket") {
    result = bracket(ex, need_y());
  } else if (op == "bv") {
    result = bv_defect(ex, need_y());
  } else {
    throw PreconditionError("ring: unknown --op " + op);
  }
  Outcome o;
  Record row{{"op", op}, {"x", label(ring, parse_monomial(ring, x))}, {"result", result.to_string()}};
  if (!y.empty()) row["y"] = label(ring, parse_monomial(ring, y));
  if (auto d = result.homogeneous_degree()) row["degree"] = as_int(*d);
  o.report.rows.push_back(std::move(row));
  o.report.metadata["n"] = static_cast<std::int64_t>(n);
  o.report.metadata["coefficients"] = ring.coeffs.name();
  o.report.metadata["presentation"] = std::string(ring.kind == RingKind::UPresentation ? "U" : "even-integral");
  return o;
}

Outcome perturb_command(double K, double period, const std::string& family, double center, double eta,
                        const std::vector<double>& grid, int periods, double tol) {
  if (!(period > 0.0)) throw InvalidModel("perturb: --period must be positive");
  PerturbationFamily f;
  f.base = CurvatureProfile::constant(1, K, period);
  f.bump = Bump{center, eta};
  if (family == "curvature") {
    f.kind = FamilyKind::CurvatureBump;
  } else if (family == "length") {
    f.kind = FamilyKind::LengthBump;
  } else {
    throw PreconditionError("perturb: --family must be curvature or length");
  }
  const ScanResult scan = index_monotonicity_scan(f, grid, periods, tol);
  Outcome o;
  for (const auto& p : scan.points) {
    o.report.rows.push_back({{"s", p.s},
                             {"alpha_bar", p.alpha_bar},
                             {"average_index", p.average_index},
                             {"unit_circle", p.unit_circle_flag},
                             {"converged", p.converged},
                             {"tolerance", scan.tolerance}});
  }
  o.report.metadata["verdict"] = scan.verdict;
  o.report.metadata["index_arm"] = scan.index_arm;
  o.report.metadata["hyperbolic_arm"] = scan.hyperbolic_arm;
  o.report.metadata["violation"] = scan.violation;
  o.pass = !scan.violation && (scan.index_arm || scan.hyperbolic_arm);
  return o;
}

Outcome verify_command(const std::string& suite, int trials, std::uint64_t seed) {
  SuiteResult r;
  if (suite == "sturm") {
    r = sturm_suite(trials, seed);
  } else if (suite == "star") {
    r = star_suite(trials, seed);
  } else if (suite == "plus-curve") {
    r = plus_curve_suite(trials, seed);
  } else if (suite == "dichotomy") {
    r = dichotomy_suite(trials, seed);
  } else {
    throw PreconditionError("verify: unknown suite " + suite);
  }
  Outcome o;
  o.report.rows = r.rows;
  o.report.metadata["suite"] = r.name;
  o.report.metadata["trials"] = static_cast<std::int64_t>(r.trials);
  o.report.metadata["violations"] = static_cast<std::int64_t>(r.violations);
  o.report.metadata["seed"] = static_cast<std::int64_t>(seed);
  o.report.metadata["tolerance"] = r.tolerance;
  o.pass = r.passed();
  return o;
}

}  // namespace

CoefficientSpec parse_coefficients(const std::string& text) {
  if (text == "Z") return CoefficientSpec::integers();
  if (text == "Q") return CoefficientSpec::rationals();
  try {
    std::size_t pos = 0;
    const long p = std::stol(text, &pos);
    if (pos == text.size()) return CoefficientSpec::mod(p);
  } catch (const std::logic_error&) {
  }
  throw PreconditionError("coefficients must be Z, Q or a prime, got '" + text + "'");
}

Monomial parse_monomial(const RingSpec& ring, const std::string& text) {
  static const std::regex factor(R"(^(A|W|U|Theta|E)(?:\^(\d+))?$)");
  Monomial m;
  std::stringstream ss(text);
  std::string part;
  bool any = false;
  while (std::getline(ss, part, '*')) {
    std::smatch match;
    if (!std::regex_match(part, match, factor)) throw PreconditionError("cannot parse ring class '" + text + "'");
    const int e = match[2].matched ? std::stoi(match[2].str()) : 1;
    const std::string g = match[1].str();
    const std::string power = ring.kind == RingKind::UPresentation ? "U" : "Theta";
    if (g == "A") m.a += e;
    else if (g == "W" && ring.kind == RingKind::EvenIntegral) m.w += e;
    else if (g == power) m.m += e;
    else if (g != "E") throw PreconditionError("generator " + g + " is not part of this presentation");
    any = true;
  }
  if (!any) throw PreconditionError("empty ring class");
  if (!is_basis(ring, m)) throw PreconditionError("'" + text + "' is zero or not in normal form");
  return m;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"geofreq: mean frequencies of closed geodesics and loop-ring tables"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json", output;
  bool timing = false;
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", output, "write the report to a file");
  app.add_flag("--timing", timing, "include wall time in the metadata");

  std::string model;
  std::vector<int> ellipse;
  int periods = 50;
  auto* freq = app.add_subcommand("frequency", "mean frequency of a model geodesic");
  freq->add_option("--model", model, "inline JSON or file path")->required();
  freq->add_option("--ellipse", ellipse, "coordinate ellipse i,j")->delimiter(',');
  freq->add_option("--periods", periods, "periods to integrate")->check(CLI::Range(4, 100000));

  std::vector<double> axes, prop86;
  auto* ell = app.add_subcommand("ellipsoid", "frequencies of the three coordinate ellipses");
  ell->add_option("--axes", axes, "a0,a1,a2")->delimiter(',');
  ell->add_option("--prop86", prop86, "mu,m,lambda separation arithmetic")->delimiter(',');
  ell->add_option("--periods", periods, "periods to integrate")->check(CLI::Range(4, 100000));

  int n = 3;
  double L = 2.0 * kPi;
  long max_degree = 100;
  std::string coeffs;
  bool table = false;
  auto* res = app.add_subcommand("resonance", "round-metric resonance report");
  res->add_option("--n", n, "sphere dimension")->required();
  res->add_option("--L", L, "length of the prime geodesic");
  res->add_option("--max-degree", max_degree, "largest tabulated degree");
  res->add_option("--coefficients", coeffs, "Z, Q or a prime");
  res->add_flag("--table", table, "emit the critical-level table instead");

  std::string op = "delta", x, y;
  auto* ring = app.add_subcommand("ring", "loop-homology ring operations");
  ring->add_option("--n", n, "sphere dimension")->required();
  ring->add_option("--coefficients", coeffs, "Z, Q or a prime");
  ring->add_option("--op", op, "operation")->check(CLI::IsMember({"delta", "product", "bracket", "bv"}));
  ring->add_option("--x", x, "basis monomial, e.g. A*U^3 or W*Theta^2")->required();
  ring->add_option("--y", y, "second monomial for binary operations");

  double K = 1.0, period = 2.0 * kPi, center = 1.0, eta = 0.3, tol = 2e-3;
  std::string family = "curvature";
  std::vector<double> grid{0.0, 0.05, 0.1, 0.2};
  auto* pert = app.add_subcommand("perturb", "index monotonicity scan of a bump family");
  pert->add_option("--K", K, "constant base curvature");
  pert->add_option("--period", period, "length of the base geodesic");
  pert->add_option("--family", family, "bump family")->check(CLI::IsMember({"curvature", "length"}));
  pert->add_option("--center", center, "bump center");
  pert->add_option("--eta", eta, "bump plateau half-width");
  pert->add_option("--grid", grid, "comma-separated values of s")->delimiter(',');
  pert->add_option("--periods", periods, "periods per estimate")->check(CLI::Range(4, 100000));
  pert->add_option("--tolerance", tol, "monotonicity tolerance");

  std::string suite;
  int trials = 100;
  std::uint64_t seed = 1;
  auto* ver = app.add_subcommand("verify", "randomized property suites");
  ver->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember({"star", "sturm", "plus-curve", "dichotomy"}));
  ver->add_option("--trials", trials, "number of random trials")->check(CLI::Range(1, 1000000));
  ver->add_option("--seed", seed, "RNG seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  std::string verb;
  try {
    if (*freq) {
      verb = "frequency";
      o = frequency_command(model, ellipse, periods);
    } else if (*ell) {
      verb = "ellipsoid";
      o = ellipsoid_command(axes, prop86, periods);
    } else if (*res) {
      verb = "resonance";
      o = resonance_command(n, L, max_degree, coeffs, table);
    } else if (*ring) {
      verb = "ring";
      o = ring_command(n, coeffs, op, x, y);
    } else if (*pert) {
      verb = "perturb";
      o = perturb_command(K, period, family, center, eta, grid, periods, tol);
    } else {
      verb = "verify";
      o = verify_command(suite, trials, seed);
    }
  } catch (const IntegrationFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  o.report.metadata["tool"] = std::string("geofreq");
  o.report.metadata["version"] = std::string(GEOFREQ_VERSION);
  o.report.metadata["command"] = verb;
  o.report.metadata["pass"] = o.pass;
  if (timing) {
    o.report.metadata["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  const std::string text = format == "csv" ? o.fixed_csv.value_or(to_csv(o.report)) : to_json(o.report);
  if (output.empty()) {
    out << text;
  } else {
    std::ofstream file(output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << output << '\n';
      return kExitInvalid;
    }
    file << text;
  }
  if (!o.pass) err << verb << ": verdict failed\n";
  return o.pass ? kExitPass : kExitVerdictFailure;
}

}  // namespace geofreq
