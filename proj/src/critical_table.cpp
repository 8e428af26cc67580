#include "geofreq/critical_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "geofreq/error.hpp"

namespace geofreq {

namespace {

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational ceil_half(int m) { return Rational((m + 1) / 2); }

// Position in the U presentation: (a, m) with W = A U and Theta = U^2.
std::pair<int, int> u_coordinates(const RingSpec& ring, const Monomial& x) {
  if (ring.kind == RingKind::UPresentation) return {x.a, x.m};
  if (x.w) return {1, 2 * x.m + 1};
  return {x.a, 2 * x.m};
}

std::string omega_power(int j) {
  if (j == 0) return "";
  return j == 1 ? "omega" : "omega^" + std::to_string(j);
}

std::string star(const std::string& base, int j) {
  const std::string w = omega_power(j);
  if (w.empty()) return base;
  return base.empty() ? w : base + "*" + w;
}

// Dual cohomology class and its level: base level plus one per omega factor.
std::pair<std::string, Rational> dual_of(const RingSpec& ring, const Monomial& x) {
  const auto [a, m] = u_coordinates(ring, x);
  const int j = m / 2;
  if (a) {
    if (m % 2 == 0) return {star("a", j), Rational(j)};
    return {star("", j + 1), Rational(j + 1)};
  }
  if (m == 0) return {"e", Rational(0)};
  if (m % 2 == 0) return {star("theta", j - 1), Rational(1 + (j - 1))};
  return {star("u", j), Rational(1 + j)};
}

Rational round_level(const RingSpec& ring, const Monomial& x) {
  return ceil_half(u_coordinates(ring, x).second);
}

// Exact limit of c_m / m when c_{m+p} - c_m is eventually constant.
std::optional<Rational> periodic_limit(const std::vector<Rational>& c) {
  const std::size_t M = c.size();
  for (std::size_t p = 1; p <= 8; ++p) {
    if (M < 4 * p) break;
    const std::size_t start = M / 2;
    const Rational D = c[M - 1] - c[M - 1 - p];
    bool ok = true;
    for (std::size_t i = start; i + p < M && ok; ++i) ok = (c[i + p] - c[i]) == D;
    if (ok) return D / Rational(static_cast<long>(p));
  }
  return std::nullopt;
}

void record(CheckResult& r, bool ok, const std::string& what) {
  ++r.checked;
  if (ok) return;
  ++r.violations;
  r.ok = false;
  if (r.details.size() < 8) r.details.push_back(what);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void CriticalTable::build_index() {
  std::stable_sort(entries.begin(), entries.end(), [](const TableEntry& x, const TableEntry& y) {
    return x.degree != y.degree ? x.degree < y.degree : x.cls < y.cls;
  });
  index_.clear();
  for (std::size_t i = 0; i < entries.size(); ++i) index_[entries[i].cls] = i;
}

const TableEntry* CriticalTable::find(const Monomial& x) const {
  auto it = index_.find(x);
  return it == index_.end() ? nullptr : &entries[it->second];
}

double CriticalTable::level_value(const TableEntry& e) const { return to_double(e.level) * L; }

Monomial CriticalTable::theta() const {
  return ring.kind == RingKind::UPresentation ? Monomial{0, 0, 2} : Monomial{0, 0, 1};
}

Monomial CriticalTable::omega_dual(int m) const {
  if (m < 1) throw PreconditionError("omega_dual: m must be >= 1");
  return ring.kind == RingKind::UPresentation ? Monomial{1, 0, 2 * m - 1} : Monomial{0, 1, m - 1};
}

CriticalTable round_critical_table(int n, double L, long max_degree, std::optional<CoefficientSpec> coeffs) {
  if (n < 3) throw PreconditionError("round table: n must be >= 3");
  if (!(L > 0.0)) throw PreconditionError("round table: L must be positive");
  const CoefficientSpec spec = coeffs ? *coeffs : (n % 2 == 1 ? CoefficientSpec::integers() : CoefficientSpec::mod(2));
  CriticalTable t;
  t.ring = RingSpec::sphere(n, spec);
  t.L = L;
  t.max_degree = max_degree;
  for (int a = 0; a <= 1; ++a) {
    for (int w = 0; w <= 1; ++w) {
      for (int m = 0;; ++m) {
        const Monomial x{a, w, m};
        if (degree(t.ring, x) > max_degree) break;
        if (!is_basis(t.ring, x)) {
          if (x.a && x.w) break;
          if (t.ring.kind == RingKind::UPresentation && x.w) break;
          continue;
        }
        TableEntry e;
        e.cls = x;
        e.label = label(t.ring, x);
        e.degree = degree(t.ring, x);
        e.level = round_level(t.ring, x);
        std::tie(e.dual_label, e.dual_level) = dual_of(t.ring, x);
        e.torsion = is_torsion(t.ring, x);
        t.entries.push_back(std::move(e));
      }
    }
  }
  t.build_index();
  return t;
}

CriticalTable table_from_points(const RingSpec& ring, double L,
                                const std::vector<std::pair<Monomial, Rational>>& points) {
  if (!(L > 0.0)) throw PreconditionError("table: L must be positive");
  CriticalTable t;
  t.ring = ring;
  t.L = L;
  for (const auto& [x, level] : points) {
    if (!is_basis(ring, x)) throw PreconditionError("table: " + label(ring, x) + " is not a basis class");
    if (level < 0) throw PreconditionError("table: levels must be nonnegative");
    TableEntry e;
    e.cls = x;
    e.label = label(ring, x);
    e.degree = degree(ring, x);
    e.level = level;
    e.dual_label = dual_of(ring, x).first;
    e.dual_level = level;
    e.torsion = is_torsion(ring, x);
    t.max_degree = std::max(t.max_degree, e.degree);
    t.entries.push_back(std::move(e));
  }
  t.build_index();
  return t;
}

namespace {

Monomial single_monomial(const RingElement& x, const char* what) {
  if (x.terms().size() != 1) throw PreconditionError(std::string("mean_level: ") + what + " must be a single basis class");
  return x.terms().begin()->first;
}

}  // namespace

MeanLevel mean_level(const RingElement& U, const RingElement& Z, const CriticalTable& table) {
  if (!(U.ring() == table.ring) || !(Z.ring() == table.ring)) throw RingMismatch("mean_level: ring differs from table");
  const Monomial u = single_monomial(U, "U");
  const Monomial z = single_monomial(Z, "Z");
  if (degree(table.ring, u) <= table.ring.n) throw PreconditionError("mean_level: need deg U > n");
  std::vector<Rational> c;
  MeanLevel out;
  std::optional<Monomial> cur = z;
  for (int m = 1;; ++m) {
    cur = monomial_product(table.ring, *cur, u);
    if (!cur) break;  // the product vanished: nothing further to average
    const TableEntry* e = table.find(*cur);
    if (!e) {
      out.truncated = true;
      break;
    }
    c.push_back(e->level);
  }
  if (c.empty()) throw PreconditionError("mean_level: no tabulated terms");
  out.terms = static_cast<int>(c.size());
  std::vector<double> ratio;
  for (std::size_t i = 0; i < c.size(); ++i) ratio.push_back(to_double(c[i]) * table.L / static_cast<double>(i + 1));
  out.envelope_min = *std::min_element(ratio.begin(), ratio.end());
  out.envelope_max = *std::max_element(ratio.begin(), ratio.end());
  const auto tail = ratio.begin() + static_cast<long>(ratio.size() / 2);
  out.limsup = *std::max_element(tail, ratio.end());
  out.liminf = *std::min_element(tail, ratio.end());
  out.exact_units = periodic_limit(c);
  return out;
}

MuLimits mu_limits(const CriticalTable& table) {
  std::vector<Rational> theta, omega;
  const Monomial th = table.theta();
  for (int m = 1;; ++m) {
    const TableEntry* e = table.find({th.a, th.w, th.m * m});
    if (!e) break;
    theta.push_back(e->level);
  }
  for (int m = 1;; ++m) {
    const TableEntry* e = table.find(table.omega_dual(m));
    if (!e) break;
    omega.push_back(e->dual_level);
  }
  MuLimits out;
  out.depth_plus = static_cast<int>(theta.size());
  out.depth_minus = static_cast<int>(omega.size());
  if (out.depth_plus < 10 || out.depth_minus < 10) {
    throw PreconditionError("mu_limits: table must cover at least 10 powers of Theta and omega");
  }
  const auto M = theta.size();
  for (std::size_t a = 1; a <= M; ++a) {
    for (std::size_t b = 1; a + b <= M; ++b) {
      out.subadditive = out.subadditive && theta[a + b - 1] <= theta[a - 1] + theta[b - 1];
    }
  }
  for (std::size_t a = 1; a <= omega.size(); ++a) {
    for (std::size_t b = 1; a + b <= omega.size(); ++b) {
      out.superadditive = out.superadditive && omega[a + b - 1] >= omega[a - 1] + omega[b - 1];
    }
  }
  // Fekete: inf for the subadditive sequence, sup for the superadditive one.
  Rational inf_plus = theta[0], sup_minus = omega[0];
  for (std::size_t i = 0; i < theta.size(); ++i) inf_plus = std::min(inf_plus, theta[i] / Rational(static_cast<long>(i + 1)));
  for (std::size_t i = 0; i < omega.size(); ++i) sup_minus = std::max(sup_minus, omega[i] / Rational(static_cast<long>(i + 1)));
  out.mu_plus_units = periodic_limit(theta).value_or(inf_plus);
  out.mu_minus_units = periodic_limit(omega).value_or(sup_minus);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    out.powers_bound = out.powers_bound && out.mu_plus_units <= theta[i] / Rational(static_cast<long>(i + 1));
  }
  for (std::size_t i = 0; i < omega.size(); ++i) {
    out.powers_bound = out.powers_bound && out.mu_minus_units >= omega[i] / Rational(static_cast<long>(i + 1));
  }
  out.mu_plus = to_double(out.mu_plus_units) * table.L;
  out.mu_minus = to_double(out.mu_minus_units) * table.L;
  return out;
}

ResonanceReport resonance_report(const CriticalTable& table, int n) {
  if (n != table.ring.n) throw PreconditionError("resonance_report: n does not match the table");
  if (table.max_degree < 10L * (n - 1)) throw PreconditionError("resonance_report: table depth must reach degree 10(n-1)");
  const MuLimits mu = mu_limits(table);
  ResonanceReport out;
  out.n = n;
  out.L = table.L;
  out.mu_plus = mu.mu_plus;
  out.mu_minus = mu.mu_minus;
  out.bound = n;
  const Rational two_n1(2L * (n - 1));
  const bool point = mu.mu_plus_units == mu.mu_minus_units;
  const Rational mean_units = (mu.mu_plus_units + mu.mu_minus_units) / 2;
  if (mean_units <= 0) throw PreconditionError("resonance_report: mean level must be positive");
  out.alpha_bar = to_double(two_n1 / mean_units) / table.L;
  if (!point) {
    out.alpha_interval = std::make_pair(to_double(two_n1 / mu.mu_plus_units) / table.L,
                                        to_double(two_n1 / mu.mu_minus_units) / table.L);
  }
  // alpha_bar * cr is exact in units: 2(n-1) * level / mean_units.
  Rational worst(-1);
  for (const auto& e : table.entries) {
    if (e.degree <= n) continue;
    Rational dev = Rational(e.degree) - two_n1 * e.level / mean_units;
    if (dev < 0) dev = -dev;
    if (dev > worst) {
      worst = dev;
      out.worst_class = e.label;
    }
  }
  if (worst < 0) worst = 0;
  out.max_deviation = to_double(worst);
  if (point) out.max_deviation_exact = worst;
  out.verdict = out.max_deviation <= out.bound;
  return out;
}

CheckResult delta_level_check(const CriticalTable& table) {
  CheckResult r;
  for (const auto& e : table.entries) {
    const RingElement d = delta(RingElement::basis(table.ring, e.cls));
    for (const auto& [y, c] : d.terms()) {
      const TableEntry* ye = table.find(y);
      if (!ye) continue;  // beyond the tabulated range
      record(r, ye->level <= e.level, "cr(Delta " + e.label + ") > cr(" + e.label + ")");
    }
  }
  return r;
}

CheckResult product_level_check(const CriticalTable& table) {
  CheckResult r;
  for (const auto& x : table.entries) {
    for (const auto& y : table.entries) {
      if (x.degree + y.degree - table.ring.n > table.max_degree) break;
      const auto z = monomial_product(table.ring, x.cls, y.cls);
      if (!z) continue;
      const TableEntry* ze = table.find(*z);
      if (!ze) continue;
      record(r, ze->level <= x.level + y.level, "cr(" + x.label + "*" + y.label + ") too high");
    }
  }
  return r;
}

CheckResult rank_check(const CriticalTable& table) {
  CheckResult r;
  std::map<long, int> count;
  for (const auto& e : table.entries) ++count[e.degree];
  for (const auto& [deg, c] : count) record(r, c <= 1, "rank " + std::to_string(c) + " in degree " + std::to_string(deg));
  return r;
}

CheckResult duality_check(const CriticalTable& table) {
  CheckResult r;
  std::map<long, int> count;
  for (const auto& e : table.entries) ++count[e.degree];
  for (const auto& e : table.entries) {
    if (count[e.degree] != 1) continue;
    record(r, e.dual_level == e.level, e.label + " and " + e.dual_label + " sit at different levels");
  }
  return r;
}

CheckResult interval_check(const CriticalTable& table) {
  const MuLimits mu = mu_limits(table);
  const Rational two_n1(2L * (table.ring.n - 1));
  const Rational lo = mu.mu_minus_units / two_n1, hi = mu.mu_plus_units / two_n1;
  const Monomial th = table.theta();
  CheckResult r;
  for (const auto& start : table.entries) {
    // Orbit representatives: classes not divisible by Theta.
    if (start.cls.m >= th.m) continue;
    std::vector<const TableEntry*> orbit;
    for (int j = 0;; ++j) {
      const TableEntry* e = table.find({start.cls.a, start.cls.w, start.cls.m + j * th.m});
      if (!e) break;
      orbit.push_back(e);
    }
    if (orbit.size() < 4) continue;
    const TableEntry* last = orbit.back();
    const TableEntry* prev = orbit[orbit.size() - 2];
    if (last->degree == prev->degree) continue;
    const Rational slope = (last->level - prev->level) / Rational(last->degree - prev->degree);
    record(r, lo <= slope && slope <= hi, "orbit of " + start.label + " has slope outside the interval");
  }
  return r;
}

CheckResult consecutive_nonvanishing_check(const CoefficientSpec& coeffs, int m_max) {
  CheckResult r;
  const long p = coeffs.characteristic();
  for (int m = 1; m <= m_max; ++m) {
    const bool first = p != 0 && (2L * m - 1) % p == 0;
    const bool second = p != 0 && (2L * m + 1) % p == 0;
    record(r, !(first && second), "2m-1 and 2m+1 both vanish at m=" + std::to_string(m));
  }
  return r;
}

std::string table_csv(const CriticalTable& table) {
  std::ostringstream out;
  out << "class,degree,critical_level,dual_class\n";
  for (const auto& e : table.entries) {
    out << e.label << ',' << e.degree << ',' << fmt(table.level_value(e)) << ',' << e.dual_label << '\n';
  }
  return out.str();
}

}  // namespace geofreq
