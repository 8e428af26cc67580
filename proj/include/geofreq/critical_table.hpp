#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geofreq/loop_ring.hpp"

namespace geofreq {

struct TableEntry {
  Monomial cls;
  std::string label;
  long degree = 0;
  /// Critical level in units of L.
  Rational level;
  std::string dual_label;
  /// Level of the dual cohomology class, assigned by its own rule.
  Rational dual_level;
  bool torsion = false;
};

struct CriticalTable {
  RingSpec ring;
  double L = 1.0;
  long max_degree = 0;
  std::vector<TableEntry> entries;  // sorted by degree

  const TableEntry* find(const Monomial& x) const;
  double level_value(const TableEntry& e) const;
  /// Monomial playing the role of Theta (U^2 in the U presentation).
  Monomial theta() const;
  /// Homology class paired with omega^m (m >= 1).
  Monomial omega_dual(int m) const;

 private:
  friend CriticalTable round_critical_table(int, double, long, std::optional<CoefficientSpec>);
  friend CriticalTable table_from_points(const RingSpec&, double, const std::vector<std::pair<Monomial, Rational>>&);
  void build_index();
  std::map<Monomial, std::size_t> index_;
};

/// Round-metric levels: cr(U^m) = cr(A U^m) = ceil(m/2) L, with W = A U and
/// Theta = U^2. Default coefficients: Z for odd n, Z/2 for even n.
CriticalTable round_critical_table(int n, double L, long max_degree,
                                   std::optional<CoefficientSpec> coeffs = std::nullopt);

/// Table from externally supplied levels (in units of L). Dual levels are set
/// equal to the homology levels.
CriticalTable table_from_points(const RingSpec& ring, double L,
                                const std::vector<std::pair<Monomial, Rational>>& points);

struct MeanLevel {
  /// Over the last half of the available terms, in absolute units.
  double limsup = 0.0;
  double liminf = 0.0;
  /// Exact limit in units of L when the level increments are eventually periodic.
  std::optional<Rational> exact_units;
  /// min and max of cr/m over every available term.
  double envelope_min = 0.0;
  double envelope_max = 0.0;
  int terms = 0;
  bool truncated = false;
};

/// cr(U^m . Z)/m along the table. U and Z must be single basis monomials
/// and deg U > n.
MeanLevel mean_level(const RingElement& U, const RingElement& Z, const CriticalTable& table);

struct MuLimits {
  Rational mu_plus_units;
  Rational mu_minus_units;
  double mu_plus = 0.0;
  double mu_minus = 0.0;
  bool subadditive = true;    // cr(Theta^{a+b}) <= cr(Theta^a) + cr(Theta^b)
  bool superadditive = true;  // cr(omega^{a+b}) >= cr(omega^a) + cr(omega^b)
  bool powers_bound = true;   // mu+ <= cr(Theta^m)/m and mu- >= cr(omega^m)/m
  int depth_plus = 0;
  int depth_minus = 0;
};

/// Throws PreconditionError when fewer than 10 powers are tabulated.
MuLimits mu_limits(const CriticalTable& table);

struct ResonanceReport {
  int n = 0;
  double L = 0.0;
  double alpha_bar = 0.0;
  double mu_plus = 0.0;
  double mu_minus = 0.0;
  /// Set when mu+ and mu- differ: the admissible range for alpha_bar.
  std::optional<std::pair<double, double>> alpha_interval;
  double max_deviation = 0.0;
  /// Exact value when mu+ = mu-.
  std::optional<Rational> max_deviation_exact;
  std::string worst_class;
  double bound = 0.0;
  bool verdict = false;
};

ResonanceReport resonance_report(const CriticalTable& table, int n);

struct CheckResult {
  bool ok = true;
  long checked = 0;
  long violations = 0;
  std::vector<std::string> details;  // first few violations
};

/// cr(Delta X) <= cr(X) for every tabulated X with Delta X != 0.
CheckResult delta_level_check(const CriticalTable& table);
/// cr(X . Y) <= cr(X) + cr(Y) for every tabulated nonzero product.
CheckResult product_level_check(const CriticalTable& table);
/// Dual level equals homology level on every degree of rank 1.
CheckResult duality_check(const CriticalTable& table);
/// At most one tabulated class per degree.
CheckResult rank_check(const CriticalTable& table);
/// The limiting cr/deg slope of every Theta-orbit lies in
/// [mu-/(2(n-1)), mu+/(2(n-1))] (in units of L).
CheckResult interval_check(const CriticalTable& table);
/// 2m-1 and 2m+1 never both vanish in the coefficient ring, m = 1..m_max.
CheckResult consecutive_nonvanishing_check(const CoefficientSpec& coeffs, int m_max);

/// CSV with columns class,degree,critical_level,dual_class.
std::string table_csv(const CriticalTable& table);

}  // namespace geofreq
