#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geofreq/jacobi_engine.hpp"
#include "geofreq/metric_models.hpp"

namespace geofreq {

struct FrequencyEstimate {
  double mean_frequency = 0.0;
  double average_index = 0.0;
  double period = 0.0;
  int periods_used = 0;
  /// (periods, estimate) pairs at m = 4, 8, 16, ... and the final m.
  std::vector<std::pair<int, double>> convergence_history;
  double error_estimate = 0.0;
  bool converged = false;
  double tolerance = 1e-3;
  std::vector<std::string> warnings;
};

struct BoundInterval {
  double lower = 0.0;
  double upper = 0.0;
  std::string source;
  /// Bounds are strict unless they coincide (constant curvature).
  bool strict = true;

  /// Strict containment, or |x - lower| <= tol when the interval is degenerate.
  bool contains(double x, double degenerate_tol = 1e-4) const;
  bool degenerate(double eps = 1e-12) const;
};

struct FrequencyOptions {
  double convergence_tol = 1e-3;
};

/// Mean frequency from the density of conjugate points over max_periods periods.
///
/// The cumulative count is interpolated linearly between consecutive conjugate
/// times (with the origin as first node), which makes the estimator exact for
/// constant curvature and removes most of the O(1/m) staircase bias otherwise.
FrequencyEstimate mean_frequency(const CurvatureProfile& profile, int max_periods,
                                 FrequencyOptions options = {});

/// Scalar curvature of one section as an arclength-parametrized profile.
CurvatureProfile section_profile(const PlaneSection& section, int nodes = 4096);

/// Diagonal profile of the coordinate ellipse (i, j): one direction per
/// normal axis, all sharing the arclength parametrization of the ellipse.
CurvatureProfile ellipse_profile(const EllipsoidModel& model, int i, int j, int nodes = 4096);

struct EllipseFrequency {
  int i = 0;
  int j = 0;
  double length = 0.0;
  FrequencyEstimate total;
  std::vector<FrequencyEstimate> sections;
  /// Full block-diagonal run; present for dimension <= 4 when requested.
  std::optional<FrequencyEstimate> full_profile;
  std::optional<double> split_discrepancy;
};

EllipseFrequency ellipse_mean_frequency(const EllipsoidModel& model, int i, int j, int max_periods,
                                        bool cross_check = true);

/// [(sum delta_i)/pi, (sum Delta_i)/pi] for square-root curvature bounds
/// delta_i^2 <= K_i <= Delta_i^2 per parallel direction.
BoundInterval curvature_sandwich(int n, const std::vector<std::pair<double, double>>& per_direction);
BoundInterval curvature_sandwich(int n, double delta, double Delta);

/// Sandwich for ellipse (i, j) from the exact section curvature bounds.
BoundInterval ellipse_sandwich(const EllipsoidModel& model, int i, int j);

/// Interval for profile built from the sampled eigenvalue range of R.
BoundInterval profile_sandwich(const CurvatureProfile& profile, int samples = 2048);

struct EllipsoidRow {
  std::string name;  // gamma1, gamma2, gamma3
  int i = 0;
  int j = 0;
  double length = 0.0;
  double alpha_bar = 0.0;
  BoundInterval bound;
  bool inside = false;
};

struct EllipsoidReport {
  std::vector<EllipsoidRow> rows;  // gamma1 = (0,1), gamma2 = (0,2), gamma3 = (1,2)
  bool chain_holds = false;        // lower1 < a1 < upper1 = lower3 < a3 < upper3
  bool gamma1_below_gamma3 = false;
  bool all_distinct = false;
  std::vector<std::string> warnings;
};

EllipsoidReport ellipsoid_report(const EllipsoidModel& model, int max_periods);

struct Prop86Result {
  double mu = 0.0;
  double lambda = 0.0;
  int m = 0;
  double threshold = 0.0;
  bool below_threshold = false;
  /// Intervals ((1+l)/l S_i, (1+l) l S_i) for i = 1..m with
  /// S_i = sum_{0<=k<=m, k != i} mu^-k.
  std::vector<BoundInterval> printed;
  bool printed_separated = false;
  /// Section sandwich for the ellipse (2i-2, 2i-1) of the graded ellipsoid of
  /// dimension 2m, i = 1..m.
  std::vector<BoundInterval> sections;
  bool sections_separated = false;
};

Prop86Result prop86_separation(double mu, int m, double lambda);

struct IterateIndexVerdict {
  bool lower_ok = false;
  bool upper_ok = false;
  double lower_slack = 0.0;  // ind - (L a - (n-1))
  double upper_slack = 0.0;  // (L a + (n-1) - null) - ind
  std::optional<bool> degree_ok;
  bool ok() const { return lower_ok && upper_ok && degree_ok.value_or(true); }
};

IterateIndexVerdict iterate_index_check(double L, double alpha_bar, long ind, long null, int n,
                                        std::optional<long> degree = std::nullopt, double tol = 1e-9);

}  // namespace geofreq
