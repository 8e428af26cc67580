#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geofreq/report.hpp"

namespace geofreq {

struct SuiteResult {
  std::string name;
  int trials = 0;
  int violations = 0;
  double tolerance = 0.0;
  std::vector<Record> rows;  // one record per trial
  bool passed() const { return trials > 0 && violations == 0; }
};

/// Random periodic pairs K1 <= K2: the first conjugate time of K1 is never
/// earlier than that of K2.
SuiteResult sturm_suite(int trials, std::uint64_t seed);

/// Random profiles and bumps: the star integral matches the finite difference
/// to 1e-4 relative error and is symmetric positive definite.
SuiteResult star_suite(int trials, std::uint64_t seed);

/// Paths exp(sA) P0 with J A > 0 are plus curves, and their reversals are not.
SuiteResult plus_curve_suite(int trials, std::uint64_t seed);

/// Curvature-bump scans over K = 1 must report a nondecreasing frequency,
/// scans over R = -1 a hyperbolic window, and no scan may lose both arms.
SuiteResult dichotomy_suite(int trials, std::uint64_t seed);

}  // namespace geofreq
