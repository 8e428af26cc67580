#include "geofreq/suites.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "geofreq/jacobi_engine.hpp"
#include "geofreq/linalg.hpp"
#include "geofreq/symplectic_perturb.hpp"

namespace geofreq {

namespace {

constexpr double kPi = std::numbers::pi;

using Rng = std::mt19937_64;

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

// Trigonometric polynomial c + sum_k a_k cos(2 pi k t / L + phi_k).
struct TrigCurvature {
  double c = 1.0;
  std::vector<double> amp, phase;
  double L = 1.0;

  double operator()(double t) const {
    double v = c;
    for (std::size_t k = 0; k < amp.size(); ++k) {
      v += amp[k] * std::cos(2.0 * kPi * static_cast<double>(k + 1) * t / L + phase[k]);
    }
    return v;
  }
};

TrigCurvature random_trig(Rng& rng, double L, double c_lo, double c_hi, double amp_scale) {
  TrigCurvature k;
  k.L = L;
  k.c = uniform(rng, c_lo, c_hi);
  for (int j = 1; j <= 3; ++j) {
    k.amp.push_back(uniform(rng, -amp_scale, amp_scale) / j);
    k.phase.push_back(uniform(rng, 0.0, 2.0 * kPi));
  }
  return k;
}

Matrix random_spd(Rng& rng, int d) {
  Matrix b(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) b(i, j) = uniform(rng, -1.0, 1.0);
  }
  return b * b.transpose() + 0.1 * Matrix::Identity(d, d);
}

Matrix random_symmetric(Rng& rng, int d) {
  Matrix b(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) b(i, j) = uniform(rng, -0.5, 0.5);
  }
  return symmetrize(b);
}

Record trial_row(int trial, bool ok) {
  return {{"trial", static_cast<std::int64_t>(trial)}, {"pass", ok}};
}

}  // namespace

SuiteResult sturm_suite(int trials, std::uint64_t seed) {
  SuiteResult out;
  out.name = "sturm";
  out.tolerance = 1e-8;
  Rng rng(seed);
  const double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    const double L = uniform(rng, 1.0, 7.0);
    const TrigCurvature k1 = random_trig(rng, L, 0.3, 2.0, 0.3);
    const TrigCurvature shape = random_trig(rng, L, 0.0, 0.5, 0.4);
    const double lift = uniform(rng, 0.0, 0.5);
    // K2 - K1 = lift + shape^2 >= 0
    auto k2 = [k1, shape, lift](double t) { const double s = shape(t); return k1(t) + lift + s * s; };
    const double horizon = 20.0;
    const double t1 = first_conjugate_time(CurvatureProfile::scalar(k1, L), horizon).value_or(inf);
    const double t2 = first_conjugate_time(CurvatureProfile::scalar(k2, L), horizon).value_or(inf);
    const bool ok = t1 >= t2 - out.tolerance;
    ++out.trials;
    if (!ok) ++out.violations;
    Record r = trial_row(i, ok);
    r["period"] = L;
    r["t1_lower_curvature"] = t1;
    r["t1_upper_curvature"] = t2;
    r["tolerance"] = out.tolerance;
    out.rows.push_back(std::move(r));
  }
  return out;
}

SuiteResult star_suite(int trials, std::uint64_t seed) {
  SuiteResult out;
  out.name = "star";
  out.tolerance = 1e-4;
  Rng rng(seed);
  for (int i = 0; i < trials; ++i) {
    const int d = 1 + i % 2;
    const double L = uniform(rng, 1.0, 2.0 * kPi);
    std::vector<std::function<double(double)>> ks;
    for (int j = 0; j < d; ++j) ks.push_back(random_trig(rng, L, -0.5, 1.5, 0.4));
    PerturbationFamily family{CurvatureProfile::diagonal(ks, L), Bump{uniform(rng, 0.0, L), uniform(rng, 0.05, L / 8.0)}, FamilyKind::CurvatureBump, {}};
    const double err = star_consistency_check(family, 1e-4);
    const Bump bump = family.bump;
    const StarForm star = star_derivative(
        family.base, [bump, L, d](double t) { return Matrix(bump.value(t, L) * Matrix::Identity(d, d)); },
        bump.breakpoints(L));
    const double scale = std::max(1.0, star.form.norm());
    const bool pd = star.min_eigenvalue > 1e-12 * scale;
    const bool symmetric = star.symmetry_defect <= 1e-8 * scale;
    const bool ok = err <= out.tolerance && pd && symmetric;
    ++out.trials;
    if (!ok) ++out.violations;
    Record r = trial_row(i, ok);
    r["dim"] = static_cast<std::int64_t>(d);
    r["relative_error"] = err;
    r["min_eigenvalue"] = star.min_eigenvalue;
    r["symmetry_defect"] = star.symmetry_defect;
    r["tolerance"] = out.tolerance;
    out.rows.push_back(std::move(r));
  }
  return out;
}

SuiteResult plus_curve_suite(int trials, std::uint64_t seed) {
  SuiteResult out;
  out.name = "plus-curve";
  out.tolerance = 1e-10;
  Rng rng(seed);
  for (int i = 0; i < trials; ++i) {
    const int d = 1 + i % 3;
    const Matrix j = symplectic_form(d);
    const Matrix a = -j * random_spd(rng, 2 * d);  // J A = S > 0
    const Matrix p0 = Matrix((-j * random_symmetric(rng, 2 * d)).exp());
    std::vector<double> s;
    std::vector<Matrix> forward, backward;
    for (int k = 0; k <= 8; ++k) {
      const double t = 0.05 * k;
      s.push_back(t);
      forward.push_back(Matrix((t * a).exp()) * p0);
      backward.push_back(Matrix((-t * a).exp()) * p0);
    }
    const bool cone = plus_cone_member(a) && !plus_cone_member(-a);
    const bool fwd = is_plus_curve(s, forward, out.tolerance);
    const bool bwd = is_plus_curve(s, backward, out.tolerance);
    const bool ok = cone && fwd && !bwd;
    ++out.trials;
    if (!ok) ++out.violations;
    Record r = trial_row(i, ok);
    r["dim"] = static_cast<std::int64_t>(d);
    r["cone_member"] = cone;
    r["forward_plus"] = fwd;
    r["reversed_plus"] = bwd;
    r["tolerance"] = out.tolerance;
    out.rows.push_back(std::move(r));
  }
  return out;
}

SuiteResult dichotomy_suite(int trials, std::uint64_t seed) {
  SuiteResult out;
  out.name = "dichotomy";
  out.tolerance = 2e-3;
  Rng rng(seed);
  const std::vector<double> grid{0.0, 0.05, 0.1, 0.2};
  for (int i = 0; i < trials; ++i) {
    const bool elliptic = i % 2 == 0;
    PerturbationFamily family;
    std::string expected;
    if (elliptic) {
      const double L = 2.0 * kPi;
      family.base = CurvatureProfile::constant(1, 1.0, L);
      family.bump = Bump{uniform(rng, 0.0, L), uniform(rng, 0.1, 0.4)};
      expected = "index-increasing";
    } else {
      family.base = CurvatureProfile::constant(1, -1.0, 1.0);
      family.bump = Bump{uniform(rng, 0.0, 1.0), uniform(rng, 0.05, 0.2)};
      expected = "hyperbolic-window";
    }
    const ScanResult scan = index_monotonicity_scan(family, grid, 30, out.tolerance);
    const bool arm = elliptic ? scan.index_arm : scan.hyperbolic_arm;
    const bool ok = arm && !scan.violation && (scan.index_arm || scan.hyperbolic_arm);
    ++out.trials;
    if (!ok) ++out.violations;
    Record r = trial_row(i, ok);
    r["family"] = std::string(elliptic ? "K=1" : "R=-1");
    r["expected"] = expected;
    r["verdict"] = scan.verdict;
    r["index_arm"] = scan.index_arm;
    r["hyperbolic_arm"] = scan.hyperbolic_arm;
    r["alpha_bar_first"] = scan.points.front().alpha_bar;
    r["alpha_bar_last"] = scan.points.back().alpha_bar;
    r["tolerance"] = out.tolerance;
    out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace geofreq
