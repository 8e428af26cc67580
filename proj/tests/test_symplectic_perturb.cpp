#include <cmath>
#include <numbers>

#include "doctest.h"
#include "geofreq/error.hpp"
#include "geofreq/frequency_lab.hpp"
#include "geofreq/suites.hpp"
#include "geofreq/symplectic_perturb.hpp"

using namespace geofreq;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("bump shape") {
  const Bump b{1.0, 0.2};
  CHECK(b.value(1.0, 5.0) == 1.0);
  CHECK(b.value(1.15, 5.0) == 1.0);
  CHECK(b.value(1.3, 5.0) == Approx(0.5));
  CHECK(b.value(1.5, 5.0) == 0.0);
  CHECK(b.value(6.0, 5.0) == 1.0);  // periodic
  CHECK(b.breakpoints(5.0).size() == 4);
  CHECK_THROWS_AS(Bump({0.0, 2.0}).validate(5.0), PreconditionError);
}

TEST_CASE("plus cone membership") {
  const Matrix j = symplectic_form(1);
  CHECK(plus_cone_member(-j));           // J(-J) = I
  CHECK_FALSE(plus_cone_member(j));      // J J = -I
  Matrix notlie(2, 2);
  notlie << 1, 0, 0, 1;
  CHECK_THROWS_AS(plus_cone_member(notlie), PreconditionError);
}

TEST_CASE("star form of the flat segment") {
  // X(t) = [[1, t], [0, 1]], tau = 1: int_0^1 (1, t)^T (1, t) dt.
  const StarForm s = star_derivative(CurvatureProfile::constant(1, 0.0, 1.0),
                                     [](double) { return Matrix::Identity(1, 1); });
  CHECK(s.form(0, 0) == Approx(1.0).epsilon(1e-12));
  CHECK(s.form(0, 1) == Approx(0.5).epsilon(1e-12));
  CHECK(s.form(1, 1) == Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(s.min_eigenvalue > 0.0);
  CHECK_THROWS_AS(star_derivative(CurvatureProfile::constant(1, 0.0, 1.0),
                                  [](double) { return Matrix(-Matrix::Identity(1, 1)); }),
                  PreconditionError);
}

TEST_CASE("star form against finite differences") {
  const PerturbationFamily f{CurvatureProfile::constant(1, 1.0, 2 * pi), Bump{1.0, 0.3}, FamilyKind::CurvatureBump, {}};
  CHECK(star_consistency_check(f, 1e-4) < 1e-6);
  const PerturbationFamily g{CurvatureProfile::constant(3, 0.5, 2 * pi), Bump{2.0, 0.2}, FamilyKind::CurvatureBump, {}};
  CHECK(star_consistency_check(g, 1e-4) < 1e-6);
  CHECK_THROWS_AS(star_consistency_check(f, 0.5), PreconditionError);
}

TEST_CASE("curvature bump raises the frequency") {
  PerturbationFamily f{CurvatureProfile::constant(1, 1.0, 2 * pi), Bump{1.0, 0.3}, FamilyKind::CurvatureBump, {}};
  CHECK_THROWS_AS(apply_curvature_bump(f, -0.1), PreconditionError);
  const CurvatureProfile p = apply_curvature_bump(f, 0.5);
  CHECK(p.eval(1.0)(0, 0) == Approx(1.5));
  CHECK(p.eval(3.0)(0, 0) == Approx(1.0));
  const double a0 = mean_frequency(f.base, 30).mean_frequency;
  const double a1 = mean_frequency(p, 30).mean_frequency;
  CHECK(a1 > a0);
}

TEST_CASE("length bump inserts a frozen stretch") {
  auto k = [](double t) { return 1.0 + 0.5 * std::sin(t); };
  const CurvatureProfile base = CurvatureProfile::scalar(k, 2 * pi);
  const CurvatureProfile p = length_bump(base, Bump{1.0, 0.2}, 0.5);
  CHECK(p.period == Approx(2 * pi + 0.5));
  CHECK(p.eval(0.5)(0, 0) == Approx(k(0.5)));
  CHECK(p.eval(1.3)(0, 0) == Approx(k(1.0)));
  CHECK(p.eval(2.0)(0, 0) == Approx(k(1.5)));
}

TEST_CASE("dichotomy scans") {
  const PerturbationFamily elliptic{CurvatureProfile::constant(1, 1.0, 2 * pi), Bump{1.0, 0.3},
                                    FamilyKind::CurvatureBump, {}};
  const ScanResult a = index_monotonicity_scan(elliptic, {0.0, 0.05, 0.1, 0.2}, 30);
  CHECK(a.index_arm);
  CHECK(a.verdict == "index-increasing");
  const PerturbationFamily hyperbolic{CurvatureProfile::constant(1, -1.0, 1.0), Bump{0.5, 0.1},
                                      FamilyKind::CurvatureBump, {}};
  const ScanResult b = index_monotonicity_scan(hyperbolic, {0.0, 0.05, 0.1, 0.2}, 30);
  CHECK(b.hyperbolic_arm);
  CHECK(b.verdict == "hyperbolic-window");
  CHECK_THROWS_AS(index_monotonicity_scan(elliptic, {0.1, 0.2}, 30), PreconditionError);
}

TEST_CASE("plus curve from a curvature-bump family") {
  const PerturbationFamily f{CurvatureProfile::constant(1, 1.0, 2 * pi), Bump{1.0, 0.3}, FamilyKind::CurvatureBump, {}};
  std::vector<double> s;
  std::vector<Matrix> path;
  for (int k = 0; k < 5; ++k) {
    s.push_back(0.1 * k);
    path.push_back(poincare_map(apply_curvature_bump(f, 0.1 * k)).P);
  }
  CHECK(is_plus_curve(s, path));
  CHECK_THROWS_AS(is_plus_curve({0.0, 0.1}, {path[0], path[1]}), PreconditionError);
}

TEST_CASE("randomized suites pass") {
  CHECK(sturm_suite(30, 5).passed());
  CHECK(star_suite(4, 5).passed());
  CHECK(plus_curve_suite(12, 5).passed());
  CHECK(dichotomy_suite(2, 5).passed());
}
