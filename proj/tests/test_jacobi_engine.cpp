#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "geofreq/error.hpp"
#include "geofreq/jacobi_engine.hpp"
#include "oracles.hpp"

using namespace geofreq;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("fundamental solution of constant curvature is exact") {
  const CurvatureProfile p = CurvatureProfile::constant(1, 4.0, pi);
  const FundamentalSolution sol(p, 3 * pi);
  for (double t : {0.3, 1.0, 2.5, 7.0, 3 * pi}) {
    const Matrix x = sol.at(t);
    CHECK(x(0, 0) == Approx(std::cos(2 * t)).epsilon(1e-9));
    CHECK(x(0, 1) == Approx(std::sin(2 * t) / 2).epsilon(1e-9));
    CHECK(x(1, 0) == Approx(-2 * std::sin(2 * t)).epsilon(1e-9));
  }
  CHECK(sol.max_symplectic_defect() < 1e-9);
}

TEST_CASE("piecewise-constant monodromy matches exact propagators") {
  // K = 2 on [0, 1), K = -0.5 on [1, 1.7).
  auto k = [](double t) { return t < 1.0 ? 2.0 : -0.5; };
  CurvatureProfile p = CurvatureProfile::scalar(k, 1.7);
  p.breakpoints = {1.0};
  const Matrix x = FundamentalSolution(p, 1.7).final_state();
  const oracle::M2 m = oracle::piecewise_monodromy({{2.0, 1.0}, {-0.5, 0.7}});
  CHECK(x(0, 0) == Approx(m.a).epsilon(1e-9));
  CHECK(x(0, 1) == Approx(m.b).epsilon(1e-9));
  CHECK(x(1, 0) == Approx(m.c).epsilon(1e-9));
  CHECK(x(1, 1) == Approx(m.d).epsilon(1e-9));
}

TEST_CASE("symplecticity is preserved along random profiles") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double a = u(rng), b = u(rng), c = u(rng);
    auto r = [a, b, c](double t) {
      Matrix m(2, 2);
      m << 1 + a * std::cos(t), b * std::sin(2 * t), b * std::sin(2 * t), 0.5 + c * std::cos(3 * t);
      return m;
    };
    CurvatureProfile p;
    p.dim = 2;
    p.period = 2 * pi;
    p.R = r;
    const FundamentalSolution sol(p, 4 * pi);
    CHECK(sol.max_symplectic_defect() < 1e-8);
  }
}

TEST_CASE("conjugate points of constant curvature sit at k pi / sqrt(K)") {
  for (double K : {1.0, 4.0, 0.25, 2.0}) {
    const double c = std::sqrt(K);
    const double L = 2 * pi / c;
    const ConjugateReport r = conjugate_points(CurvatureProfile::constant(1, K, L), 10 * L);
    REQUIRE(r.times.size() == 20);
    for (std::size_t k = 0; k < r.times.size(); ++k) {
      CHECK(std::abs(r.times[k] - (k + 1) * pi / c) <= 1e-8);
      CHECK(r.multiplicities[k] == 1);
    }
  }
}

TEST_CASE("multiplicity equals the dimension for isotropic curvature") {
  const ConjugateReport r = conjugate_points(CurvatureProfile::constant(3, 1.0, 2 * pi), 4 * pi);
  REQUIRE(r.times.size() == 4);
  for (int m : r.multiplicities) CHECK(m == 3);
  CHECK(r.total() == 12);
  CHECK(r.count(pi + 0.1) == 3);
  CHECK(r.count(pi - 0.1) == 0);
}

TEST_CASE("anisotropic curvature splits the conjugate points") {
  Matrix r(2, 2);
  r << 1.0, 0.0, 0.0, 4.0;
  const ConjugateReport rep = conjugate_points(CurvatureProfile::from_matrix(r, 2 * pi), 2 * pi);
  // sqrt(4) = 2: pi/2, pi, 3pi/2, 2pi; sqrt(1) = 1: pi, 2pi.
  REQUIRE(rep.times.size() == 4);
  CHECK(rep.times[0] == Approx(pi / 2).epsilon(1e-9));
  CHECK(rep.multiplicities[1] == 2);
  CHECK(rep.total() == 6);
}

TEST_CASE("negative curvature has no conjugate points") {
  CHECK(conjugate_points(CurvatureProfile::constant(2, -1.0, 1.0), 20.0).total() == 0);
  CHECK_FALSE(first_conjugate_time(CurvatureProfile::constant(1, 0.0, 1.0), 50.0).has_value());
}

TEST_CASE("first conjugate time of a varying profile agrees with Pruefer") {
  // y'' + (1 + 0.5 cos t) y = 0: first zero of y with y(0) = 0, y'(0) = 1 is where
  // the Pruefer angle reaches pi.
  auto K = [](double t) { return 1.0 + 0.5 * std::cos(t); };
  const auto t1 = first_conjugate_time(CurvatureProfile::scalar(K, 2 * pi), 10.0);
  REQUIRE(t1.has_value());
  double th = 0, t = 0;
  const double h = 1e-4;
  auto f = [&](double tt, double x) { return std::cos(x) * std::cos(x) + K(tt) * std::sin(x) * std::sin(x); };
  while (th < pi) {
    const double k1 = f(t, th), k2 = f(t + h / 2, th + h / 2 * k1), k3 = f(t + h / 2, th + h / 2 * k2),
                 k4 = f(t + h, th + h * k3);
    th += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    t += h;
  }
  CHECK(*t1 == Approx(t).epsilon(1e-4));
}

TEST_CASE("poincare classification") {
  const PoincareData round = poincare_map(CurvatureProfile::constant(2, 1.0, 2 * pi));
  CHECK(round.unit_circle_flag);
  CHECK(round.nullity == 4);
  const PoincareData hyp = poincare_map(CurvatureProfile::constant(1, -1.0, 1.0));
  CHECK_FALSE(hyp.unit_circle_flag);
  CHECK(hyp.nullity == 0);
  const PoincareData ell = poincare_map(CurvatureProfile::constant(1, 1.0, 1.0));
  CHECK(ell.unit_circle_flag);
  CHECK(ell.nullity == 0);
  CHECK(ell.symplectic_defect < 1e-10);
  // Parabolic Jordan block [[1,1],[0,1]] is on the unit circle.
  Matrix shear(2, 2);
  shear << 1, 1, 0, 1;
  CHECK(classify_symplectic(shear).unit_circle_flag);
  CHECK(classify_symplectic(shear).nullity == 1);
}

TEST_CASE("holonomy conjugates the periodic extension") {
  CurvatureProfile p = CurvatureProfile::constant(2, 1.0, 1.0);
  Matrix r(2, 2);
  r << 1.0, 0.0, 0.0, 2.0;
  p.R = [r](double) { return r; };
  Matrix q(2, 2);
  q << 0, -1, 1, 0;
  p.holonomy = q;
  const Matrix next = p.eval(1.5);
  CHECK(next(0, 0) == Approx(2.0));
  CHECK(next(1, 1) == Approx(1.0));
  CHECK(p.eval(2.5)(0, 0) == Approx(1.0));
}

TEST_CASE("index form of sin on the round circle") {
  // I(y, y) = int (y'^2 - y^2) over [0, T] with y = sin(pi t / T).
  const double T = 2.0;
  const double w = pi / T;
  TestFunction y{[w](double t) { return std::sin(w * t); }, [w](double t) { return w * std::cos(w * t); }, {}};
  const double v = index_form_value(CurvatureProfile::constant(1, 1.0, 10.0), T, y, y);
  CHECK(v == Approx((w * w - 1.0) * T / 2).epsilon(1e-9));
  TestFunction bad{[](double) { return 1.0; }, [](double) { return 0.0; }, {}};
  CHECK_THROWS_AS(index_form_value(CurvatureProfile::constant(1, 1.0, 10.0), T, bad, bad), PreconditionError);
}

TEST_CASE("step underflow raises IntegrationFailure") {
  CurvatureProfile p = CurvatureProfile::scalar([](double t) { return 1.0 / (t - 0.5) / (t - 0.5) * 1e12; }, 1.0);
  CHECK_THROWS_AS(FundamentalSolution(p, 1.0), IntegrationFailure);
}
