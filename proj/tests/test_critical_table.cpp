#include <cmath>
#include <numbers>

#include "doctest.h"
#include "geofreq/critical_table.hpp"
#include "geofreq/error.hpp"

using namespace geofreq;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("round table levels for n = 3, L = 2 pi") {
  const CriticalTable t = round_critical_table(3, 2 * pi, 100);
  auto level = [&](Monomial x) { return t.level_value(*t.find(x)); };
  CHECK(level({0, 0, 1}) == Approx(2 * pi));
  CHECK(level({0, 0, 3}) == Approx(4 * pi));
  CHECK(level({1, 0, 6}) == Approx(6 * pi));
  CHECK(level({0, 0, 0}) == 0.0);
  CHECK(level({1, 0, 0}) == 0.0);
  for (int m = 1; m <= 15; ++m) CHECK(level({0, 0, 2 * m}) == Approx(m * 2 * pi));
  for (const auto& e : t.entries) CHECK(e.degree <= 100);
  CHECK(t.find({0, 0, 50}) == nullptr);
}

TEST_CASE("even integral table carries torsion classes") {
  const CriticalTable z = round_critical_table(4, 1.0, 200, CoefficientSpec::integers());
  const TableEntry* tor = z.find({1, 0, 2});
  REQUIRE(tor != nullptr);
  CHECK(tor->torsion);
  CHECK(tor->level == 2);
  CHECK(z.find({0, 1, 3})->level == 4);
  const CriticalTable q = round_critical_table(4, 1.0, 200, CoefficientSpec::rationals());
  CHECK(q.find({1, 0, 2}) == nullptr);
}

TEST_CASE("mean levels on the round table") {
  const CriticalTable t = round_critical_table(3, 2 * pi, 200);
  const RingSpec& r = t.ring;
  const MeanLevel theta = mean_level(RingElement::basis(r, {0, 0, 2}), RingElement::E(r), t);
  REQUIRE(theta.exact_units.has_value());
  CHECK(*theta.exact_units == 1);
  const MeanLevel ua = mean_level(RingElement::U(r), RingElement::A(r), t);
  const MeanLevel uu = mean_level(RingElement::U(r), RingElement::U(r), t);
  CHECK(*ua.exact_units == Rational(1, 2));
  CHECK(*ua.exact_units <= *uu.exact_units);
  CHECK(ua.truncated);
  CHECK(ua.liminf <= ua.limsup);
  CHECK_THROWS_AS(mean_level(RingElement::A(r), RingElement::E(r), t), PreconditionError);
}

TEST_CASE("mu limits, Fekete bounds and resonance") {
  for (int n = 3; n <= 6; ++n) {
    const CriticalTable t = round_critical_table(n, 2 * pi, 500);
    const MuLimits mu = mu_limits(t);
    CHECK(mu.mu_plus_units == 1);
    CHECK(mu.mu_minus_units == 1);
    CHECK(mu.subadditive);
    CHECK(mu.superadditive);
    CHECK(mu.powers_bound);
    const ResonanceReport rr = resonance_report(t, n);
    CHECK(rr.alpha_bar == Approx(2.0 * (n - 1) / (2 * pi)).epsilon(1e-14));
    CHECK(*rr.max_deviation_exact == n);
    CHECK(rr.verdict);
    CHECK_FALSE(rr.alpha_interval.has_value());
  }
  CHECK_THROWS_AS(mu_limits(round_critical_table(3, 1.0, 20)), PreconditionError);
  CHECK_THROWS_AS(resonance_report(round_critical_table(3, 1.0, 100), 5), PreconditionError);
}

TEST_CASE("resonance deviations of individual classes") {
  // alpha = 2/pi for n = 3, L = 2 pi: U^5 has degree 13 and level 6 pi.
  const CriticalTable t = round_critical_table(3, 2 * pi, 100);
  const double alpha = resonance_report(t, 3).alpha_bar;
  CHECK(alpha == Approx(2 / pi));
  CHECK(std::abs(13 - alpha * t.level_value(*t.find({0, 0, 5}))) == Approx(1.0));
  CHECK(std::abs(12 - alpha * t.level_value(*t.find({1, 0, 6}))) == Approx(0.0).epsilon(1e-12));
  const double doubled = resonance_report(round_critical_table(3, 4 * pi, 100), 3).alpha_bar;
  CHECK(doubled == Approx(alpha / 2));
}

TEST_CASE("level inequalities, duality and interval containment") {
  for (int n = 3; n <= 6; ++n) {
    const CriticalTable t = round_critical_table(n, 1.0, 300);
    CHECK(delta_level_check(t).ok);
    CHECK(product_level_check(t).ok);
    CHECK(duality_check(t).ok);
    CHECK(rank_check(t).ok);
    const CheckResult iv = interval_check(t);
    CHECK(iv.ok);
    CHECK(iv.checked >= 2);
  }
  CHECK(consecutive_nonvanishing_check(CoefficientSpec::mod(3), 100).ok);
  CHECK(consecutive_nonvanishing_check(CoefficientSpec::integers(), 100).ok);
}

TEST_CASE("violations are detected on a bad external table") {
  const RingSpec r = RingSpec::sphere(3, CoefficientSpec::integers());
  std::vector<std::pair<Monomial, Rational>> pts;
  for (int m = 0; m <= 40; ++m) {
    pts.push_back({{0, 0, m}, Rational((m + 1) / 2)});
    pts.push_back({{1, 0, m}, Rational((m + 1) / 2)});
  }
  pts[10].second = 40;  // inflate cr(U^5)
  const CriticalTable t = table_from_points(r, 1.0, pts);
  CHECK_FALSE(product_level_check(t).ok);
}

TEST_CASE("unequal mean levels produce an interval") {
  const RingSpec r = RingSpec::sphere(3, CoefficientSpec::integers());
  std::vector<std::pair<Monomial, Rational>> pts;
  for (int m = 1; m <= 30; ++m) {
    pts.push_back({{0, 0, 2 * m}, Rational(6 * m, 5)});
    pts.push_back({{1, 0, 2 * m - 1}, Rational(m)});
  }
  const CriticalTable t = table_from_points(r, 1.0, pts);
  const ResonanceReport rr = resonance_report(t, 3);
  REQUIRE(rr.alpha_interval.has_value());
  CHECK(rr.alpha_interval->first == Approx(4.0 / 1.2));
  CHECK(rr.alpha_interval->second == Approx(4.0));
  CHECK(rr.mu_minus <= rr.mu_plus);
}

TEST_CASE("table CSV export") {
  const std::string csv = table_csv(round_critical_table(3, 1.0, 6));
  CHECK(csv ==
        "class,degree,critical_level,dual_class\n"
        "A,0,0,a\n"
        "A*U,2,1,omega\n"
        "E,3,0,e\n"
        "A*U^2,4,1,a*omega\n"
        "U,5,1,u\n"
        "A*U^3,6,2,omega^2\n");
}
