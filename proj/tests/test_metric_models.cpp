#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "geofreq/error.hpp"
#include "geofreq/metric_models.hpp"
#include "oracles.hpp"

using namespace geofreq;
using doctest::Approx;

TEST_CASE("round sphere prime length and reference frequency") {
  const RoundSphereModel s3(3, 1.0);
  CHECK(s3.prime_length() == Approx(2 * std::numbers::pi).epsilon(1e-15));
  const ReferenceData ref = reference_data(MetricModel(RoundSphereModel(3, 4.0)));
  CHECK(ref.mean_frequency == Approx(4.0 / std::numbers::pi).epsilon(1e-15));
  CHECK(*ref.prime_length == Approx(std::numbers::pi).epsilon(1e-15));
  // m-th iterate of a prime geodesic on round S^n has index (2m-1)(n-1).
  CHECK(ref.iterate_index(1) == 2);
  CHECK(ref.iterate_index(5) == 18);
}

TEST_CASE("katok reference data") {
  const ReferenceData irr = reference_data(MetricModel(KatokModel(3, 0.1)));
  REQUIRE(irr.geodesic_count.has_value());
  CHECK(*irr.geodesic_count == 4);
  CHECK(irr.mean_frequency == Approx(2.0 / std::numbers::pi).epsilon(1e-15));
  CHECK(irr.warnings.empty());
  const ReferenceData rat = reference_data(parse_model(R"({"kind":"katok","n":5,"epsilon":"1/7"})"));
  CHECK_FALSE(rat.geodesic_count.has_value());
  CHECK(rat.warnings.size() == 1);
  CHECK_THROWS_AS(KatokModel(4, 0.1), InvalidModel);
  CHECK_THROWS_AS(KatokModel(3, 1.0), InvalidModel);
  CHECK(KatokModel(3, 0.5).reversibility() == Approx(3.0));
}

TEST_CASE("ellipsoid construction sorts axes and validates") {
  const EllipsoidModel e({1.5, 1.0, 1.2});
  CHECK(e.axis(0) == 1.0);
  CHECK(e.axis(2) == 1.5);
  CHECK(e.dimension() == 2);
  CHECK_THROWS_AS(EllipsoidModel({1.0, -1.0, 2.0}), InvalidModel);
  CHECK_THROWS_AS(EllipsoidModel({1.0}), InvalidModel);
  CHECK_THROWS_AS(reference_data(MetricModel(e)), PreconditionError);
  const EllipsoidModel g = EllipsoidModel::graded(2.0, 1.05, 4);
  REQUIRE(g.axes().size() == 5);
  CHECK(g.axis(0) == 1.0);
  CHECK(g.axis(1) == Approx(1.05));
  CHECK(g.axis(2) == Approx(2.0));
  CHECK(g.axis(3) == Approx(2.1));
  CHECK(g.axis(4) == Approx(4.0));
}

TEST_CASE("section curvature matches the ellipsoid Gauss curvature formula") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ax(0.5, 2.0), tt(0.0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 50; ++trial) {
    const PlaneSection s{ax(rng), ax(rng), ax(rng)};
    const double t = tt(rng);
    const SectionSample v = section_curvature(s, t);
    CHECK(v.curvature == Approx(oracle::section_curvature(s.a, s.b, s.c, t)).epsilon(1e-12));
    CHECK(v.speed == Approx(oracle::section_speed(s.a, s.b, t)).epsilon(1e-12));
  }
  // On the sphere every section has curvature 1.
  CHECK(section_curvature({1, 1, 1}, 0.7).curvature == Approx(1.0));
}

TEST_CASE("gauss curvature at the axis points") {
  const EllipsoidModel e({1.0, 1.2, 1.5});
  // At (a0, 0, 0): K = a0^2 / (a1^2 a2^2).
  CHECK(gauss_curvature(e, 0.0, std::numbers::pi / 2) == Approx(1.0 / (1.44 * 2.25)).epsilon(1e-12));
}

TEST_CASE("section curvature bounds bracket samples") {
  const PlaneSection s{1.0, 1.5, 1.2};
  const auto [lo, hi] = section_curvature_bounds(s);
  for (int k = 0; k < 400; ++k) {
    const double kk = section_curvature(s, 2 * std::numbers::pi * k / 400).curvature;
    CHECK(kk >= lo - 1e-12);
    CHECK(kk <= hi + 1e-12);
  }
}

TEST_CASE("ellipse perimeter agrees with the elliptic integral") {
  for (auto [a, b] : {std::pair{1.0, 1.2}, {1.0, 1.5}, {1.2, 1.5}, {1.0, 10.0}, {3.0, 3.0}}) {
    CHECK(ellipse_perimeter(a, b) == Approx(oracle::ellipse_perimeter(a, b)).epsilon(1e-10));
  }
  // Frozen from the elliptic-integral oracle.
  CHECK(ellipse_perimeter(1.0, 1.2) == Approx(6.925791195810).epsilon(1e-11));
}

TEST_CASE("arclength map inverts the cumulative arclength") {
  const ArclengthMap map(1.0, 1.5);
  CHECK(map.perimeter() == Approx(oracle::ellipse_perimeter(1.0, 1.5)).epsilon(1e-10));
  for (int k = 0; k <= 20; ++k) {
    const double t = 2 * std::numbers::pi * k / 20.0;
    CHECK(map.parameter_at(map.arclength_at(t)) == Approx(t).epsilon(1e-9));
  }
  // Periodic extension.
  CHECK(map.parameter_at(map.perimeter() + 0.3) == Approx(2 * std::numbers::pi + map.parameter_at(0.3)).epsilon(1e-9));
}

TEST_CASE("short geodesics and section decomposition") {
  const EllipsoidModel e({1.0, 1.2, 1.5});
  const auto g = short_geodesics(e);
  REQUIRE(g.size() == 3);
  CHECK(g[0].i == 0);
  CHECK(g[0].j == 1);
  CHECK(g[0].length == Approx(oracle::ellipse_perimeter(1.0, 1.2)).epsilon(1e-10));
  const auto sec = section_decomposition(e, 0, 2);
  REQUIRE(sec.size() == 1);
  CHECK(sec[0].c == 1.2);
}

TEST_CASE("model JSON parsing") {
  CHECK(model_kind(parse_model(R"({"kind":"round","n":3,"K":1})")) == "round");
  CHECK(model_kind(parse_model(R"({"kind":"ellipsoid","axes":[1,1.2,1.5]})")) == "ellipsoid");
  const auto k = std::get<KatokModel>(parse_model(R"({"kind":"katok","n":3,"epsilon":"1/7"})"));
  CHECK(k.epsilon_rational);
  CHECK(k.epsilon == Approx(1.0 / 7.0));
  CHECK_THROWS_AS(parse_model("{not json"), InvalidModel);
  CHECK_THROWS_AS(parse_model(R"({"kind":"torus"})"), InvalidModel);
  CHECK_THROWS_AS(parse_model(R"({"kind":"ellipsoid","axes":[1,0,2]})"), InvalidModel);
  CHECK_THROWS_AS(parse_model(R"({"kind":"katok","n":3,"epsilon":"x/7"})"), InvalidModel);
}
