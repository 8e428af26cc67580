#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace geofreq {

/// Sphere of constant curvature K in dimension n.
struct RoundSphereModel {
  int n = 2;
  double K = 1.0;

  RoundSphereModel(int dimension, double curvature);
  /// Length of a prime closed geodesic, 2*pi/sqrt(K).
  double prime_length() const;
};

/// Katok-type reference metric. Data only: geodesic count and frequency are
/// closed-form, nothing is integrated.
struct KatokModel {
  int n = 3;
  double epsilon = 0.0;
  /// Set when epsilon was given as an exact fraction p/q. Rational parameters
  /// carry infinitely many closed geodesics.
  bool epsilon_rational = false;

  KatokModel(int dimension, double eps, bool rational = false);
  /// (1 + eps) / (1 - eps)
  double reversibility() const;
};

/// Ellipsoid sum (x_i / a_i)^2 = 1 in R^{n+1}. Axes are stored sorted
/// ascending and every index pair refers to the sorted order.
class EllipsoidModel {
 public:
  explicit EllipsoidModel(std::vector<double> axes);

  /// a_{2i} = mu^i, a_{2i+1} = lambda * mu^i for the axes of an ellipsoid of
  /// the given dimension (dimension + 1 axes).
  static EllipsoidModel graded(double mu, double lambda, int dimension);

  int dimension() const { return static_cast<int>(axes_.size()) - 1; }
  const std::vector<double>& axes() const { return axes_; }
  double axis(int i) const { return axes_.at(static_cast<std::size_t>(i)); }
  EllipsoidModel scaled(double s) const;

 private:
  std::vector<double> axes_;
};

/// Two-dimensional totally geodesic section through a coordinate ellipse:
/// the ellipse lies in the (a, b) plane and c is the normal semi-axis.
struct PlaneSection {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
};

struct SectionSample {
  double curvature;
  double speed;
};

using MetricModel = std::variant<RoundSphereModel, EllipsoidModel, KatokModel>;

/// Gauss curvature of a 3-axis ellipsoid at parameters (u, v) of
/// x0 = a0 cos u sin v, x1 = a1 sin u sin v, x2 = a2 cos v.
double gauss_curvature(const EllipsoidModel& model, double u, double v);

/// Curvature of the section along its distinguished ellipse
/// (a cos t, b sin t, 0), and the speed ds/dt of that parametrization.
SectionSample section_curvature(const PlaneSection& section, double t);

/// Closed bounds [min, max] of section_curvature over t.
std::pair<double, double> section_curvature_bounds(const PlaneSection& section);

/// Perimeter of the ellipse with semi-axes a, b by adaptive quadrature.
double ellipse_perimeter(double a, double b, double rel_tol = 1e-10);

struct ShortGeodesic {
  int i;
  int j;
  double length;
};

/// All coordinate-plane ellipses (i < j) with their lengths.
std::vector<ShortGeodesic> short_geodesics(const EllipsoidModel& model);

/// Sections (a_i, a_j, a_k) for each k outside {i, j}, in increasing k.
std::vector<PlaneSection> section_decomposition(const EllipsoidModel& model, int i, int j);

struct ReferenceData {
  std::optional<double> prime_length;
  std::optional<std::int64_t> geodesic_count;
  double mean_frequency = 0.0;
  int dimension = 0;
  /// Index of the m-th iterate of a prime geodesic; empty when the model has
  /// no closed form for it.
  std::function<std::int64_t(std::int64_t)> iterate_index;
  std::vector<std::string> warnings;
};

/// Closed-form data for the round and Katok models. Throws PreconditionError
/// for ellipsoids.
ReferenceData reference_data(const MetricModel& model);

/// Parses {"kind":"ellipsoid","axes":[...]}, {"kind":"round","n":3,"K":1},
/// {"kind":"katok","n":3,"epsilon":0.1} (or "epsilon":"1/7" for an exact
/// rational). Throws InvalidModel.
MetricModel parse_model(const std::string& json_text);

std::string model_kind(const MetricModel& model);

/// Arclength reparametrization of the ellipse (a cos t, b sin t).
/// t(s) is a cubic Hermite interpolant through cumulative-quadrature nodes with
/// exact derivative dt/ds = 1/speed, extended periodically.
class ArclengthMap {
 public:
  ArclengthMap(double a, double b, int nodes = 4096);

  double perimeter() const { return perimeter_; }
  /// Ellipse parameter t for arclength s (any real s).
  double parameter_at(double s) const;
  /// Arclength s at ellipse parameter t in [0, 2*pi].
  double arclength_at(double t) const;

 private:
  double a_, b_;
  double perimeter_ = 0.0;
  std::vector<double> t_nodes_;
  std::vector<double> s_nodes_;
  std::vector<double> dtds_;
};

}  // namespace geofreq
