#include "geofreq/metric_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "geofreq/error.hpp"

namespace geofreq {

namespace {

constexpr double kPi = std::numbers::pi;

double ellipse_speed(double a, double b, double t) {
  const double s = std::sin(t);
  const double c = std::cos(t);
  return std::sqrt(a * a * s * s + b * b * c * c);
}

template <class F>
double integrate(F f, double lo, double hi, double rel_tol) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, rel_tol,
                                                                       &err);
}

// Fixed 15-point Gauss rule; exact to rounding on the short cells used below.
template <class F>
double cell_integral(F f, double lo, double hi) {
  return boost::math::quadrature::gauss<double, 15>::integrate(f, lo, hi);
}

}  // namespace

RoundSphereModel::RoundSphereModel(int dimension, double curvature) : n(dimension), K(curvature) {
  if (n < 2) throw InvalidModel("round model: dimension must be >= 2");
  if (!(K > 0.0) || !std::isfinite(K)) throw InvalidModel("round model: K must be positive");
}

double RoundSphereModel::prime_length() const { return 2.0 * kPi / std::sqrt(K); }

KatokModel::KatokModel(int dimension, double eps, bool rational)
    : n(dimension), epsilon(eps), epsilon_rational(rational) {
  if (n < 3 || n % 2 == 0) throw InvalidModel("katok model: dimension must be odd and >= 3");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InvalidModel("katok model: epsilon must lie in [0,1)");
}

double KatokModel::reversibility() const { return (1.0 + epsilon) / (1.0 - epsilon); }

EllipsoidModel::EllipsoidModel(std::vector<double> axes) : axes_(std::move(axes)) {
  if (axes_.size() < 3) throw InvalidModel("ellipsoid: need at least 3 semi-axes (n >= 2)");
  for (double a : axes_) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidModel("ellipsoid: semi-axes must be positive");
  }
  std::sort(axes_.begin(), axes_.end());
}

EllipsoidModel EllipsoidModel::graded(double mu, double lambda, int dimension) {
  if (dimension < 2) throw InvalidModel("graded ellipsoid: dimension must be >= 2");
  if (!(mu > 0.0) || !(lambda > 0.0)) throw InvalidModel("graded ellipsoid: mu, lambda must be positive");
  std::vector<double> axes;
  for (int k = 0; k <= dimension; ++k) {
    const double base = std::pow(mu, k / 2);
    axes.push_back(k % 2 == 0 ? base : lambda * base);
  }
  return EllipsoidModel(std::move(axes));
}

EllipsoidModel EllipsoidModel::scaled(double s) const {
  std::vector<double> axes = axes_;
  for (double& a : axes) a *= s;
  return EllipsoidModel(std::move(axes));
}

double gauss_curvature(const EllipsoidModel& model, double u, double v) {
  if (model.dimension() != 2) throw PreconditionError("gauss_curvature: needs a 3-axis ellipsoid");
  const double a0 = model.axis(0), a1 = model.axis(1), a2 = model.axis(2);
  const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
  const double den = a0 * a0 * a1 * a1 * cv * cv + a2 * a2 * (a1 * a1 * cu * cu + a0 * a0 * su * su) * sv * sv;
  return a0 * a0 * a1 * a1 * a2 * a2 / (den * den);
}

SectionSample section_curvature(const PlaneSection& s, double t) {
  if (!(s.a > 0.0 && s.b > 0.0 && s.c > 0.0)) throw InvalidModel("plane section: axes must be positive");
  const double ct = std::cos(t), st = std::sin(t);
  const double den = s.b * s.b * ct * ct + s.a * s.a * st * st;
  return {s.a * s.a * s.b * s.b / (s.c * s.c * den * den), ellipse_speed(s.a, s.b, t)};
}

std::pair<double, double> section_curvature_bounds(const PlaneSection& s) {
  const double lo = std::min(s.a, s.b);
  const double hi = std::max(s.a, s.b);
  return {lo * lo / (hi * hi * s.c * s.c), hi * hi / (lo * lo * s.c * s.c)};
}

double ellipse_perimeter(double a, double b, double rel_tol) {
  if (a == b) return 2.0 * kPi * a;
  // Four symmetric quarter arcs; integrate one quarter.
  return 4.0 * integrate([a, b](double t) { return ellipse_speed(a, b, t); }, 0.0, 0.5 * kPi, rel_tol);
}

std::vector<ShortGeodesic> short_geodesics(const EllipsoidModel& model) {
  std::vector<ShortGeodesic> out;
  const int count = model.dimension() + 1;
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      out.push_back({i, j, ellipse_perimeter(model.axis(i), model.axis(j))});
    }
  }
  return out;
}

std::vector<PlaneSection> section_decomposition(const EllipsoidModel& model, int i, int j) {
  const int count = model.dimension() + 1;
  if (i < 0 || j <= i || j >= count) {
    std::ostringstream msg;
    msg << "section_decomposition: (" << i << "," << j << ") is not a short geodesic of a "
        << count << "-axis ellipsoid";
    throw PreconditionError(msg.str());
  }
  std::vector<PlaneSection> out;
  for (int k = 0; k < count; ++k) {
    if (k == i || k == j) continue;
    out.push_back({model.axis(i), model.axis(j), model.axis(k)});
  }
  return out;
}

ReferenceData reference_data(const MetricModel& model) {
  ReferenceData out;
  if (const auto* round = std::get_if<RoundSphereModel>(&model)) {
    const int n = round->n;
    out.dimension = n;
    out.prime_length = round->prime_length();
    out.mean_frequency = std::sqrt(round->K) * (n - 1) / kPi;
    out.iterate_index = [n](std::int64_t m) { return (2 * m - 1) * (n - 1); };
    return out;
  }
  if (const auto* katok = std::get_if<KatokModel>(&model)) {
    out.dimension = katok->n;
    // Constant flag curvature 1 for every closed geodesic.
    out.mean_frequency = (katok->n - 1) / kPi;
    if (katok->epsilon_rational) {
      out.warnings.push_back("rational epsilon: the metric carries infinitely many closed geodesics");
    } else {
      out.geodesic_count = katok->n + 1;
    }
    return out;
  }
  throw PreconditionError("reference_data: ellipsoids have no closed-form reference data");
}

std::string model_kind(const MetricModel& model) {
  switch (model.index()) {
    case 0: return "round";
    case 1: return "ellipsoid";
    default: return "katok";
  }
}

namespace {

bool parse_fraction(const std::string& text, double& value) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return false;
  try {
    std::size_t used = 0;
    const long long p = std::stoll(text.substr(0, slash), &used);
    if (used != slash) return false;
    const std::string denom = text.substr(slash + 1);
    const long long q = std::stoll(denom, &used);
    if (used != denom.size() || q == 0) return false;
    value = static_cast<double>(p) / static_cast<double>(q);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

MetricModel parse_model(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidModel(std::string("model JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw InvalidModel("model JSON: expected an object with a string \"kind\"");
  }
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "ellipsoid") {
      if (!j.contains("axes") || !j["axes"].is_array()) throw InvalidModel("ellipsoid: missing \"axes\" array");
      std::vector<double> axes;
      for (const auto& a : j["axes"]) {
        if (!a.is_number()) throw InvalidModel("ellipsoid: axes must be numbers");
        axes.push_back(a.get<double>());
      }
      return EllipsoidModel(std::move(axes));
    }
    if (kind == "round") {
      if (!j.contains("n") || !j["n"].is_number_integer()) throw InvalidModel("round: missing integer \"n\"");
      const double K = j.contains("K") ? j["K"].get<double>() : 1.0;
      return RoundSphereModel(j["n"].get<int>(), K);
    }
    if (kind == "katok") {
      if (!j.contains("n") || !j["n"].is_number_integer()) throw InvalidModel("katok: missing integer \"n\"");
      if (!j.contains("epsilon")) throw InvalidModel("katok: missing \"epsilon\"");
      const auto& e = j["epsilon"];
      if (e.is_string()) {
        double value = 0.0;
        if (!parse_fraction(e.get<std::string>(), value)) {
          throw InvalidModel("katok: string epsilon must be a fraction p/q");
        }
        return KatokModel(j["n"].get<int>(), value, true);
      }
      if (!e.is_number()) throw InvalidModel("katok: epsilon must be a number or \"p/q\"");
      return KatokModel(j["n"].get<int>(), e.get<double>(), false);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidModel(std::string("model JSON: ") + e.what());
  }
  throw InvalidModel("model JSON: unknown kind \"" + kind + "\"");
}

ArclengthMap::ArclengthMap(double a, double b, int nodes) : a_(a), b_(b) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidModel("ellipse: semi-axes must be positive");
  if (nodes < 16) nodes = 16;
  t_nodes_.resize(static_cast<std::size_t>(nodes) + 1);
  s_nodes_.resize(t_nodes_.size());
  dtds_.resize(t_nodes_.size());
  const double h = 2.0 * kPi / nodes;
  double s = 0.0;
  auto speed = [a, b](double t) { return ellipse_speed(a, b, t); };
  for (int k = 0; k <= nodes; ++k) {
    const double t = k * h;
    if (k > 0) s += cell_integral(speed, t - h, t);
    t_nodes_[static_cast<std::size_t>(k)] = t;
    s_nodes_[static_cast<std::size_t>(k)] = s;
    dtds_[static_cast<std::size_t>(k)] = 1.0 / speed(t);
  }
  perimeter_ = s;
}

double ArclengthMap::parameter_at(double s) const {
  const double turns = std::floor(s / perimeter_);
  const double r = s - turns * perimeter_;
  auto it = std::upper_bound(s_nodes_.begin(), s_nodes_.end(), r);
  std::size_t k = static_cast<std::size_t>(std::distance(s_nodes_.begin(), it));
  k = std::clamp<std::size_t>(k, 1, s_nodes_.size() - 1) - 1;
  const double s0 = s_nodes_[k], s1 = s_nodes_[k + 1];
  const double h = s1 - s0;
  const double x = (r - s0) / h;
  const double x2 = x * x, x3 = x2 * x;
  const double h00 = 2 * x3 - 3 * x2 + 1, h10 = x3 - 2 * x2 + x;
  const double h01 = -2 * x3 + 3 * x2, h11 = x3 - x2;
  const double t = h00 * t_nodes_[k] + h10 * h * dtds_[k] + h01 * t_nodes_[k + 1] + h11 * h * dtds_[k + 1];
  return t + turns * 2.0 * kPi;
}

double ArclengthMap::arclength_at(double t) const {
  if (t <= 0.0) return 0.0;
  const double h = t_nodes_[1] - t_nodes_[0];
  std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(t / h), t_nodes_.size() - 2);
  return s_nodes_[k] + cell_integral([this](double x) { return ellipse_speed(a_, b_, x); }, t_nodes_[k], t);
}

}  // namespace geofreq
