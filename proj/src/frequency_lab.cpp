#include "geofreq/frequency_lab.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "geofreq/error.hpp"

namespace geofreq {

namespace {

constexpr double kPi = std::numbers::pi;

// Cumulative conjugate count at tau, linearly interpolated between roots.
double interpolated_count(const ConjugateReport& r, double tau, bool& has_next) {
  double ta = 0.0;
  double na = 0.0;
  std::size_t k = 0;
  double cumulative = 0.0;
  for (; k < r.times.size() && r.times[k] <= tau; ++k) {
    cumulative += r.multiplicities[k];
    ta = r.times[k];
    na = cumulative;
  }
  if (k == r.times.size()) {
    has_next = false;
    return na;
  }
  has_next = true;
  const double tb = r.times[k];
  const double nb = na + r.multiplicities[k];
  return na + (nb - na) * (tau - ta) / (tb - ta);
}

}  // namespace

bool BoundInterval::degenerate(double eps) const {
  return std::abs(upper - lower) <= eps * std::max(1.0, std::abs(upper));
}

bool BoundInterval::contains(double x, double degenerate_tol) const {
  if (degenerate()) return std::abs(x - lower) <= degenerate_tol;
  return strict ? (lower < x && x < upper) : (lower <= x && x <= upper);
}

FrequencyEstimate mean_frequency(const CurvatureProfile& profile, int max_periods, FrequencyOptions options) {
  if (max_periods < 4) throw PreconditionError("mean_frequency: max_periods must be >= 4");
  const double L = profile.period;
  const double T = max_periods * L;
  const auto [kmin, kmax] = curvature_range(profile);
  (void)kmax;
  // Every window of length pi/sqrt(kmin) contains a conjugate point, so the
  // root following T lies within that distance.
  double extra = L;
  if (kmin > 0.0) extra = std::min(1.05 * kPi / std::sqrt(kmin), 4.0 * L);
  const ConjugateReport report = conjugate_points(profile, T + extra);

  FrequencyEstimate out;
  out.period = L;
  out.periods_used = max_periods;
  out.tolerance = options.convergence_tol;
  for (const auto& w : report.warnings) out.warnings.push_back(w);

  std::vector<int> ms;
  for (int m = 4; m < max_periods; m *= 2) ms.push_back(m);
  ms.push_back(max_periods);
  bool plain = false;
  for (int m : ms) {
    bool has_next = false;
    const double tau = m * L;
    const double n = interpolated_count(report, tau, has_next);
    if (!has_next) plain = true;
    if (profile.dim == 1) {
      // t = 0 is itself a zero of the Jacobi field, so the origin is an exact node.
      out.convergence_history.emplace_back(m, n / tau);
    } else {
      // Roots of different directions interleave and the interpolated count
      // lags the true phase by a bounded offset; a slope over the second half
      // of the window cancels it.
      bool unused = false;
      const double n0 = interpolated_count(report, 0.5 * tau, unused);
      out.convergence_history.emplace_back(m, (n - n0) / (0.5 * tau));
    }
  }
  if (plain && report.total() > 0) {
    out.warnings.push_back("no conjugate point after the last window; plain count used");
  }
  out.mean_frequency = out.convergence_history.back().second;
  out.average_index = out.mean_frequency * L;
  if (out.convergence_history.size() >= 2) {
    const double prev = out.convergence_history[out.convergence_history.size() - 2].second;
    out.error_estimate = std::abs(out.mean_frequency - prev);
    const double scale = std::abs(out.mean_frequency);
    out.converged = scale == 0.0 ? out.error_estimate == 0.0
                                 : out.error_estimate / scale < options.convergence_tol;
  }
  if (!out.converged) {
    std::ostringstream msg;
    msg << "estimate not converged after " << max_periods << " periods (relative change "
        << out.error_estimate / std::max(std::abs(out.mean_frequency), 1e-300) << ")";
    out.warnings.push_back(msg.str());
  }
  return out;
}

CurvatureProfile section_profile(const PlaneSection& s, int nodes) {
  auto map = std::make_shared<const ArclengthMap>(s.a, s.b, nodes);
  CurvatureProfile p = CurvatureProfile::scalar(
      [map, s](double arc) { return section_curvature(s, map->parameter_at(arc)).curvature; },
      map->perimeter());
  p.curvature_bounds = section_curvature_bounds(s);
  return p;
}

CurvatureProfile ellipse_profile(const EllipsoidModel& model, int i, int j, int nodes) {
  const std::vector<PlaneSection> sections = section_decomposition(model, i, j);
  auto map = std::make_shared<const ArclengthMap>(model.axis(i), model.axis(j), nodes);
  CurvatureProfile p;
  p.dim = static_cast<int>(sections.size());
  p.period = map->perimeter();
  p.R = [map, sections](double arc) {
    const double t = map->parameter_at(arc);
    const auto d = static_cast<Eigen::Index>(sections.size());
    Matrix r = Matrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) r(k, k) = section_curvature(sections[static_cast<std::size_t>(k)], t).curvature;
    return r;
  };
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : sections) {
    const auto [a, b] = section_curvature_bounds(s);
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  p.curvature_bounds = std::make_pair(lo, hi);
  return p;
}

EllipseFrequency ellipse_mean_frequency(const EllipsoidModel& model, int i, int j, int max_periods,
                                        bool cross_check) {
  EllipseFrequency out;
  out.i = i;
  out.j = j;
  const auto sections = section_decomposition(model, i, j);
  double sum = 0.0;
  double err = 0.0;
  bool converged = true;
  for (const auto& s : sections) {
    out.sections.push_back(mean_frequency(section_profile(s), max_periods));
    const auto& e = out.sections.back();
    sum += e.mean_frequency;
    err += e.error_estimate;
    converged = converged && e.converged;
    for (const auto& w : e.warnings) out.total.warnings.push_back(w);
  }
  out.length = out.sections.front().period;
  out.total.mean_frequency = sum;
  out.total.period = out.length;
  out.total.average_index = sum * out.length;
  out.total.periods_used = max_periods;
  out.total.error_estimate = err;
  out.total.converged = converged;
  const std::size_t hist = out.sections.front().convergence_history.size();
  for (std::size_t h = 0; h < hist; ++h) {
    double v = 0.0;
    for (const auto& e : out.sections) v += e.convergence_history[h].second;
    out.total.convergence_history.emplace_back(out.sections.front().convergence_history[h].first, v);
  }
  if (cross_check && model.dimension() <= 4 && sections.size() > 1) {
    out.full_profile = mean_frequency(ellipse_profile(model, i, j), max_periods);
    out.split_discrepancy = std::abs(out.full_profile->mean_frequency - sum);
  }
  return out;
}

BoundInterval curvature_sandwich(int n, const std::vector<std::pair<double, double>>& per_direction) {
  if (n < 2) throw PreconditionError("curvature_sandwich: n must be >= 2");
  if (static_cast<int>(per_direction.size()) != n - 1) {
    throw PreconditionError("curvature_sandwich: need exactly n-1 directions");
  }
  BoundInterval out;
  out.source = "sandwich";
  for (const auto& [delta, Delta] : per_direction) {
    if (!(delta > 0.0)) throw PreconditionError("curvature_sandwich: curvature must be positive (delta > 0)");
    if (Delta < delta) throw PreconditionError("curvature_sandwich: need delta <= Delta");
    out.lower += delta;
    out.upper += Delta;
  }
  out.lower /= kPi;
  out.upper /= kPi;
  out.strict = !out.degenerate();
  return out;
}

BoundInterval curvature_sandwich(int n, double delta, double Delta) {
  return curvature_sandwich(n, std::vector<std::pair<double, double>>(static_cast<std::size_t>(n - 1), {delta, Delta}));
}

BoundInterval ellipse_sandwich(const EllipsoidModel& model, int i, int j) {
  std::vector<std::pair<double, double>> dirs;
  for (const auto& s : section_decomposition(model, i, j)) {
    const auto [lo, hi] = section_curvature_bounds(s);
    dirs.emplace_back(std::sqrt(lo), std::sqrt(hi));
  }
  BoundInterval out = curvature_sandwich(model.dimension(), dirs);
  out.source = "holonomy";
  return out;
}

BoundInterval profile_sandwich(const CurvatureProfile& profile, int samples) {
  CurvatureProfile sampled = profile;
  sampled.curvature_bounds.reset();
  const auto [lo, hi] = curvature_range(sampled, samples);
  if (!(lo > 0.0)) throw PreconditionError("profile_sandwich: curvature must be positive");
  return curvature_sandwich(profile.dim + 1, std::sqrt(lo), std::sqrt(hi));
}

EllipsoidReport ellipsoid_report(const EllipsoidModel& model, int max_periods) {
  if (model.dimension() != 2) throw PreconditionError("ellipsoid_report: needs exactly 3 axes");
  const double a0 = model.axis(0), a1 = model.axis(1), a2 = model.axis(2);
  struct Spec {
    const char* name;
    int i, j;
    double lo, hi;
  };
  const Spec specs[] = {
      {"gamma1", 0, 1, a0 / (kPi * a1 * a2), a1 / (kPi * a0 * a2)},
      {"gamma2", 0, 2, a0 / (kPi * a1 * a2), a2 / (kPi * a0 * a1)},
      {"gamma3", 1, 2, a1 / (kPi * a0 * a2), a2 / (kPi * a0 * a1)},
  };
  EllipsoidReport out;
  for (const auto& s : specs) {
    const EllipseFrequency f = ellipse_mean_frequency(model, s.i, s.j, max_periods, false);
    EllipsoidRow row;
    row.name = s.name;
    row.i = s.i;
    row.j = s.j;
    row.length = f.length;
    row.alpha_bar = f.total.mean_frequency;
    row.bound.lower = s.lo;
    row.bound.upper = s.hi;
    row.bound.source = "prop85";
    row.bound.strict = !row.bound.degenerate();
    row.inside = row.bound.contains(row.alpha_bar);
    for (const auto& w : f.total.warnings) out.warnings.push_back(std::string(s.name) + ": " + w);
    out.rows.push_back(row);
  }
  const double g1 = out.rows[0].alpha_bar, g2 = out.rows[1].alpha_bar, g3 = out.rows[2].alpha_bar;
  out.chain_holds = out.rows[0].inside && out.rows[1].inside && out.rows[2].inside;
  out.gamma1_below_gamma3 = g1 < g3;
  constexpr double sep = 1e-4;
  out.all_distinct = std::abs(g1 - g2) > sep && std::abs(g2 - g3) > sep && std::abs(g1 - g3) > sep;
  return out;
}

Prop86Result prop86_separation(double mu, int m, double lambda) {
  if (!(mu > 1.0)) throw PreconditionError("prop86_separation: mu must exceed 1");
  if (!(lambda > 1.0)) throw PreconditionError("prop86_separation: lambda must exceed 1");
  if (m < 2) throw PreconditionError("prop86_separation: m must be >= 2");
  Prop86Result out;
  out.mu = mu;
  out.lambda = lambda;
  out.m = m;
  out.threshold = 1.0 + (mu - 1.0) * (mu - 1.0) * std::pow(mu, -m - 2);
  out.below_threshold = lambda < out.threshold;
  for (int i = 1; i <= m; ++i) {
    double s = 0.0;
    for (int k = 0; k <= m; ++k) {
      if (k != i) s += std::pow(mu, -k);
    }
    BoundInterval b;
    b.lower = (1.0 + lambda) / lambda * s;
    b.upper = (1.0 + lambda) * lambda * s;
    b.source = "prop86";
    out.printed.push_back(b);
  }
  const EllipsoidModel model = EllipsoidModel::graded(mu, lambda, 2 * m);
  for (int i = 1; i <= m; ++i) out.sections.push_back(ellipse_sandwich(model, 2 * i - 2, 2 * i - 1));
  out.printed_separated = true;
  out.sections_separated = true;
  for (int i = 0; i + 1 < m; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out.printed_separated = out.printed_separated && out.printed[k].upper < out.printed[k + 1].lower;
    out.sections_separated = out.sections_separated && out.sections[k].upper < out.sections[k + 1].lower;
  }
  return out;
}

IterateIndexVerdict iterate_index_check(double L, double alpha_bar, long ind, long null, int n,
                                        std::optional<long> degree, double tol) {
  if (!std::isfinite(L) || !std::isfinite(alpha_bar)) throw PreconditionError("iterate_index_check: non-finite input");
  IterateIndexVerdict v;
  const double la = L * alpha_bar;
  v.lower_slack = static_cast<double>(ind) - (la - (n - 1));
  v.upper_slack = (la + (n - 1) - static_cast<double>(null)) - static_cast<double>(ind);
  v.lower_ok = v.lower_slack >= -tol;
  v.upper_ok = v.upper_slack >= -tol;
  if (degree) v.degree_ok = ind <= *degree && *degree <= ind + null + 1;
  return v;
}

}  // namespace geofreq
