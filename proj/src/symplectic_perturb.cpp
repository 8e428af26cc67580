#include "geofreq/symplectic_perturb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>

#include "geofreq/error.hpp"
#include "geofreq/frequency_lab.hpp"

namespace geofreq {

namespace {

double wrap(double t, double period) { return t - std::floor(t / period) * period; }

double smoothstep5(double x) { return x * x * x * (10.0 + x * (-15.0 + 6.0 * x)); }

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b, double period) {
  for (double x : b) a.push_back(wrap(x, period));
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end(), [](double x, double y) { return std::abs(x - y) < 1e-15; }), a.end());
  return a;
}

}  // namespace

double Bump::value(double t, double period) const {
  double u = std::abs(wrap(t - center, period));
  u = std::min(u, period - u);
  if (u <= eta) return 1.0;
  if (u >= 2.0 * eta) return 0.0;
  return 1.0 - smoothstep5((u - eta) / eta);
}

std::vector<double> Bump::breakpoints(double period) const {
  std::vector<double> out;
  for (double off : {-2.0 * eta, -eta, eta, 2.0 * eta}) out.push_back(wrap(center + off, period));
  std::sort(out.begin(), out.end());
  return out;
}

void Bump::validate(double period) const {
  if (!(eta > 0.0)) throw PreconditionError("bump: eta must be positive");
  if (!(4.0 * eta < period)) throw PreconditionError("bump: support must lie strictly inside one period");
}

bool plus_cone_member(const Matrix& A, double tol) {
  if (A.rows() != A.cols() || A.rows() % 2 != 0) throw PreconditionError("plus_cone_member: need a 2d x 2d matrix");
  if (lie_algebra_defect(A) > tol * std::max(1.0, A.norm())) {
    throw PreconditionError("plus_cone_member: matrix is not in the symplectic Lie algebra");
  }
  const Matrix ja = symplectic_form(static_cast<int>(A.rows() / 2)) * A;
  return min_symmetric_eigenvalue(ja) > tol * std::max(1.0, ja.norm());
}

bool is_plus_curve(const std::vector<double>& s, const std::vector<Matrix>& path, double tol) {
  if (s.size() != path.size()) throw PreconditionError("is_plus_curve: sample count mismatch");
  if (s.size() < 3) throw PreconditionError("is_plus_curve: need at least 3 samples");
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    if (!(s[k + 1] > s[k])) throw PreconditionError("is_plus_curve: parameters must increase strictly");
  }
  for (const auto& p : path) {
    if (symplectic_defect(p) > 1e-8 * std::max(1.0, p.squaredNorm())) {
      throw PreconditionError("is_plus_curve: sample is not symplectic");
    }
  }
  const Matrix j = symplectic_form(static_cast<int>(path.front().rows() / 2));
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const Matrix dp = (path[k + 1] - path[k - 1]) / (s[k + 1] - s[k - 1]);
    const Matrix m = symmetrize(j * symplectic_inverse(path[k]) * dp);
    if (!(min_symmetric_eigenvalue(m) > tol * std::max(1.0, m.norm()))) return false;
  }
  return true;
}

CurvatureProfile apply_curvature_bump(const PerturbationFamily& family, double s) {
  if (s < 0.0) throw PreconditionError("curvature bump: s must be >= 0 (one-sided family)");
  if (s == 0.0) return family.base;
  const CurvatureProfile& base = family.base;
  family.bump.validate(base.period);
  CurvatureProfile out = base;
  const Bump bump = family.bump;
  const double L = base.period;
  const int d = base.dim;
  out.R = [R = base.R, bump, L, s, d](double t) {
    Matrix r = R(t);
    const double a = bump.value(t, L);
    if (a != 0.0) r += s * a * Matrix::Identity(d, d);
    return r;
  };
  if (base.curvature_bounds) {
    out.curvature_bounds = std::make_pair(base.curvature_bounds->first, base.curvature_bounds->second + s);
  }
  out.breakpoints = merged(base.breakpoints, bump.breakpoints(L), L);
  // Keep several steps inside the plateau so the bump is resolved.
  out.max_step = std::min(base.step_cap(), 0.25 * bump.eta);
  return out;
}

StarForm star_derivative(const CurvatureProfile& profile, const TauFunction& tau,
                         const std::vector<double>& tau_breakpoints) {
  CurvatureProfile p = profile;
  p.breakpoints = merged(p.breakpoints, tau_breakpoints, p.period);
  const FundamentalSolution sol(p, p.period);
  const int d = p.dim;
  const auto& ts = sol.step_times();
  Matrix form = Matrix::Zero(2 * d, 2 * d);
  double worst_tau = 0.0;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    auto integrand = [&](double t) {
      const Matrix tt = symmetrize(tau(t));
      Eigen::SelfAdjointEigenSolver<Matrix> es(tt, Eigen::EigenvaluesOnly);
      worst_tau = std::min(worst_tau, es.eigenvalues().minCoeff());
      const Matrix x = sol.at(t);
      const Matrix top = x.topRows(d);
      return Matrix(top.transpose() * tt * top);
    };
    // Vector-valued Gauss-Legendre: evaluate the rule by hand.
    using Rule = boost::math::quadrature::gauss<double, 7>;
    const double a = ts[k], b = ts[k + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const auto& abscissa = Rule::abscissa();
    const auto& weights = Rule::weights();
    // Odd rule: abscissa[0] is the centre node.
    form += half * weights[0] * integrand(mid);
    for (std::size_t i = 1; i < abscissa.size(); ++i) {
      form += half * weights[i] * (integrand(mid - half * abscissa[i]) + integrand(mid + half * abscissa[i]));
    }
  }
  if (worst_tau < -1e-12) throw PreconditionError("star_derivative: tau must be positive semidefinite");
  StarForm out;
  out.symmetry_defect = (form - form.transpose()).cwiseAbs().maxCoeff();
  out.form = symmetrize(form);
  Eigen::SelfAdjointEigenSolver<Matrix> es(out.form, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  return out;
}

double star_consistency_check(const PerturbationFamily& family, double ds) {
  if (!(ds > 1e-6 && ds < 1e-2)) throw PreconditionError("star_consistency_check: ds must lie in (1e-6, 1e-2)");
  const CurvatureProfile& base = family.base;
  const int d = base.dim;
  const Bump bump = family.bump;
  const double L = base.period;
  family.bump.validate(L);
  const TauFunction tau = [bump, L, d](double t) { return Matrix(bump.value(t, L) * Matrix::Identity(d, d)); };
  const StarForm star = star_derivative(base, tau, bump.breakpoints(L));

  // All three runs share breakpoints and step cap so their errors correlate.
  CurvatureProfile ref = apply_curvature_bump(family, 0.0);
  ref.breakpoints = merged(base.breakpoints, bump.breakpoints(L), L);
  ref.max_step = std::min(base.step_cap(), 0.25 * bump.eta);
  const Matrix x0 = FundamentalSolution(ref, L).final_state();
  const Matrix j = symplectic_form(d);
  auto difference = [&](double h) {
    const Matrix xh = FundamentalSolution(apply_curvature_bump(family, h), L).final_state();
    return Matrix(j * symplectic_inverse(x0) * (xh - x0) / h);
  };
  const Matrix fd = 2.0 * difference(0.5 * ds) - difference(ds);
  const double scale = star.form.norm();
  if (scale == 0.0) return fd.norm();
  return (fd - star.form).norm() / scale;
}

ScanResult index_monotonicity_scan(const PerturbationFamily& family, const std::vector<double>& s_grid,
                                   int periods, double tolerance) {
  if (s_grid.empty() || s_grid.front() != 0.0) throw PreconditionError("scan: grid must start at 0");
  for (std::size_t k = 0; k + 1 < s_grid.size(); ++k) {
    if (!(s_grid[k + 1] > s_grid[k])) throw PreconditionError("scan: grid must increase");
  }
  ScanResult out;
  out.tolerance = tolerance;
  bool all_converged = true;
  for (double s : s_grid) {
    const CurvatureProfile p = family.kind == FamilyKind::CurvatureBump
                                   ? apply_curvature_bump(family, s)
                                   : length_bump(family.base, family.bump, s);
    const FrequencyEstimate est = mean_frequency(p, periods);
    const PoincareData pd = poincare_map(p);
    out.points.push_back({s, est.mean_frequency, est.average_index, pd.unit_circle_flag, est.converged});
    all_converged = all_converged && est.converged;
  }
  out.index_arm = true;
  for (std::size_t k = 0; k + 1 < out.points.size(); ++k) {
    const bool ok = family.kind == FamilyKind::CurvatureBump
                        ? out.points[k + 1].alpha_bar >= out.points[k].alpha_bar - tolerance
                        : out.points[k + 1].average_index >= out.points[k].average_index - tolerance * family.base.period;
    out.index_arm = out.index_arm && ok;
  }
  out.hyperbolic_arm = out.points.size() > 1;
  for (const auto& pt : out.points) {
    if (pt.s > 0.0 && pt.unit_circle_flag) out.hyperbolic_arm = false;
  }
  if (out.hyperbolic_arm) {
    out.verdict = "hyperbolic-window";
  } else if (out.index_arm) {
    out.verdict = "index-increasing";
  } else {
    out.verdict = "inconclusive";
    out.violation = all_converged;
  }
  return out;
}

CurvatureProfile length_bump(const CurvatureProfile& profile, const Bump& bump, double s) {
  if (s < 0.0) throw PreconditionError("length bump: s must be >= 0");
  if (s == 0.0) return profile;
  const double L = profile.period;
  bump.validate(L);
  const double t0 = wrap(bump.center, L);
  CurvatureProfile out = profile;
  out.period = L + s;
  const Matrix frozen = profile.R(t0);
  out.R = [R = profile.R, t0, s, frozen](double t) {
    if (t < t0) return R(t);
    if (t < t0 + s) return frozen;
    return R(t - s);
  };
  std::vector<double> bps{t0, t0 + s};
  for (double b : profile.breakpoints) bps.push_back(b < t0 ? b : b + s);
  std::sort(bps.begin(), bps.end());
  out.breakpoints = bps;
  return out;
}

}  // namespace geofreq
