#include "geofreq/jacobi_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "geofreq/error.hpp"

namespace geofreq {

namespace {

constexpr double kPi = std::numbers::pi;

using CMatrix = Eigen::MatrixXcd;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

Matrix rhs(const CurvatureProfile& p, double t, const Matrix& x) {
  const int d = p.dim;
  Matrix out(2 * d, 2 * d);
  out.topRows(d) = x.bottomRows(d);
  out.bottomRows(d) = -p.eval(t) * x.topRows(d);
  return out;
}

Matrix matrix_power(const Matrix& q, long k) {
  Matrix out = Matrix::Identity(q.rows(), q.cols());
  Matrix base = k >= 0 ? q : Matrix(q.transpose());
  for (long e = std::labs(k); e > 0; e >>= 1) {
    if (e & 1) out = out * base;
    base = base * base;
  }
  return out;
}

}  // namespace

Matrix CurvatureProfile::eval(double t) const {
  if (holonomy.size() == 0) return R(t - std::floor(t / period) * period);
  const long k = static_cast<long>(std::floor(t / period));
  const double r = t - static_cast<double>(k) * period;
  if (k == 0) return R(r);
  const Matrix qk = matrix_power(holonomy, k);
  return qk * R(r) * qk.transpose();
}

Matrix CurvatureProfile::holonomy_or_identity() const {
  if (holonomy.size() == 0) return Matrix::Identity(dim, dim);
  return holonomy;
}

double CurvatureProfile::step_cap() const { return max_step > 0.0 ? max_step : period / 32.0; }

CurvatureProfile CurvatureProfile::constant(int dim, double k, double period) {
  return from_matrix(k * Matrix::Identity(dim, dim), period);
}

CurvatureProfile CurvatureProfile::from_matrix(const Matrix& r, double period) {
  if (r.rows() != r.cols() || r.rows() < 1) throw PreconditionError("curvature matrix must be square");
  if (!(period > 0.0)) throw PreconditionError("profile period must be positive");
  CurvatureProfile p;
  p.dim = static_cast<int>(r.rows());
  p.period = period;
  const Matrix sym = symmetrize(r);
  p.R = [sym](double) { return sym; };
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  p.curvature_bounds = std::make_pair(es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff());
  return p;
}

CurvatureProfile CurvatureProfile::scalar(std::function<double(double)> k, double period) {
  if (!(period > 0.0)) throw PreconditionError("profile period must be positive");
  CurvatureProfile p;
  p.dim = 1;
  p.period = period;
  p.R = [k = std::move(k)](double t) {
    Matrix m(1, 1);
    m(0, 0) = k(t);
    return m;
  };
  return p;
}

CurvatureProfile CurvatureProfile::diagonal(std::vector<std::function<double(double)>> ks, double period) {
  if (ks.empty()) throw PreconditionError("diagonal profile needs at least one direction");
  if (!(period > 0.0)) throw PreconditionError("profile period must be positive");
  CurvatureProfile p;
  p.dim = static_cast<int>(ks.size());
  p.period = period;
  p.R = [ks = std::move(ks)](double t) {
    const auto d = static_cast<Eigen::Index>(ks.size());
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) m(i, i) = ks[static_cast<std::size_t>(i)](t);
    return m;
  };
  return p;
}

std::pair<double, double> curvature_range(const CurvatureProfile& profile, int samples) {
  if (profile.curvature_bounds) return *profile.curvature_bounds;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < samples; ++i) {
    const double t = profile.period * (i + 0.5) / samples;
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(profile.R(t)), Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues().minCoeff());
    hi = std::max(hi, es.eigenvalues().maxCoeff());
  }
  return {lo, hi};
}

Matrix dopri_step(const CurvatureProfile& p, double t, const Matrix& x, double h, Matrix* err) {
  const Matrix k1 = rhs(p, t, x);
  const Matrix k2 = rhs(p, t + c2 * h, x + h * (a21 * k1));
  const Matrix k3 = rhs(p, t + c3 * h, x + h * (a31 * k1 + a32 * k2));
  const Matrix k4 = rhs(p, t + c4 * h, x + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const Matrix k5 = rhs(p, t + c5 * h, x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const Matrix k6 = rhs(p, t + h, x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  Matrix next = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  if (err) {
    const Matrix k7 = rhs(p, t + h, next);
    *err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  }
  return next;
}

FundamentalSolution::FundamentalSolution(CurvatureProfile profile, double horizon, IntegratorOptions opt)
    : profile_(std::move(profile)), horizon_(horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw PreconditionError("integration horizon must be positive");
  if (!profile_.R) throw PreconditionError("curvature profile has no R");
  const int d = profile_.dim;
  const double cap = profile_.step_cap();

  // Breakpoints of every period touched, so no step straddles a kink of R.
  std::vector<double> stops;
  if (!profile_.breakpoints.empty()) {
    const long periods = static_cast<long>(std::ceil(horizon / profile_.period));
    for (long k = 0; k <= periods; ++k) {
      for (double b : profile_.breakpoints) {
        const double s = static_cast<double>(k) * profile_.period + b;
        if (s > 0.0 && s < horizon) stops.push_back(s);
      }
    }
    std::sort(stops.begin(), stops.end());
  }
  stops.push_back(horizon);
  std::size_t next_stop = 0;

  double t = 0.0;
  Matrix x = Matrix::Identity(2 * d, 2 * d);
  times_.push_back(t);
  states_.push_back(x);
  double h = std::min(opt.initial_step, cap);
  Matrix err;
  while (t < horizon) {
    while (stops[next_stop] <= t) ++next_stop;
    const double stop = stops[next_stop];
    bool clipped = false;
    if (t + 1.01 * h >= stop) {
      h = stop - t;
      clipped = true;
    }
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      std::ostringstream msg;
      msg << "step size underflow at t=" << t << " (h=" << h << ")";
      throw IntegrationFailure(msg.str());
    }
    if (static_cast<long>(times_.size() + rejected_) > opt.max_steps) {
      std::ostringstream msg;
      msg << "step budget exhausted at t=" << t << " (h=" << h << ")";
      throw IntegrationFailure(msg.str());
    }
    const Matrix next = dopri_step(profile_, t, x, h, &err);
    double norm = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
      const double scale = opt.atol + opt.rtol * std::max(std::abs(x.data()[i]), std::abs(next.data()[i]));
      norm = std::max(norm, std::abs(err.data()[i]) / scale);
    }
    if (!std::isfinite(norm)) {
      ++rejected_;
      h *= 0.2;
      continue;
    }
    if (norm <= 1.0) {
      if (!next.allFinite() || next.cwiseAbs().maxCoeff() > 1e150) {
        std::ostringstream msg;
        msg << "solution overflow at t=" << t + h;
        throw IntegrationFailure(msg.str());
      }
      t = clipped ? stop : t + h;
      x = next;
      times_.push_back(t);
      states_.push_back(x);
      const double grow = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
      h = std::min(h * grow, cap);
    } else {
      ++rejected_;
      h *= std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 1.0);
    }
  }
}

Matrix FundamentalSolution::at(double t) const {
  if (t < 0.0 || t > horizon_ * (1.0 + 1e-14) + 1e-300) {
    std::ostringstream msg;
    msg << "dense evaluation at t=" << t << " outside [0," << horizon_ << "]";
    throw PreconditionError(msg.str());
  }
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t k = static_cast<std::size_t>(std::distance(times_.begin(), it));
  k = k == 0 ? 0 : k - 1;
  if (k >= times_.size() - 1) k = times_.size() - 1;
  const double h = t - times_[k];
  if (h == 0.0) return states_[k];
  return dopri_step(profile_, times_[k], states_[k], h);
}

double FundamentalSolution::max_symplectic_defect() const {
  double worst = 0.0;
  for (const auto& x : states_) worst = std::max(worst, symplectic_defect(x));
  return worst;
}

FundamentalSolution integrate_fundamental(const CurvatureProfile& profile, double T, IntegratorOptions options) {
  return FundamentalSolution(profile, T, options);
}

long ConjugateReport::count(double t) const {
  long n = 0;
  for (std::size_t i = 0; i < times.size() && times[i] <= t; ++i) n += multiplicities[i];
  return n;
}

long ConjugateReport::total() const { return count(std::numeric_limits<double>::infinity()); }

namespace {

CMatrix lagrangian_z(const Matrix& x) {
  const Eigen::Index d = x.rows() / 2;
  const Matrix pos = x.topRightCorner(d, d);
  const Matrix vel = x.bottomRightCorner(d, d);
  CMatrix z(d, d);
  z.real() = vel;
  z.imag() = pos;
  return z;
}

double raw_phase(const Matrix& x) { return std::arg(lagrangian_z(x).determinant()); }

int small_singular_values(const Matrix& x, double threshold) {
  const Eigen::Index d = x.rows() / 2;
  Eigen::JacobiSVD<Matrix> svd(x.topRightCorner(d, d));
  const double scale = threshold * std::max(1.0, x.norm());
  int count = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) < scale) ++count;
  }
  return count;
}

}  // namespace

long lagrangian_count(const Matrix& x, double lifted_phase) {
  const CMatrix z = lagrangian_z(x);
  const CMatrix u = z * z.conjugate().inverse();
  Eigen::ComplexEigenSolver<CMatrix> es(u, false);
  double half_angles = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double phi = std::arg(es.eigenvalues()(i));
    if (phi <= 0.0) phi += 2.0 * kPi;
    half_angles += 0.5 * phi;
  }
  return std::lround((lifted_phase - half_angles) / kPi);
}

ConjugateReport conjugate_points(const CurvatureProfile& profile, double T, ConjugateOptions options) {
  if (!(T > 0.0)) throw PreconditionError("conjugate_points: T must be positive");
  const double snap = 1e-9 * std::max(1.0, T);
  FundamentalSolution sol(profile, T + 2.0 * snap);
  return conjugate_points(sol, T, options);
}

ConjugateReport conjugate_points(const FundamentalSolution& sol, double T, ConjugateOptions options) {
  if (!(T > 0.0)) throw PreconditionError("conjugate_points: T must be positive");
  const double snap = 1e-9 * std::max(1.0, T);
  const double end = std::min(T + snap, sol.horizon());
  const CurvatureProfile& profile = sol.profile();
  const int d = profile.dim;

  ConjugateReport report;
  report.horizon = T;
  report.root_tolerance = options.root_tolerance;
  report.multiplicity_threshold = options.multiplicity_threshold;

  const auto [kmin, kmax] = curvature_range(profile);
  const double kscale = std::max({1.0, std::abs(kmin), std::abs(kmax)});
  double h = kPi / (8.0 * d * kscale);
  if (kmax > 0.0) h = std::min(h, kPi / (64.0 * std::sqrt(kmax)));
  h = std::min(h, profile.period / 8.0);

  struct Sample {
    double t;
    double phase;
    long count;
  };

  // Cells are refined by bisection on the phase-based count; the lifted phase
  // at an interior point is obtained by unwrapping from the left endpoint.
  auto evaluate = [&](const Sample& from, double t) {
    const Matrix x = sol.at(t);
    const double raw = raw_phase(x);
    double delta = raw - std::remainder(from.phase, 2.0 * kPi);
    delta -= 2.0 * kPi * std::round(delta / (2.0 * kPi));
    const double phase = from.phase + delta;
    return Sample{t, phase, lagrangian_count(x, phase)};
  };

  Sample prev{0.0, 0.0, 0};
  double t = 0.0;
  while (t < end) {
    double step = std::min(h, end - t);
    Sample cur = evaluate(prev, t + step);
    // The lift is only trustworthy when the raw phase moved less than pi/2.
    while (std::abs(cur.phase - prev.phase) > 0.5 * kPi && step > 1e-6 * h) {
      step *= 0.5;
      cur = evaluate(prev, t + step);
    }
    if (prev.t == 0.0) cur.count = std::max(cur.count, 0L);
    if (cur.count < prev.count) {
      report.warnings.push_back("conjugate count decreased near t=" + std::to_string(cur.t) +
                                "; resolution too coarse");
      cur.count = prev.count;
    }
    Sample left = prev;
    while (left.count < cur.count) {
      // Smallest time in (left.t, cur.t] where the count exceeds left.count.
      Sample lo = left, hi = cur;
      while (hi.t - lo.t > options.root_tolerance) {
        const Sample mid = evaluate(lo, 0.5 * (lo.t + hi.t));
        if (mid.count > left.count) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      const int jump = static_cast<int>(hi.count - left.count);
      const double root = 0.5 * (lo.t + hi.t);
      const int svd_mult = small_singular_values(sol.at(root), options.multiplicity_threshold);
      if (jump > svd_mult || jump > d) {
        std::ostringstream msg;
        msg << "roots closer than resolution merged near t=" << root << " (multiplicity " << jump
            << ", rank defect " << svd_mult << ")";
        report.warnings.push_back(msg.str());
      }
      if (root <= T + snap) {
        // Coincident crossings in different directions are resolved separately
        // up to integration error; fold them into one point.
        if (!report.times.empty() && root - report.times.back() <= snap &&
            report.multiplicities.back() + jump <= d) {
          report.multiplicities.back() += jump;
        } else {
          report.times.push_back(std::min(root, T));
          report.multiplicities.push_back(jump);
        }
      }
      left = hi;
    }
    prev = cur;
    t = cur.t;
  }
  return report;
}

std::optional<double> first_conjugate_time(const CurvatureProfile& profile, double T) {
  const ConjugateReport r = conjugate_points(profile, T);
  if (r.times.empty()) return std::nullopt;
  return r.times.front();
}

PoincareData classify_symplectic(const Matrix& P, double tol) {
  PoincareData out;
  out.P = P;
  out.tolerance = tol;
  out.symplectic_defect = symplectic_defect(P);
  Eigen::EigenSolver<Matrix> es(P, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const auto lambda = es.eigenvalues()(i);
    out.spectrum.push_back(lambda);
    if (std::abs(std::abs(lambda) - 1.0) <= tol) out.unit_circle_flag = true;
  }
  // lambda + 1/lambda is real in [-2, 2] exactly when lambda is on the circle.
  const Matrix sum = P + symplectic_inverse(P);
  Eigen::EigenSolver<Matrix> ss(sum, false);
  for (Eigen::Index i = 0; i < ss.eigenvalues().size(); ++i) {
    const auto mu = ss.eigenvalues()(i);
    if (std::abs(mu.imag()) <= tol && std::abs(mu.real()) <= 2.0 + tol) out.unit_circle_flag = true;
  }
  const Matrix shifted = P - Matrix::Identity(P.rows(), P.cols());
  Eigen::JacobiSVD<Matrix> svd(shifted);
  const double scale = tol * std::max(1.0, P.norm());
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) < scale) ++out.nullity;
  }
  return out;
}

PoincareData poincare_map(const CurvatureProfile& profile, double tol) {
  const FundamentalSolution sol(profile, profile.period);
  const int d = profile.dim;
  Matrix qhat = Matrix::Zero(2 * d, 2 * d);
  const Matrix q = profile.holonomy_or_identity();
  qhat.topLeftCorner(d, d) = q;
  qhat.bottomRightCorner(d, d) = q;
  return classify_symplectic(qhat * sol.final_state(), tol);
}

double index_form_value(const CurvatureProfile& profile, double T, const TestFunction& y,
                        const TestFunction& z, double rel_tol) {
  if (profile.dim != 1) throw PreconditionError("index_form_value: scalar profile required");
  if (!(T > 0.0)) throw PreconditionError("index_form_value: T must be positive");
  constexpr double bc_tol = 1e-10;
  if (std::abs(y.value(0.0)) > bc_tol || std::abs(y.value(T)) > bc_tol ||
      std::abs(z.value(0.0)) > bc_tol || std::abs(z.value(T)) > bc_tol) {
    throw PreconditionError("index_form_value: test functions must vanish at 0 and T");
  }
  std::vector<double> knots{0.0, T};
  for (const auto* f : {&y, &z}) {
    for (double b : f->breakpoints) {
      if (b > 0.0 && b < T) knots.push_back(b);
    }
  }
  for (double b : profile.breakpoints) {
    for (double s = b; s < T; s += profile.period) {
      if (s > 0.0) knots.push_back(s);
    }
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  auto integrand = [&](double t) {
    const double k = profile.eval(t)(0, 0);
    return y.derivative(t) * z.derivative(t) - k * y.value(t) * z.value(t);
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, knots[i], knots[i + 1],
                                                                           15, rel_tol, &err);
  }
  return total;
}

}  // namespace geofreq
