#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geofreq/linalg.hpp"

namespace geofreq {

/// Periodic curvature matrix along a closed geodesic, expressed in a parallel
/// orthonormal frame of the normal bundle.
///
/// `R` only has to be meaningful on [0, period); evaluation at other times
/// uses R(t + kL) = Q^k R(t) Q^{-k}.
struct CurvatureProfile {
  int dim = 1;
  double period = 1.0;
  std::function<Matrix(double)> R;
  Matrix holonomy;  // d x d orthogonal; identity when empty
  /// Cap on the integrator step; 0 means period / 32.
  double max_step = 0.0;
  /// Known bounds on the eigenvalues of R, used for grid sizing. Sampled when absent.
  std::optional<std::pair<double, double>> curvature_bounds;
  /// Points inside [0, period) where R is not smooth; integration steps land on them.
  std::vector<double> breakpoints;

  Matrix eval(double t) const;
  Matrix holonomy_or_identity() const;
  double step_cap() const;

  static CurvatureProfile constant(int dim, double k, double period);
  static CurvatureProfile from_matrix(const Matrix& r, double period);
  static CurvatureProfile scalar(std::function<double(double)> k, double period);
  /// Block-diagonal profile with independent scalar curvature per direction.
  static CurvatureProfile diagonal(std::vector<std::function<double(double)>> ks, double period);
};

/// Lower and upper bounds on the eigenvalues of R over one period: the stored
/// bounds when present, otherwise sampled on `samples` points.
std::pair<double, double> curvature_range(const CurvatureProfile& profile, int samples = 512);

struct IntegratorOptions {
  double atol = 1e-11;
  double rtol = 1e-11;
  double initial_step = 1e-3;
  /// Accepted plus rejected steps before IntegrationFailure.
  long max_steps = 2'000'000;
};

/// Solution of X' = A(t) X, A = [[0, I], [-R, 0]], X(0) = I, with dense
/// evaluation through the stored step starts.
class FundamentalSolution {
 public:
  FundamentalSolution(CurvatureProfile profile, double horizon, IntegratorOptions options = {});

  const CurvatureProfile& profile() const { return profile_; }
  double horizon() const { return horizon_; }
  int dim() const { return profile_.dim; }

  /// X(t) for t in [0, horizon].
  Matrix at(double t) const;
  Matrix final_state() const { return states_.back(); }

  const std::vector<double>& step_times() const { return times_; }
  const std::vector<Matrix>& step_states() const { return states_; }
  std::size_t rejected_steps() const { return rejected_; }

  /// max over stored states of |X^T J X - J|
  double max_symplectic_defect() const;

 private:
  CurvatureProfile profile_;
  double horizon_;
  std::vector<double> times_;
  std::vector<Matrix> states_;
  std::size_t rejected_ = 0;
};

FundamentalSolution integrate_fundamental(const CurvatureProfile& profile, double T,
                                          IntegratorOptions options = {});

/// One explicit Dormand-Prince step of size h from (t, x).
Matrix dopri_step(const CurvatureProfile& profile, double t, const Matrix& x, double h,
                  Matrix* error_estimate = nullptr);

struct ConjugateOptions {
  double root_tolerance = 1e-10;
  double multiplicity_threshold = 1e-7;
};

struct ConjugateReport {
  std::vector<double> times;
  std::vector<int> multiplicities;
  std::vector<std::string> warnings;
  double horizon = 0.0;
  double root_tolerance = 1e-10;
  double multiplicity_threshold = 1e-7;

  /// Conjugate points in (0, t], counted with multiplicity.
  long count(double t) const;
  long total() const;
};

/// Conjugate points of the geodesic start in (0, T]. Counting uses the
/// rotation of the Lagrangian plane spanned by the solutions with x(0) = 0,
/// so crossings of any multiplicity are seen, including those where det B
/// touches zero without changing sign.
ConjugateReport conjugate_points(const CurvatureProfile& profile, double T,
                                 ConjugateOptions options = {});
ConjugateReport conjugate_points(const FundamentalSolution& solution, double T,
                                 ConjugateOptions options = {});

/// Conjugate count on (0, t] for a single time, from the Lagrangian phase.
/// `lifted_phase` is a continuous lift of arg det(X22 + i X12) at t.
long lagrangian_count(const Matrix& x, double lifted_phase);

std::optional<double> first_conjugate_time(const CurvatureProfile& profile, double T);

struct PoincareData {
  Matrix P;
  std::vector<std::complex<double>> spectrum;
  bool unit_circle_flag = false;
  int nullity = 0;
  double tolerance = 1e-8;
  double symplectic_defect = 0.0;
};

/// Classification of a symplectic matrix. The unit-circle test inspects the
/// eigenvalues of P + P^{-1}, which stay simple for parabolic Jordan blocks.
PoincareData classify_symplectic(const Matrix& P, double tol = 1e-8);

/// P = Q^ X(L) with Q^ = blockdiag(Q, Q).
PoincareData poincare_map(const CurvatureProfile& profile, double tol = 1e-8);

struct TestFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::vector<double> breakpoints;
};

/// int_0^T (y' z' - K y z) dt for a scalar profile.
double index_form_value(const CurvatureProfile& profile, double T, const TestFunction& y,
                        const TestFunction& z, double rel_tol = 1e-9);

}  // namespace geofreq
