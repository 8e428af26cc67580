#pragma once

#include <functional>
#include <string>
#include <vector>

#include "geofreq/jacobi_engine.hpp"

namespace geofreq {

/// Smooth plateau bump on the circle of length `period`: 1 within eta of
/// `center`, 0 beyond 2*eta, quintic smoothstep in between (C^2).
struct Bump {
  double center = 0.0;
  double eta = 0.1;

  double value(double t, double period) const;
  /// Kinks of the transition, reduced to [0, period).
  std::vector<double> breakpoints(double period) const;
  void validate(double period) const;
};

enum class FamilyKind { CurvatureBump, LengthBump };

struct PerturbationFamily {
  CurvatureProfile base;
  Bump bump;
  FamilyKind kind = FamilyKind::CurvatureBump;
  std::vector<double> grid;
};

/// J A positive definite for A in sp(2d). Throws PreconditionError when A is
/// not in the Lie algebra.
bool plus_cone_member(const Matrix& A, double tol = 1e-10);

/// Finite-difference test of J P^{-1} dP/ds > 0 at every interior sample.
bool is_plus_curve(const std::vector<double>& s, const std::vector<Matrix>& path, double tol = 1e-10);

/// R_s(t) = R(t) + s a(t) I. Rejects s < 0.
CurvatureProfile apply_curvature_bump(const PerturbationFamily& family, double s);

struct StarForm {
  Matrix form;
  double min_eigenvalue = 0.0;
  double symmetry_defect = 0.0;
};

using TauFunction = std::function<Matrix(double)>;

/// int_0^L X^T blockdiag(tau, 0) X dt along the base solution, by composite
/// Gauss-Legendre over the integrator steps. Throws when tau is not PSD.
StarForm star_derivative(const CurvatureProfile& profile, const TauFunction& tau,
                         const std::vector<double>& tau_breakpoints = {});

/// Relative Frobenius error between the star integral for tau = a(t) I and a
/// Richardson-extrapolated one-sided difference J X0^{-1}(X_ds - X0)/ds at t = L.
double star_consistency_check(const PerturbationFamily& family, double ds);

struct ScanPoint {
  double s = 0.0;
  double alpha_bar = 0.0;
  double average_index = 0.0;
  bool unit_circle_flag = false;
  bool converged = false;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  bool index_arm = false;       // alpha_bar nondecreasing within tolerance
  bool hyperbolic_arm = false;  // no unit-circle eigenvalue for s > 0
  std::string verdict;          // index-increasing | hyperbolic-window | inconclusive
  bool violation = false;       // both arms false although every estimate converged
  double tolerance = 2e-3;
};

ScanResult index_monotonicity_scan(const PerturbationFamily& family, const std::vector<double>& s_grid,
                                   int periods, double tolerance = 2e-3);

/// Profile of period L + s: a stretch of length s is inserted at the bump
/// center, along which R is frozen at its value there. Holonomy is unchanged.
CurvatureProfile length_bump(const CurvatureProfile& profile, const Bump& bump, double s);

}  // namespace geofreq
