#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>

#include "geofreq/scalar.hpp"

namespace geofreq {

/// Which presentation of H_*(Lambda S^n) is in use.
///  - UPresentation: n odd (any coefficients) or n even with Z/2. Basis
///    A^e U^m, A^2 = 0.
///  - EvenIntegral: n even over Z, Q or Z/p with p odd. Basis A^e W^d Theta^m
///    with A^2 = AW = W^2 = 0 and 2 A Theta^m = 0 for m >= 1.
enum class RingKind { UPresentation, EvenIntegral };

struct RingSpec {
  int n = 3;
  CoefficientSpec coeffs;
  RingKind kind = RingKind::UPresentation;

  /// Picks the presentation from n and the coefficients. Requires n >= 3.
  static RingSpec sphere(int n, CoefficientSpec coeffs);
  bool operator==(const RingSpec& o) const { return n == o.n && coeffs == o.coeffs && kind == o.kind; }
};

/// A^a W^w X^m where X is U or Theta depending on the presentation.
struct Monomial {
  int a = 0;
  int w = 0;
  int m = 0;
  auto operator<=>(const Monomial&) const = default;
};

long degree(const RingSpec& ring, const Monomial& x);
/// |X| = deg X - n, the grading used in the sign rules.
inline long shifted_degree(const RingSpec& ring, const Monomial& x) { return degree(ring, x) - ring.n; }
std::string label(const RingSpec& ring, const Monomial& x);
/// A Theta^m (m >= 1) in the even integral presentation.
bool is_torsion(const RingSpec& ring, const Monomial& x);
/// True when the monomial is a valid basis element (normal form, nonzero class).
bool is_basis(const RingSpec& ring, const Monomial& x);

/// Product of two basis monomials: the normal-form monomial, or nullopt when
/// a relation kills it. Coefficient is always 1 (the presentations are sign-free).
std::optional<Monomial> monomial_product(const RingSpec& ring, const Monomial& x, const Monomial& y);

class RingElement {
 public:
  explicit RingElement(RingSpec ring) : ring_(ring) {}

  static RingElement zero(const RingSpec& ring) { return RingElement(ring); }
  static RingElement basis(const RingSpec& ring, const Monomial& x);
  static RingElement basis(const RingSpec& ring, const Monomial& x, const Scalar& c);
  static RingElement E(const RingSpec& ring) { return basis(ring, {0, 0, 0}); }
  static RingElement A(const RingSpec& ring) { return basis(ring, {1, 0, 0}); }
  /// U in the U presentation.
  static RingElement U(const RingSpec& ring);
  /// W and Theta in the even integral presentation.
  static RingElement W(const RingSpec& ring);
  static RingElement Theta(const RingSpec& ring);

  const RingSpec& ring() const { return ring_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Monomial& x) const;
  /// Common degree of all terms; nullopt for zero or inhomogeneous elements.
  std::optional<long> homogeneous_degree() const;

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator-() const;
  RingElement operator*(const Scalar& c) const;
  RingElement operator*(long c) const;
  bool operator==(const RingElement& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }
  bool operator!=(const RingElement& o) const { return !(*this == o); }

  /// Drops the 2-torsion summand (terms A Theta^m, m >= 1).
  RingElement free_part() const;
  std::string to_string() const;

 private:
  void add(const Monomial& x, const Scalar& c);

  RingSpec ring_;
  std::map<Monomial, Scalar> terms_;
};

RingElement product(const RingElement& x, const RingElement& y);
RingElement power(const RingElement& x, int m);

/// Closed forms: Delta(A U^m) = m U^{m-1}, Delta(W Theta^m) = (mk+1) Theta^m,
/// and zero on every other basis monomial.
RingElement delta(const RingElement& x);

/// Delta from its values on generators, the generator brackets, and
///   Delta(X.Y) = Delta X . Y + (-1)^|X| X . Delta Y + (-1)^|X| {X, Y}
/// applied to X = first generator factor of each monomial.
RingElement delta_recursive(const RingElement& x);

/// Bracket from the generator table ({A,U} = -E; {W,Theta} = -k Theta,
/// {A,W} = -A) extended by the Leibniz rule in the right argument and graded
/// antisymmetry {X,Y} = -(-1)^{(|X|+1)(|Y|+1)} {Y,X}.
RingElement bracket(const RingElement& x, const RingElement& y);

/// Delta(X.Y) minus the right-hand side of the compatibility identity.
RingElement bv_defect(const RingElement& x, const RingElement& y);

}  // namespace geofreq
