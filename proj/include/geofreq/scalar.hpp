#pragma once

#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace geofreq {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

enum class CoefficientKind { Integers, Rationals, ModP };

struct CoefficientSpec {
  CoefficientKind kind = CoefficientKind::Integers;
  long p = 0;

  static CoefficientSpec integers() { return {CoefficientKind::Integers, 0}; }
  static CoefficientSpec rationals() { return {CoefficientKind::Rationals, 0}; }
  /// Throws PreconditionError unless p is prime.
  static CoefficientSpec mod(long p);

  long characteristic() const { return kind == CoefficientKind::ModP ? p : 0; }
  bool two_invertible() const { return kind == CoefficientKind::Rationals || (kind == CoefficientKind::ModP && p != 2); }
  std::string name() const;
  bool operator==(const CoefficientSpec& o) const { return kind == o.kind && p == o.p; }
};

/// Polynomial in the indeterminate k with coefficients in the ring given by a
/// CoefficientSpec, always stored reduced (no zero terms, residues in [0, p)).
class Scalar {
 public:
  Scalar() = default;
  Scalar(CoefficientSpec spec, long value);
  Scalar(CoefficientSpec spec, const Rational& value);

  static Scalar k(CoefficientSpec spec);

  const CoefficientSpec& spec() const { return spec_; }
  const std::map<int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Degree in k, -1 for zero.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  Rational coefficient(int power) const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  bool operator==(const Scalar& o) const { return spec_ == o.spec_ && terms_ == o.terms_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Keep only the residues modulo m of every (integral) coefficient.
  Scalar reduced_mod(long m) const;
  std::string to_string() const;

 private:
  void add_term(int power, const Rational& c);
  void normalize();

  CoefficientSpec spec_;
  std::map<int, Rational> terms_;
};

}  // namespace geofreq
