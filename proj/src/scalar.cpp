#include "geofreq/scalar.hpp"

#include <sstream>

#include "geofreq/error.hpp"

namespace geofreq {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Rational residue(const Rational& c, long m) {
  if (denominator(c) != 1) throw PreconditionError("modular reduction of a non-integral coefficient");
  Integer r = numerator(c) % m;
  if (r < 0) r += m;
  return Rational(r);
}

}  // namespace

CoefficientSpec CoefficientSpec::mod(long p) {
  if (!is_prime(p)) throw PreconditionError("coefficients mod p need a prime p, got " + std::to_string(p));
  return {CoefficientKind::ModP, p};
}

std::string CoefficientSpec::name() const {
  switch (kind) {
    case CoefficientKind::Integers: return "Z";
    case CoefficientKind::Rationals: return "Q";
    default: return "Z/" + std::to_string(p);
  }
}

Scalar::Scalar(CoefficientSpec spec, long value) : spec_(spec) { add_term(0, Rational(value)); normalize(); }

Scalar::Scalar(CoefficientSpec spec, const Rational& value) : spec_(spec) {
  if (spec.kind != CoefficientKind::Rationals && denominator(value) != 1) {
    throw PreconditionError("non-integral scalar outside rational coefficients");
  }
  add_term(0, value);
  normalize();
}

Scalar Scalar::k(CoefficientSpec spec) {
  Scalar s;
  s.spec_ = spec;
  s.add_term(1, Rational(1));
  s.normalize();
  return s;
}

Rational Scalar::coefficient(int power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Scalar::add_term(int power, const Rational& c) {
  if (c == 0) return;
  terms_[power] += c;
}

void Scalar::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (spec_.kind == CoefficientKind::ModP) it->second = residue(it->second, spec_.p);
    it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (!(spec_ == o.spec_)) throw RingMismatch("scalars over different coefficient rings");
  Scalar out = *this;
  for (const auto& [p, c] : o.terms_) out.add_term(p, c);
  out.normalize();
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  for (auto& [p, c] : out.terms_) c = -c;
  out.normalize();
  return out;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (!(spec_ == o.spec_)) throw RingMismatch("scalars over different coefficient rings");
  Scalar out;
  out.spec_ = spec_;
  for (const auto& [p1, c1] : terms_) {
    for (const auto& [p2, c2] : o.terms_) out.add_term(p1 + p2, c1 * c2);
  }
  out.normalize();
  return out;
}

Scalar Scalar::reduced_mod(long m) const {
  Scalar out = *this;
  for (auto& [p, c] : out.terms_) c = residue(c, m);
  out.normalize();
  return out;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [p, c] = *it;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    const Rational a = c < 0 ? Rational(-c) : c;
    if (p == 0) {
      out << a;
    } else {
      if (a != 1) out << a << "*";
      out << "k";
      if (p > 1) out << "^" << p;
    }
  }
  return out.str();
}

}  // namespace geofreq
