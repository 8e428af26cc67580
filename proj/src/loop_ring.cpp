#include "geofreq/loop_ring.hpp"

#include <sstream>

#include "geofreq/error.hpp"

namespace geofreq {

namespace {

constexpr Monomial kE{0, 0, 0};
constexpr Monomial kA{1, 0, 0};
constexpr Monomial kW{0, 1, 0};
constexpr Monomial kX{0, 0, 1};  // U or Theta

bool odd(long v) { return (v % 2) != 0; }

void require_same(const RingSpec& a, const RingSpec& b) {
  if (!(a == b)) throw RingMismatch("elements belong to different loop-homology rings");
}

bool is_generator(const Monomial& x) { return x == kA || x == kW || x == kX; }

// First generator factor g and the rest r with g . r = x.
std::pair<Monomial, Monomial> split_first(const Monomial& x) {
  if (x.a) return {kA, {0, x.w, x.m}};
  if (x.w) return {kW, {0, 0, x.m}};
  return {kX, {0, 0, x.m - 1}};
}

RingElement generator_delta(const RingSpec& ring, const Monomial& g) {
  if (ring.kind == RingKind::EvenIntegral && g == kW) return RingElement::E(ring);
  return RingElement::zero(ring);
}

// Bracket table on ordered generator pairs; nullopt when the pair is only
// reachable through antisymmetry.
std::optional<RingElement> generator_bracket(const RingSpec& ring, const Monomial& g, const Monomial& h) {
  if (ring.kind == RingKind::UPresentation) {
    if (g == kA && h == kX) return -RingElement::E(ring);
    if (g == kX && h == kA) return std::nullopt;
    return RingElement::zero(ring);
  }
  if (g == kW && h == kX) return RingElement::Theta(ring) * (-Scalar::k(ring.coeffs));
  if (g == kA && h == kW) return -RingElement::A(ring);
  if ((g == kX && h == kW) || (g == kW && h == kA)) return std::nullopt;
  return RingElement::zero(ring);
}

RingElement bracket_monomials(const RingSpec& ring, const Monomial& x, const Monomial& y);

// Memo for the recursions; both only ever recurse into smaller monomials.
struct MemoKey {
  int n;
  CoefficientKind coeffs;
  long p;
  RingKind kind;
  Monomial x, y;
  auto operator<=>(const MemoKey&) const = default;
};

MemoKey memo_key(const RingSpec& ring, const Monomial& x, const Monomial& y) {
  return {ring.n, ring.coeffs.kind, ring.coeffs.p, ring.kind, x, y};
}

thread_local std::map<MemoKey, RingElement> bracket_memo;
thread_local std::map<MemoKey, RingElement> delta_memo;

RingElement bracket_uncached(const RingSpec& ring, const Monomial& x, const Monomial& y);
RingElement delta_recursive_uncached(const RingSpec& ring, const Monomial& x);

RingElement antisymmetric(const RingSpec& ring, const Monomial& x, const Monomial& y) {
  // {x, y} = -(-1)^{(|x|+1)(|y|+1)} {y, x}
  const bool flip = odd(shifted_degree(ring, x) + 1) && odd(shifted_degree(ring, y) + 1);
  const RingElement swapped = bracket_monomials(ring, y, x);
  return flip ? swapped : -swapped;
}

RingElement bracket_monomials(const RingSpec& ring, const Monomial& x, const Monomial& y) {
  const MemoKey key = memo_key(ring, x, y);
  if (auto it = bracket_memo.find(key); it != bracket_memo.end()) return it->second;
  RingElement out = bracket_uncached(ring, x, y);
  bracket_memo.emplace(key, out);
  return out;
}

RingElement bracket_uncached(const RingSpec& ring, const Monomial& x, const Monomial& y) {
  if (x == kE || y == kE) return RingElement::zero(ring);
  if (is_generator(y)) {
    if (is_generator(x)) {
      if (auto b = generator_bracket(ring, x, y)) return *b;
    }
    return antisymmetric(ring, x, y);
  }
  // {x, g . r} = {x, g} . r + (-1)^{|g|(|x|+1)} g . {x, r}
  const auto [g, r] = split_first(y);
  const RingElement gr = RingElement::basis(ring, r);
  const RingElement ge = RingElement::basis(ring, g);
  RingElement out = product(bracket_monomials(ring, x, g), gr);
  RingElement second = product(ge, bracket_monomials(ring, x, r));
  if (odd(shifted_degree(ring, g)) && odd(shifted_degree(ring, x) + 1)) second = -second;
  return out + second;
}

RingElement delta_recursive_monomial(const RingSpec& ring, const Monomial& x) {
  const MemoKey key = memo_key(ring, x, kE);
  if (auto it = delta_memo.find(key); it != delta_memo.end()) return it->second;
  RingElement out = delta_recursive_uncached(ring, x);
  delta_memo.emplace(key, out);
  return out;
}

RingElement delta_recursive_uncached(const RingSpec& ring, const Monomial& x) {
  if (x == kE) return RingElement::zero(ring);
  if (is_generator(x)) return generator_delta(ring, x);
  const auto [g, r] = split_first(x);
  const RingElement ge = RingElement::basis(ring, g);
  const RingElement re = RingElement::basis(ring, r);
  RingElement tail = product(ge, delta_recursive_monomial(ring, r)) + bracket_monomials(ring, g, r);
  if (odd(shifted_degree(ring, g))) tail = -tail;
  return product(generator_delta(ring, g), re) + tail;
}

}  // namespace

RingSpec RingSpec::sphere(int n, CoefficientSpec coeffs) {
  if (n < 3) throw PreconditionError("loop ring: n must be >= 3");
  RingSpec out;
  out.n = n;
  out.coeffs = coeffs;
  const bool mod2 = coeffs.kind == CoefficientKind::ModP && coeffs.p == 2;
  out.kind = (n % 2 == 1 || mod2) ? RingKind::UPresentation : RingKind::EvenIntegral;
  return out;
}

long degree(const RingSpec& ring, const Monomial& x) {
  const long n = ring.n;
  if (ring.kind == RingKind::UPresentation) {
    return x.a ? x.m * (n - 1) : n + x.m * (n - 1);
  }
  if (x.a) return 2 * x.m * (n - 1);
  if (x.w) return (2 * x.m + 1) * (n - 1);
  return n + 2 * x.m * (n - 1);
}

std::string label(const RingSpec& ring, const Monomial& x) {
  const std::string gen = ring.kind == RingKind::UPresentation ? "U" : "Theta";
  std::string out;
  auto append = [&out](const std::string& s) {
    if (!out.empty()) out += "*";
    out += s;
  };
  if (x.a) append("A");
  if (x.w) append("W");
  if (x.m == 1) append(gen);
  if (x.m > 1) append(gen + "^" + std::to_string(x.m));
  return out.empty() ? "E" : out;
}

bool is_torsion(const RingSpec& ring, const Monomial& x) {
  return ring.kind == RingKind::EvenIntegral && x.a == 1 && x.m >= 1;
}

bool is_basis(const RingSpec& ring, const Monomial& x) {
  if (x.a < 0 || x.a > 1 || x.w < 0 || x.w > 1 || x.m < 0) return false;
  if (ring.kind == RingKind::UPresentation) return x.w == 0;
  if (x.a && x.w) return false;
  return !(is_torsion(ring, x) && ring.coeffs.two_invertible());
}

std::optional<Monomial> monomial_product(const RingSpec& ring, const Monomial& x, const Monomial& y) {
  const Monomial z{x.a + y.a, x.w + y.w, x.m + y.m};
  if (!is_basis(ring, z)) return std::nullopt;
  return z;
}

RingElement RingElement::basis(const RingSpec& ring, const Monomial& x) {
  return basis(ring, x, Scalar(ring.coeffs, 1L));
}

RingElement RingElement::basis(const RingSpec& ring, const Monomial& x, const Scalar& c) {
  RingElement out(ring);
  if (is_basis(ring, x)) out.add(x, c);
  return out;
}

RingElement RingElement::U(const RingSpec& ring) {
  if (ring.kind != RingKind::UPresentation) throw RingMismatch("U exists only in the U presentation");
  return basis(ring, kX);
}

RingElement RingElement::W(const RingSpec& ring) {
  if (ring.kind != RingKind::EvenIntegral) throw RingMismatch("W exists only in the even integral presentation");
  return basis(ring, kW);
}

RingElement RingElement::Theta(const RingSpec& ring) {
  if (ring.kind != RingKind::EvenIntegral) throw RingMismatch("Theta exists only in the even integral presentation");
  return basis(ring, kX);
}

void RingElement::add(const Monomial& x, const Scalar& c) {
  if (!(c.spec() == ring_.coeffs)) throw RingMismatch("scalar over the wrong coefficient ring");
  if (!is_basis(ring_, x)) return;
  auto it = terms_.find(x);
  Scalar sum = it == terms_.end() ? c : it->second + c;
  // 2 A Theta^m = 0: over Z the coefficient lives in Z/2.
  if (is_torsion(ring_, x)) sum = sum.reduced_mod(2);
  if (sum.is_zero()) {
    if (it != terms_.end()) terms_.erase(it);
  } else {
    terms_[x] = sum;
  }
}

Scalar RingElement::coefficient(const Monomial& x) const {
  auto it = terms_.find(x);
  return it == terms_.end() ? Scalar(ring_.coeffs, 0L) : it->second;
}

std::optional<long> RingElement::homogeneous_degree() const {
  std::optional<long> out;
  for (const auto& [x, c] : terms_) {
    const long d = degree(ring_, x);
    if (out && *out != d) return std::nullopt;
    out = d;
  }
  return out;
}

RingElement RingElement::operator+(const RingElement& o) const {
  require_same(ring_, o.ring_);
  RingElement out = *this;
  for (const auto& [x, c] : o.terms_) out.add(x, c);
  return out;
}

RingElement RingElement::operator-() const { return *this * Scalar(ring_.coeffs, -1L); }

RingElement RingElement::operator-(const RingElement& o) const { return *this + (-o); }

RingElement RingElement::operator*(const Scalar& c) const {
  RingElement out(ring_);
  for (const auto& [x, v] : terms_) out.add(x, v * c);
  return out;
}

RingElement RingElement::operator*(long c) const { return *this * Scalar(ring_.coeffs, c); }

RingElement RingElement::free_part() const {
  RingElement out(ring_);
  for (const auto& [x, c] : terms_) {
    if (!is_torsion(ring_, x)) out.add(x, c);
  }
  return out;
}

std::string RingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) out << " + ";
    first = false;
    const std::string c = it->second.to_string();
    const bool compound = c.find_first_of(" ") != std::string::npos;
    if (c == "-1") {
      out << "-";
    } else if (c != "1") {
      out << (compound ? "(" + c + ")" : c) << "*";
    }
    out << label(ring_, it->first);
  }
  return out.str();
}

RingElement product(const RingElement& x, const RingElement& y) {
  require_same(x.ring(), y.ring());
  RingElement out(x.ring());
  for (const auto& [mx, cx] : x.terms()) {
    for (const auto& [my, cy] : y.terms()) {
      if (auto z = monomial_product(x.ring(), mx, my)) out = out + RingElement::basis(x.ring(), *z, cx * cy);
    }
  }
  return out;
}

RingElement power(const RingElement& x, int m) {
  if (m < 0) throw PreconditionError("power: negative exponent");
  RingElement out = RingElement::E(x.ring());
  for (int i = 0; i < m; ++i) out = product(out, x);
  return out;
}

RingElement delta(const RingElement& x) {
  const RingSpec& ring = x.ring();
  RingElement out(ring);
  for (const auto& [mono, c] : x.terms()) {
    if (ring.kind == RingKind::UPresentation) {
      if (mono.a && mono.m >= 1) out = out + RingElement::basis(ring, {0, 0, mono.m - 1}, c * Scalar(ring.coeffs, static_cast<long>(mono.m)));
    } else if (mono.w) {
      const Scalar factor = Scalar::k(ring.coeffs) * Scalar(ring.coeffs, static_cast<long>(mono.m)) + Scalar(ring.coeffs, 1L);
      out = out + RingElement::basis(ring, {0, 0, mono.m}, c * factor);
    }
  }
  return out;
}

RingElement delta_recursive(const RingElement& x) {
  RingElement out(x.ring());
  for (const auto& [mono, c] : x.terms()) out = out + delta_recursive_monomial(x.ring(), mono) * c;
  return out;
}

RingElement bracket(const RingElement& x, const RingElement& y) {
  require_same(x.ring(), y.ring());
  RingElement out(x.ring());
  for (const auto& [mx, cx] : x.terms()) {
    for (const auto& [my, cy] : y.terms()) out = out + bracket_monomials(x.ring(), mx, my) * (cx * cy);
  }
  return out;
}

RingElement bv_defect(const RingElement& x, const RingElement& y) {
  require_same(x.ring(), y.ring());
  const auto dx = x.homogeneous_degree();
  if (!dx) return RingElement::zero(x.ring());
  RingElement rhs = product(x, delta(y)) + bracket(x, y);
  if (odd(*dx - x.ring().n)) rhs = -rhs;
  rhs = rhs + product(delta(x), y);
  return delta(product(x, y)) - rhs;
}

}  // namespace geofreq
