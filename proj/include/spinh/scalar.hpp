#pragma once
// Elements a + b*eps of the quadratic extension Q(eps), eps^2 = -1/r.
// Every scalar carries its ring context r; scalars from different contexts
// never mix (no coercion).  A bare additive zero (r == 0) is the only
// context-free value and may combine with anything.

#include "spinh/rational.hpp"

namespace spinh {

class ExactScalar {
 public:
  ExactScalar() = default;  // exact zero, context-free
  ExactScalar(Rat rat, int r);
  ExactScalar(Rat rat, Rat eps, int r);
  static ExactScalar epsilon(int r) { return ExactScalar(Rat(0), Rat(1), r); }

  const Rat& rat_part() const { return rat_; }
  const Rat& eps_part() const { return eps_; }
  int ring_r() const { return r_; }  // 0 only for the bare zero

  bool is_zero() const { return rat_ == 0 && eps_ == 0; }
  bool is_rational() const { return eps_ == 0; }

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.rat_ == b.rat_ && a.eps_ == b.eps_ && (a.r_ == b.r_ || a.is_zero());
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  // Multiplicative inverse via the conjugate; throws on zero.
  ExactScalar inverse() const;
  ExactScalar pow(unsigned k) const;

  // "p/q", "p/q*eps", or "p/q+p'/q'*eps" (sign folded into the parts).
  std::string to_string() const;

 private:
  // Shared context of two operands; throws if both are set and differ.
  static int merged_r(const ExactScalar& a, const ExactScalar& b);

  Rat rat_ = 0;
  Rat eps_ = 0;
  int r_ = 0;
};

}  // namespace spinh
