#pragma once
// Pseudodifferential operators: finite sums c_j(x) D^j over differential
// polynomials, with the exact composition rule
//     D^n . f = sum_{k>=0} C(n, k) eps^k f^(k) D^(n-k)
// (generalized binomials; eps^2 = -1/r).  Negative powers of D expand into
// infinite tails, so every operator tracks a certification floor: when
// `exact` is false, coefficients at exponents >= floor are exactly right and
// nothing is claimed below.  Exact operators are complete (zero below their
// lowest stored exponent).

#include "spinh/diffpoly.hpp"

#include <map>
#include <optional>

namespace spinh {

struct Psdo {
  int r = 0;
  bool exact = true;
  int floor = 0;  // certification boundary; meaningful when !exact
  std::map<int, DiffPoly> c;  // exponent -> nonzero coefficient

  static Psdo zero(int r);
  static Psdo d_power(int n, int r);  // D^n
  static Psdo from_coeff(const DiffPoly& f, int exp, int r);
  // L = D^r - sum_{m=0}^{r-2} u_m D^m.
  static Psdo canonical_l(int r);

  bool is_zero() const { return c.empty(); }
  int top() const;      // largest exponent; throws when zero
  int min_exp() const;  // smallest stored exponent; throws when zero
  // Certified floor: INT_MIN for exact operators.
  int certified_floor() const;
  // Coefficient at exponent j; throws when j is below the certified floor.
  DiffPoly coeff(int j) const;
  bool is_differential() const;  // certified at 0 and no negative exponents

  std::string to_string() const;
};

Psdo operator-(const Psdo& a);
Psdo operator+(const Psdo& a, const Psdo& b);
Psdo operator-(const Psdo& a, const Psdo& b);
Psdo operator*(const ExactScalar& s, const Psdo& a);
Psdo operator*(const Rat& s, const Psdo& a);
bool psdo_equal_certified(const Psdo& a, const Psdo& b);  // on the common certified window

// Composition a . b.  target_floor bounds the computed exponents from below;
// it is required when the Leibniz expansion does not terminate (a has negative
// exponents against non-constant b) and no certification floor is implied.
Psdo compose(const Psdo& a, const Psdo& b, std::optional<int> target_floor = std::nullopt);
Psdo commutator(const Psdo& a, const Psdo& b, std::optional<int> target_floor = std::nullopt);

// Leibniz-grade filtered composition: only the k == grade terms.
Psdo compose_grade(const Psdo& a, const Psdo& b, int grade,
                   std::optional<int> target_floor = std::nullopt);

// Commutative helpers for the semiclassical comparison.
Psdo p_derivative(const Psdo& a);  // c_j D^j -> j c_j D^(j-1)
Psdo x_derivative(const Psdo& a);  // c_j D^j -> c_j' D^j
Psdo symbol_mul(const Psdo& a, const Psdo& b);  // grade-0 product

Psdo plus_part(const Psdo& a);     // exponents >= 0; needs certification at 0
DiffPoly residue(const Psdo& a);   // coefficient of D^(-1); needs certification at -1

// k_{n,m} = (-1)^n r^(n+1) / ((m+1)(r+m+1)...(nr+m+1)).
Rat k_constant(int r, int n, int m);

// r-th root of a monic degree-r differential operator: R = D + sum_{s>=1} w_s D^(-s),
// with w_1..w_depth computed (floor -depth).
Psdo rth_root(const Psdo& l, int depth);

// L^(n + (m+1)/r) as a root power, certified deep enough for plus_part/residue.
Psdo frac_power(const Psdo& l, int n, int m, int depth);

// dL/dt_n^m = -k_{n,m} eps [ (L^(n+(m+1)/r))_+ , L ]: purely differential with
// exponents in [0, r-2] (checked).  depth <= 0 picks a sufficient default.
Psdo kdv_flow_rhs(const Psdo& l, int n, int m, int depth = 0);

}  // namespace spinh
