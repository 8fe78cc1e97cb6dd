#pragma once
// Commutative symbols in a momentum variable p with differential-polynomial
// coefficients: the semiclassical counterpart of the operator calculus.  The
// bracket is the canonical Poisson bracket in (x, p).  Fractional powers of
// the spectral symbol expand in a binomial series; like operators, a symbol
// carries either exactness or a certification floor for its p-exponents.

#include "spinh/diffpoly.hpp"
#include "spinh/psdo.hpp"

#include <map>
#include <optional>
#include <vector>

namespace spinh {

struct PSymbol {
  int r = 0;
  bool exact = true;
  int floor = 0;  // certification boundary; meaningful when !exact

  std::map<int, DiffPoly> c;  // p-exponent -> coefficient

  static PSymbol zero(int r);
  static PSymbol p_power(int n, int r);
  static PSymbol from_coeff(const DiffPoly& f, int exp, int r);
  // p^r - sum_{m<=r-2} u_m p^m
  static PSymbol canonical(int r);

  bool is_zero() const { return c.empty(); }
  int top() const;
  int min_exp() const;
  int certified_floor() const;
  DiffPoly coeff(int j) const;

  std::string to_string() const;
};

PSymbol operator-(const PSymbol& a);
PSymbol operator+(const PSymbol& a, const PSymbol& b);
PSymbol operator-(const PSymbol& a, const PSymbol& b);
PSymbol operator*(const PSymbol& a, const PSymbol& b);  // commutative product
PSymbol operator*(const ExactScalar& s, const PSymbol& a);
PSymbol operator*(const Rat& s, const PSymbol& a);
bool psymbol_equal_certified(const PSymbol& a, const PSymbol& b);

PSymbol sym_p_derivative(const PSymbol& a);
PSymbol sym_x_derivative(const PSymbol& a);

// {a, b} = da/dp db/dx - db/dp da/dx
PSymbol poisson(const PSymbol& a, const PSymbol& b);

// lt^((rn+m+1)/r) certified down to p-exponent target_floor; exact when the
// power is an integer.
PSymbol sym_frac_power(const PSymbol& lt, int n, int m, int target_floor);

PSymbol plus_sym(const PSymbol& a);   // exponents >= 0; needs certification at 0
DiffPoly residue_p(const PSymbol& a); // coefficient of p^(-1); needs certification at -1

// Flat coordinates of the canonical symbol: entry n is
// v_n = -(r/(n+1)) res_p lt^((n+1)/r), an order-0 polynomial in u_0..u_{r-2}.
std::vector<DiffPoly> v_of_u(int r);
// Triangular inverse: entry m expresses u_m as an order-0 polynomial in the
// v-symbols.
std::vector<DiffPoly> u_of_v(int r);

// d(lt)/dt_n^m = (k_{n,m}/r) {(lt^(q/r))_+, lt}: a symbol supported on
// exponents [0, r-2], so du_j/dt_n^m = -coeff(j).
PSymbol kdv0_flow_rhs(int r, int n, int m);

// Residuals of the dispersionless flow (n, m) on the genus-zero potential:
// entry j is d(u_j)/dt_n^m + coeff_j(kdv0_flow_rhs), truncated at degree N,
// with u_j extracted from phi0 through the flat coordinates
// v_l = d^2 phi0 / dt_0^0 dt_0^l.  phi0 must be truncation-certified to
// degree N+3.
std::vector<GradedSeries> potential_flow_residuals(const GradedSeries& phi0, int n, int m,
                                                   int N);
bool verify_potential_flow(const GradedSeries& phi0, int n, int m, int N);

}  // namespace spinh
