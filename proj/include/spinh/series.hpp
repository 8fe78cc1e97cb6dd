#pragma once
// Sparse multivariate series over ExactScalar with total-degree truncation.
//
// Truncation semantics: trunc == T means every term of total degree <= T is
// exactly right and terms of degree > T are not represented; trunc == nullopt
// means the series is an exact polynomial.  Arithmetic propagates the tightest
// claim that is always sound: min under + and *, minus one under d/dv.

#include "spinh/scalar.hpp"
#include "spinh/variables.hpp"

#include <map>
#include <optional>
#include <vector>

namespace spinh {

// Sorted by VarId, exponents > 0.  The empty monomial is the constant 1.
using Monomial = std::vector<std::pair<VarId, int>>;

int monomial_degree(const Monomial& m);
Rat monomial_weight(const Monomial& m, int r);
std::string monomial_to_string(const Monomial& m);  // "x0^2*x1"; "1" when empty
Monomial monomial_of(VarId v, int exp = 1);

struct GradedSeries {
  int r = 0;
  std::optional<int> trunc;               // see header comment
  std::map<Monomial, ExactScalar> terms;  // canonical order; no explicit zeros

  static GradedSeries zero(int r, std::optional<int> trunc = std::nullopt);
  static GradedSeries constant(const Rat& c, int r);
  static GradedSeries constant(const ExactScalar& c, int r);
  static GradedSeries variable(VarId v, int r);

  bool is_zero() const { return terms.empty(); }
  // Degree of the lowest-degree term; meaningful only when nonzero.
  int min_degree() const;
  int max_degree() const;

  ExactScalar coefficient(const Monomial& m) const;
  // Inserts/overwrites; drops the entry when c is zero.  Degree must respect trunc.
  void set_coefficient(const Monomial& m, const ExactScalar& c);

  // Sorted list of variables that actually occur.
  std::vector<VarId> variables() const;

  std::string to_string() const;
};

GradedSeries operator-(const GradedSeries& a);
GradedSeries operator+(const GradedSeries& a, const GradedSeries& b);
GradedSeries operator-(const GradedSeries& a, const GradedSeries& b);
GradedSeries operator*(const GradedSeries& a, const GradedSeries& b);
GradedSeries operator*(const ExactScalar& c, const GradedSeries& a);
GradedSeries operator*(const Rat& c, const GradedSeries& a);

// Equality of values (r and terms); truncation metadata is not compared.
bool series_equal(const GradedSeries& a, const GradedSeries& b);

// Drop terms of degree > n and tighten the truncation claim to min(trunc, n).
GradedSeries truncated(const GradedSeries& a, int n);

// Partial derivative d/dv.
GradedSeries partial(const GradedSeries& a, VarId v);

// exp(a) - requires no constant term; log(a) - requires constant term == 1.
// Both results are truncated at n (and at the certified truncation of a).
GradedSeries series_exp_truncated(const GradedSeries& a, int n);
GradedSeries series_log_truncated(const GradedSeries& a, int n);

// True iff every term has Euler weight w (in the series' ring context).
bool is_quasi_homogeneous(const GradedSeries& a, const Rat& w);

}  // namespace spinh
