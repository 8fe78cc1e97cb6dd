#pragma once
// Differential polynomials: exact polynomials in jet symbols s_m^(k) with the
// total x-derivative acting by the Leibniz rule.  Two symbol families are kept
// apart and never mix: the u-family (hierarchy coordinates; derivatives of any
// order) and the v-family (flat coordinates; order 0 only).

#include "spinh/scalar.hpp"
#include "spinh/series.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace spinh {

enum class JetBasis { u, v };

// Symbol s_m^(k): index m, derivative order k.
using JetSym = std::int32_t;
inline JetSym jet_sym(int m, int k) {
  if (m < 0 || k < 0 || m >= (1 << 15) || k >= (1 << 15))
    throw std::domain_error("jet_sym: index out of range");
  return (m << 15) | k;
}
inline int jet_m(JetSym s) { return s >> 15; }
inline int jet_k(JetSym s) { return s & 0x7fff; }
std::string jet_name(JetSym s, JetBasis basis);  // "u0", "u0''", "v1"

using JetMono = std::vector<std::pair<JetSym, int>>;  // sorted, exponents > 0

struct DiffPoly {
  int r = 0;
  JetBasis basis = JetBasis::u;
  std::map<JetMono, ExactScalar> terms;  // canonical order; no explicit zeros

  static DiffPoly zero(int r, JetBasis basis = JetBasis::u);
  static DiffPoly constant(const ExactScalar& c, int r, JetBasis basis = JetBasis::u);
  static DiffPoly constant(const Rat& c, int r, JetBasis basis = JetBasis::u);
  static DiffPoly symbol(int m, int k, int r, JetBasis basis = JetBasis::u);

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;
  ExactScalar constant_part() const;
  int max_order() const;  // largest jet order present; -1 when constant

  std::string to_string() const;
};

DiffPoly operator-(const DiffPoly& a);
DiffPoly operator+(const DiffPoly& a, const DiffPoly& b);
DiffPoly operator-(const DiffPoly& a, const DiffPoly& b);
DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
DiffPoly operator*(const ExactScalar& c, const DiffPoly& a);
DiffPoly operator*(const Rat& c, const DiffPoly& a);
bool diff_poly_equal(const DiffPoly& a, const DiffPoly& b);

// Total x-derivative: s_m^(k) -> s_m^(k+1) by Leibniz.
DiffPoly d_dx(const DiffPoly& a);

// Evaluate with s_m^(k) -> (d/dx)^k values[m], x being the given series
// variable.  values must have one entry per symbol index used.
GradedSeries substitute_series(const DiffPoly& a, const std::vector<GradedSeries>& values,
                               VarId x);

// Polynomial substitution s_m -> values[m] for order-0 polynomials.
// The result lives in the (single) basis of the values.
DiffPoly substitute_poly(const DiffPoly& a, const std::vector<DiffPoly>& values);

}  // namespace spinh
