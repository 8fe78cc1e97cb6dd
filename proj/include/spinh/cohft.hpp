#pragma once
// Small phase space: the Frobenius-manifold potential in the flat coordinates
// x_0..x_{r-2}.  The cubic and quartic coefficients are closed-form; higher
// coefficients (degrees 5..r+1) are the unique solution of the associativity
// (WDVV) equations and are found by exact linear algebra.

#include "spinh/series.hpp"

#include <vector>

namespace spinh {

// Pairing eta_{mn} = [m + n == r-2] on indices 0..r-1 (the index r-1 pairs
// with nothing).
Rat metric(int r, int m, int n);

// <tau_{0,m1} tau_{0,m2} tau_{0,m3}>: 1 when m1+m2+m3 == r-2, else 0 (and 0
// whenever an index equals r-1).
Rat three_point(int r, int m1, int m2, int m3);

// <tau_{0,m1}..tau_{0,m4}>: min_i min(m_i, r-1-m_i) / r when the selection
// rule sum m_i == 2r-2 holds, else 0 (and 0 whenever an index equals r-1).
Rat four_point(int r, int m1, int m2, int m3, int m4);

// The small phase space potential: an exact polynomial in x_0..x_{r-2} of
// degrees 3..r+1.  Throws if the associativity equations fail to determine it
// uniquely.
GradedSeries solve_small_phase(int r);

// sum_{e+f=r-2} phi_abe phi_fcd - phi_ade phi_fcb (third partials of phi);
// identically zero iff phi is associative.
GradedSeries wdvv_residual(const GradedSeries& phi, int a, int b, int c, int d);
bool wdvv_ok(const GradedSeries& phi);

// Components of e_a * e_b in the Frobenius algebra: entry c is
// (e_a * e_b)^c = phi_{a b (r-2-c)}.
std::vector<GradedSeries> frobenius_product(const GradedSeries& phi, int a, int b);

}  // namespace spinh
