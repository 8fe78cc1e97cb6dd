#pragma once
// Residuals of the linear constraints satisfied by the generating series:
// string, dilaton, scaling (L_0) and the Euler grading.  Each residual is a
// series that must vanish identically; the inputs must be truncation-certified
// one degree above the requested residual degree (multiplication by t costs a
// degree of certification).

#include "spinh/series.hpp"

namespace spinh {

// -d(phi)/dt_0^0 + (1/2) sum_{m+n=r-2} t_0^m t_0^n
//   + sum_{a>=1,m} t_a^m d(phi)/dt_{a-1}^m, truncated at N.
GradedSeries string_residual(const GradedSeries& phi, int N);

// -d/dt_1^0 + sum t d + (genus scaling) acting on phi0 + phi1:
// the genus-0 part scales as -2, genus 1 as 0, with constant shift (r-1)/24.
GradedSeries dilaton_residual(const GradedSeries& phi0, const GradedSeries& phi1, int N);

// -(1+1/r) d(phi)/dt_1^0 + sum (a + (m+1)/r) t_a^m d(phi)/dt_a^m
//   + (r^2-1)/(24 r), truncated at N.
GradedSeries l0_residual(const GradedSeries& phi, int N);

// E(phi0 + phi1) + 2(1+1/r) phi0 with E = sum (a-1+m/r) t_a^m d/dt_a^m.
GradedSeries grading_residual(const GradedSeries& phi0, const GradedSeries& phi1, int N);

// The same constraints as linear operators on the exponentiated series
// (anomalies act by multiplication); exact in, exact out.  Used to check the
// commutation relation [l0, string] = string.
GradedSeries apply_string_op(const GradedSeries& f, int r);
GradedSeries apply_l0_op(const GradedSeries& f, int r);

}  // namespace spinh
