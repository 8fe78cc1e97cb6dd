#include "spinh/constraints.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace spinh {

namespace {

void require_trunc(const GradedSeries& s, int N, const char* who) {
  if (!s.trunc || *s.trunc < N + 1)
    throw std::domain_error(std::string(who) +
                            ": input must be truncation-certified to degree N+1");
}

// t-variables (a, m) appearing in f.
std::vector<std::pair<int, int>> t_vars_of(const GradedSeries& f) {
  std::set<std::pair<int, int>> seen;
  for (VarId v : f.variables())
    if (var_kind(v) == 0) seen.emplace(var_a(v), var_m(v));
  return {seen.begin(), seen.end()};
}

// (1/2) sum_{m+n=r-2} t_0^m t_0^n
GradedSeries string_anomaly(int r) {
  GradedSeries s = GradedSeries::zero(r);
  for (int m = 0; m <= r - 2; ++m) {
    const int n = r - 2 - m;
    Monomial mono;
    if (m == n) {
      mono.emplace_back(t_var(0, m), 2);
    } else {
      mono.emplace_back(t_var(0, std::min(m, n)), 1);
      mono.emplace_back(t_var(0, std::max(m, n)), 1);
    }
    s.set_coefficient(mono, s.coefficient(mono) + ExactScalar(make_rat(1, 2), r));
  }
  return s;
}

GradedSeries shift_sum(const GradedSeries& f) {
  // sum_{a>=0,m} t_{a+1}^m d(f)/dt_a^m
  GradedSeries out = GradedSeries::zero(f.r, f.trunc);
  for (const auto& [a, m] : t_vars_of(f))
    out = out + GradedSeries::variable(t_var(a + 1, m), f.r) * partial(f, t_var(a, m));
  return out;
}

GradedSeries euler_sum(const GradedSeries& f, const std::function<Rat(int, int)>& coef) {
  GradedSeries out = GradedSeries::zero(f.r, f.trunc);
  for (const auto& [a, m] : t_vars_of(f)) {
    const Rat c = coef(a, m);
    if (c == 0) continue;
    out = out + c * (GradedSeries::variable(t_var(a, m), f.r) * partial(f, t_var(a, m)));
  }
  return out;
}

}  // namespace

GradedSeries string_residual(const GradedSeries& phi, int N) {
  require_trunc(phi, N, "string_residual");
  const int r = phi.r;
  GradedSeries res = -partial(phi, t_var(0, 0)) + string_anomaly(r) + shift_sum(phi);
  return truncated(res, N);
}

GradedSeries dilaton_residual(const GradedSeries& phi0, const GradedSeries& phi1, int N) {
  require_trunc(phi0, N, "dilaton_residual");
  require_trunc(phi1, N, "dilaton_residual");
  const int r = phi0.r;
  const GradedSeries phi = phi0 + phi1;
  GradedSeries res = -partial(phi, t_var(1, 0)) +
                     euler_sum(phi, [](int, int) { return Rat(1); }) - Rat(2) * phi0 +
                     GradedSeries::constant(make_rat(r - 1, 24), r);
  return truncated(res, N);
}

GradedSeries l0_residual(const GradedSeries& phi, int N) {
  require_trunc(phi, N, "l0_residual");
  const int r = phi.r;
  GradedSeries res =
      -make_rat(r + 1, r) * partial(phi, t_var(1, 0)) +
      euler_sum(phi, [r](int a, int m) -> Rat { return Rat(a) + make_rat(m + 1, r); }) +
      GradedSeries::constant(make_rat(static_cast<long>(r) * r - 1, 24L * r), r);
  return truncated(res, N);
}

GradedSeries grading_residual(const GradedSeries& phi0, const GradedSeries& phi1, int N) {
  require_trunc(phi0, N, "grading_residual");
  require_trunc(phi1, N, "grading_residual");
  const int r = phi0.r;
  const GradedSeries phi = phi0 + phi1;
  GradedSeries res =
      euler_sum(phi, [r](int a, int m) -> Rat { return Rat(a - 1) + make_rat(m, r); }) +
                     make_rat(2 * (r + 1), r) * phi0;
  return truncated(res, N);
}

GradedSeries apply_string_op(const GradedSeries& f, int r) {
  return -partial(f, t_var(0, 0)) + shift_sum(f) + string_anomaly(r) * f;
}

GradedSeries apply_l0_op(const GradedSeries& f, int r) {
  return -make_rat(r + 1, r) * partial(f, t_var(1, 0)) +
         euler_sum(f, [r](int a, int m) -> Rat { return Rat(a) + make_rat(m + 1, r); }) +
         GradedSeries::constant(make_rat(static_cast<long>(r) * r - 1, 24L * r), r) * f;
}

}  // namespace spinh
