#include "spinh/cohft.hpp"

#include "spinh/linalg.hpp"

#include <algorithm>
#include <map>

namespace spinh {

namespace {

Rat factorial(int n) {
  Rat f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_index(int r, int m) {
  if (m < 0 || m > r - 1) throw std::domain_error("cohft: index out of range");
}

// Monomial prod_m x_m^{k_m} from an exponent vector.
Monomial x_monomial(const std::vector<int>& k) {
  Monomial mono;
  for (int m = 0; m < static_cast<int>(k.size()); ++m)
    if (k[m] > 0) mono.emplace_back(x_var(m), k[m]);
  return mono;
}

GradedSeries third_partial(const GradedSeries& f, int i, int j, int k) {
  return partial(partial(partial(f, x_var(i)), x_var(j)), x_var(k));
}

// All exponent vectors k over x_0..x_{r-2} with sum k = deg and
// sum m k_m = r(deg-2) - 2 (the dimension constraint for a degree-deg
// coefficient of the potential).
std::vector<std::vector<int>> degree_candidates(int r, int deg) {
  std::vector<std::vector<int>> out;
  std::vector<int> k(r - 1, 0);
  const int want_weight = r * (deg - 2) - 2;
  auto rec = [&](auto&& self, int m, int left, int weight) -> void {
    if (m == r - 2) {
      if (static_cast<long>(m) * left + weight == want_weight) {
        k[m] = left;
        out.push_back(k);
        k[m] = 0;
      }
      return;
    }
    for (int e = 0; e <= left; ++e) {
      k[m] = e;
      self(self, m + 1, left - e, weight + m * e);
      k[m] = 0;
    }
  };
  rec(rec, 0, deg, 0);
  return out;
}

}  // namespace

Rat metric(int r, int m, int n) {
  check_index(r, m);
  check_index(r, n);
  return m + n == r - 2 ? 1 : 0;
}

Rat three_point(int r, int m1, int m2, int m3) {
  for (int m : {m1, m2, m3}) {
    check_index(r, m);
    if (m == r - 1) return 0;
  }
  return m1 + m2 + m3 == r - 2 ? 1 : 0;
}

Rat four_point(int r, int m1, int m2, int m3, int m4) {
  int lo = r;
  for (int m : {m1, m2, m3, m4}) {
    check_index(r, m);
    if (m == r - 1) return 0;
    lo = std::min(lo, std::min(m, r - 1 - m));
  }
  if (m1 + m2 + m3 + m4 != 2 * r - 2) return 0;
  return make_rat(lo, r);
}

GradedSeries wdvv_residual(const GradedSeries& phi, int a, int b, int c, int d) {
  const int r = phi.r;
  GradedSeries out = GradedSeries::zero(r, phi.trunc ? std::optional<int>(*phi.trunc - 3)
                                                     : std::nullopt);
  for (int e = 0; e <= r - 2; ++e) {
    const int f = r - 2 - e;
    out = out + third_partial(phi, a, b, e) * third_partial(phi, f, c, d) -
          third_partial(phi, a, d, e) * third_partial(phi, f, c, b);
  }
  return out;
}

bool wdvv_ok(const GradedSeries& phi) {
  const int r = phi.r;
  for (int a = 0; a <= r - 2; ++a)
    for (int c = a; c <= r - 2; ++c)
      for (int b = 0; b <= r - 2; ++b)
        for (int d = b + 1; d <= r - 2; ++d)
          if (!wdvv_residual(phi, a, b, c, d).is_zero()) return false;
  return true;
}

GradedSeries solve_small_phase(int r) {
  if (r < 2) throw std::domain_error("solve_small_phase: r must be >= 2");
  GradedSeries phi = GradedSeries::zero(r);

  // Cubic and quartic coefficients in closed form.
  for (int m1 = 0; m1 <= r - 2; ++m1)
    for (int m2 = m1; m2 <= r - 2; ++m2)
      for (int m3 = m2; m3 <= r - 2; ++m3) {
        const Rat val = three_point(r, m1, m2, m3);
        if (val == 0) continue;
        std::vector<int> k(r - 1, 0);
        ++k[m1], ++k[m2], ++k[m3];
        Rat mult = 1;
        for (int e : k) mult *= factorial(e);
        phi.set_coefficient(x_monomial(k), ExactScalar(val / mult, r));
      }
  for (int m1 = 0; m1 <= r - 2; ++m1)
    for (int m2 = m1; m2 <= r - 2; ++m2)
      for (int m3 = m2; m3 <= r - 2; ++m3)
        for (int m4 = m3; m4 <= r - 2; ++m4) {
          const Rat val = four_point(r, m1, m2, m3, m4);
          if (val == 0) continue;
          std::vector<int> k(r - 1, 0);
          ++k[m1], ++k[m2], ++k[m3], ++k[m4];
          Rat mult = 1;
          for (int e : k) mult *= factorial(e);
          phi.set_coefficient(x_monomial(k), ExactScalar(val / mult, r));
        }

  // Degrees 5..r+1: the unknown coefficients enter the associativity
  // residual at polynomial degree deg-3 linearly through the cubic part;
  // everything lower is known, giving a square-solvable exact system.
  for (int deg = 5; deg <= r + 1; ++deg) {
    const std::vector<std::vector<int>> cands = degree_candidates(r, deg);
    if (cands.empty()) continue;

    // Collect residual polynomials per tuple, for the known part...
    std::vector<std::array<int, 4>> tuples;
    for (int a = 0; a <= r - 2; ++a)
      for (int c = a; c <= r - 2; ++c)
        for (int b = 0; b <= r - 2; ++b)
          for (int d = b + 1; d <= r - 2; ++d)
            tuples.push_back({a, b, c, d});

    // ...and the linearization against the cubic for each candidate.
    std::vector<std::vector<GradedSeries>> lin(cands.size());
    std::vector<GradedSeries> known(tuples.size(), GradedSeries::zero(r));
    for (std::size_t ti = 0; ti < tuples.size(); ++ti)
      known[ti] = truncated(wdvv_residual(phi, tuples[ti][0], tuples[ti][1], tuples[ti][2],
                                          tuples[ti][3]),
                            deg - 3);

    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
      GradedSeries mu = GradedSeries::zero(r);
      mu.set_coefficient(x_monomial(cands[ci]), ExactScalar(Rat(1), r));
      lin[ci].reserve(tuples.size());
      for (const auto& [a, b, c, d] : tuples) {
        GradedSeries cross = GradedSeries::zero(r);
        for (int e = 0; e <= r - 2; ++e) {
          const int f = r - 2 - e;
          cross = cross + three_point(r, a, b, e) * third_partial(mu, f, c, d) +
                  three_point(r, f, c, d) * third_partial(mu, a, b, e) -
                  three_point(r, a, d, e) * third_partial(mu, f, c, b) -
                  three_point(r, f, c, b) * third_partial(mu, a, d, e);
        }
        lin[ci].push_back(cross);
      }
    }

    // Row space: every degree-(deg-3) monomial seen in a known residual or a
    // linearized column, per tuple.
    std::vector<std::vector<Rat>> mat;
    std::vector<Rat> rhs;
    for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
      std::map<Monomial, bool> monos;
      for (const auto& [mono, coe] : known[ti].terms) {
        (void)coe;
        if (monomial_degree(mono) == deg - 3) monos[mono] = true;
      }
      for (std::size_t ci = 0; ci < cands.size(); ++ci)
        for (const auto& [mono, coe] : lin[ci][ti].terms) {
          (void)coe;
          monos[mono] = true;
        }
      for (const auto& [mono, used] : monos) {
        (void)used;
        std::vector<Rat> row(cands.size());
        for (std::size_t ci = 0; ci < cands.size(); ++ci)
          row[ci] = lin[ci][ti].coefficient(mono).rat_part();
        mat.push_back(std::move(row));
        rhs.push_back(-known[ti].coefficient(mono).rat_part());
      }
    }

    SolveResult sol = solve_exact(std::move(mat), std::move(rhs));
    if (sol.status != SolveStatus::unique_solution)
      throw std::logic_error(
          "solve_small_phase: associativity system is not uniquely solvable at degree " +
          std::to_string(deg));
    for (std::size_t ci = 0; ci < cands.size(); ++ci)
      if (sol.x[ci] != 0)
        phi.set_coefficient(x_monomial(cands[ci]), ExactScalar(sol.x[ci], r));
  }

  if (!wdvv_ok(phi))
    throw std::logic_error("solve_small_phase: potential fails associativity");
  return phi;
}

std::vector<GradedSeries> frobenius_product(const GradedSeries& phi, int a, int b) {
  const int r = phi.r;
  check_index(r, a);
  check_index(r, b);
  std::vector<GradedSeries> out;
  out.reserve(r - 1);
  for (int c = 0; c <= r - 2; ++c) out.push_back(third_partial(phi, a, b, r - 2 - c));
  return out;
}

}  // namespace spinh
