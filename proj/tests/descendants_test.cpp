#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinh/cohft.hpp"
#include "spinh/descendants.hpp"

#include <algorithm>
#include <map>

using namespace spinh;

namespace {
Rat factorial(int n) {
  Rat f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}
}  // namespace

TEST_CASE("admissibility gate") {
  // <tau_{0,1}^4> at r=3: sum m = 4 -> D = (  -1*1 + 4)/3 = 1, sum a = 0 = n-3-D+.. 0+1=1=4-3
  CHECK(admissible(3, 0, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}));
  CHECK_FALSE(admissible(3, 0, {{0, 1}, {0, 1}, {0, 1}}));
  CHECK_FALSE(admissible(2, 0, {{1, 0}, {1, 0}, {0, 0}}));  // sum a too big
  CHECK(admissible(2, 0, {{1, 0}, {0, 0}, {0, 0}, {0, 0}}));
  CHECK(admissible(2, 1, {{1, 0}}));
  // fewer than three points in genus zero never passes
  CHECK_FALSE(admissible(4, 0, {{0, 2}, {0, 0}}));
}

TEST_CASE("three and four point values seed the recursion") {
  for (int r = 2; r <= 6; ++r) {
    for (int m1 = 0; m1 <= r - 2; ++m1)
      for (int m2 = m1; m2 <= r - 2; ++m2)
        for (int m3 = m2; m3 <= r - 2; ++m3) {
          const Rat got = correlator_g0(r, {{0, m1}, {0, m2}, {0, m3}});
          CHECK(got == three_point(r, m1, m2, m3));
        }
    for (int m1 = 0; m1 <= r - 2; ++m1)
      for (int m2 = m1; m2 <= r - 2; ++m2)
        for (int m3 = m2; m3 <= r - 2; ++m3)
          for (int m4 = m3; m4 <= r - 2; ++m4) {
            const Rat got = correlator_g0(r, {{0, m1}, {0, m2}, {0, m3}, {0, m4}});
            CHECK(got == four_point(r, m1, m2, m3, m4));
          }
  }
}

TEST_CASE("r=2 genus-zero correlators in closed form") {
  // <tau_{a1}..tau_{an}> = (n-3)! / prod a_i!  when sum a_i = n-3
  CHECK(correlator_g0(2, {{1, 0}, {0, 0}, {0, 0}, {0, 0}}) == 1);
  CHECK(correlator_g0(2, {{2, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}) == 1);
  CHECK(correlator_g0(2, {{1, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 0}}) == 2);
  CHECK(correlator_g0(2, {{2, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}) == 3);
  CHECK(correlator_g0(2, {{3, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}) == 1);
  CHECK(correlator_g0(2, {{1, 0}, {1, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 0}}) == 6);
}

TEST_CASE("specific descendant values") {
  // <tau_{0,1}^4> = 1/3 at r=3
  CHECK(correlator_g0(3, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}) == make_rat(1, 3));
  // <tau_{1,1} tau_{0,2} tau_{0,1}^3> = 1/2 at r=4
  CHECK(correlator_g0(4, {{1, 1}, {0, 2}, {0, 1}, {0, 1}, {0, 1}}) == make_rat(1, 2));
  // non-admissible and r-1 twists vanish
  CHECK(correlator_g0(3, {{0, 1}, {0, 1}, {0, 1}}) == 0);
  CHECK(correlator_g0(3, {{0, 2}, {0, 1}, {0, 1}, {0, 0}}) == 0);
}

TEST_CASE("string equation on genus-zero correlators") {
  // <tau_{0,0} prod tau_{a_i,m_i}> = sum_j <.. tau_{a_j - 1, m_j} ..>
  const int r = 4;
  const std::vector<std::vector<Insertion>> keys = {
      {{1, 1}, {0, 2}, {0, 1}, {0, 1}, {0, 1}},
      {{1, 0}, {1, 2}, {0, 1}, {0, 2}},
      {{2, 2}, {0, 1}, {0, 1}, {0, 2}},
  };
  for (const auto& key : keys) {
    std::vector<Insertion> with0 = key;
    with0.push_back({0, 0});
    Rat rhs(0);
    for (std::size_t j = 0; j < key.size(); ++j) {
      if (key[j].first == 0) continue;
      std::vector<Insertion> lowered = key;
      lowered[j].first -= 1;
      rhs += correlator_g0(r, lowered);
    }
    CHECK(correlator_g0(r, with0) == rhs);
  }
}

TEST_CASE("dilaton equation on genus-zero correlators") {
  // <tau_{1,0} prod tau_{a_i,m_i}> = (n - 2) <prod tau_{a_i,m_i}>
  const int r = 3;
  const std::vector<std::vector<Insertion>> keys = {
      {{0, 1}, {0, 1}, {0, 1}, {0, 1}},
      {{1, 0}, {0, 1}, {0, 2}, {0, 1}},
  };
  for (const auto& key : keys) {
    std::vector<Insertion> with1 = key;
    with1.push_back({1, 0});
    const Rat lhs = correlator_g0(r, with1);
    CHECK(lhs == Rat(static_cast<long>(key.size()) - 2) * correlator_g0(r, key));
  }
}

TEST_CASE("randomized recursion agrees with the deterministic one") {
  std::mt19937 rng(123456);
  for (int r = 2; r <= 4; ++r) {
    // assemble a few admissible keys by brute force over small parameter boxes
    int found = 0;
    for (int n = 4; n <= 6 && found < 8; ++n) {
      std::vector<Insertion> key(static_cast<std::size_t>(n), {0, 0});
      // crude odometer over (a,m) tuples
      const int amax = 2, mmax = r - 1;
      std::vector<int> st(static_cast<std::size_t>(n), 0);
      const int base = (amax + 1) * mmax;
      while (true) {
        for (int i = 0; i < n; ++i) {
          key[static_cast<std::size_t>(i)] = {st[static_cast<std::size_t>(i)] % (amax + 1),
                                              st[static_cast<std::size_t>(i)] / (amax + 1)};
        }
        if (admissible(r, 0, key)) {
          ++found;
          const Rat expect = correlator_g0(r, key);
          for (int trial = 0; trial < 3; ++trial)
            CHECK(correlator_g0_randomized(r, key, rng) == expect);
          if (found >= 8) break;
        }
        int pos = 0;
        while (pos < n && ++st[static_cast<std::size_t>(pos)] == base) {
          st[static_cast<std::size_t>(pos)] = 0;
          ++pos;
        }
        if (pos == n) break;
      }
    }
    CHECK(found > 0);
  }
}

TEST_CASE("genus-one correlators") {
  for (int r = 2; r <= 6; ++r)
    CHECK(correlator_g1(r, {{1, 0}}) == make_rat(r - 1, 24));
  // all-primary genus-one correlators vanish
  CHECK(correlator_g1(3, {{0, 1}, {0, 0}}) == 0);
  CHECK(correlator_g1(4, {{0, 2}, {0, 0}, {0, 0}}) == 0);
  // known r=2 values
  CHECK(correlator_g1(2, {{0, 0}, {2, 0}}) == make_rat(1, 24));
  CHECK(correlator_g1(2, {{1, 0}, {1, 0}}) == make_rat(1, 24));
  CHECK(correlator_g1(2, {{0, 0}, {0, 0}, {3, 0}}) == make_rat(1, 24));
  CHECK(correlator_g1(2, {{0, 0}, {1, 0}, {2, 0}}) == make_rat(1, 12));
}

TEST_CASE("mu1 four point closed form") {
  CHECK(m04_mu1_integral(3, {1, 1, 1, 1}) == make_rat(1, 3));
  CHECK(m04_mu1_integral(4, {2, 2, 1, 1}) == make_rat(1, 4));
  CHECK(m04_mu1_integral(4, {1, 1, 0, 0}) == 0);
  CHECK(m04_mu1_integral(2, {0, 0, 0, 0}) == 0);
  // invalid twists or selection rule are errors, not zeros
  CHECK_THROWS(m04_mu1_integral(4, {3, 1, 1, 1}));
  CHECK_THROWS(m04_mu1_integral(4, {1, 1, 1, 0}));
}

TEST_CASE("mu1 correlators") {
  // all dimension-zero mu1 4-point correlators vanish (they equal the m04
  // integral, which the closed form sends to 0 on sum m = r-2)
  CHECK(mu1_correlator_g0(5, {{0, 1}, {0, 1}, {0, 1}, {0, 0}}) == 0);
  CHECK(mu1_correlator_g0(4, {{0, 1}, {0, 1}, {0, 0}, {0, 0}}) == 0);
  // one descendant level up: <tau_{0,2} tau_{0,1}^4 mu_1> = 1/16 at r=4
  CHECK(mu1_correlator_g0(4, {{0, 2}, {0, 1}, {0, 1}, {0, 1}, {0, 1}}) == make_rat(1, 16));
}

TEST_CASE("genus-zero potential assembles correlators with multiplicities") {
  const int r = 3, N = 6;
  const GradedSeries phi = genus0_potential(r, N);
  CHECK(phi.trunc == N);
  // coefficient of t_0^1^4: <tau_{0,1}^4>/4! = (1/3)/24
  Monomial mono;
  mono.emplace_back(t_var(0, 1), 4);
  CHECK(phi.coefficient(mono) == ExactScalar(make_rat(1, 72), r));
  // mixed monomial t_1^0 t_0^1 t_0^2: <tau_{1,0} tau_{0,1} tau_{0,2}> / 1
  Monomial mixed;
  mixed.emplace_back(t_var(0, 1), 1);
  mixed.emplace_back(t_var(0, 2), 1);
  mixed.emplace_back(t_var(1, 0), 1);
  CHECK(phi.coefficient(mixed) ==
        ExactScalar(correlator_g0(r, {{1, 0}, {0, 1}, {0, 2}}), r));
  // the cubic part in t_0^m matches the small phase potential under x -> t
  const GradedSeries small = solve_small_phase(r);
  for (const auto& [xm, c] : small.terms) {
    Monomial tm;
    for (const auto& [v, e] : xm) tm.emplace_back(t_var(0, var_m(v)), e);
    CHECK(phi.coefficient(tm) == c);
  }
  // no constant, linear, or quadratic part
  CHECK(phi.min_degree() >= 3);
}

TEST_CASE("genus-one potential basics") {
  for (int r = 2; r <= 4; ++r) {
    const GradedSeries phi1 = genus1_potential(r, 3);
    Monomial t10 = monomial_of(t_var(1, 0));
    CHECK(phi1.coefficient(t10) == ExactScalar(make_rat(r - 1, 24), r));
    CHECK(phi1.coefficient({}).is_zero());
    // linear t_0^m terms all vanish
    for (int m = 0; m <= r - 2; ++m)
      CHECK(phi1.coefficient(monomial_of(t_var(0, m))).is_zero());
  }
  // coefficients equal correlators divided by automorphisms of the monomial
  const GradedSeries phi1 = genus1_potential(2, 4);
  Monomial sq = monomial_of(t_var(1, 0), 2);
  CHECK(phi1.coefficient(sq) ==
        ExactScalar(correlator_g1(2, {{1, 0}, {1, 0}}) / Rat(2), 2));
}

TEST_CASE("potential coefficients are symmetric data") {
  // the same multiset read off in any order gives one coefficient
  const int r = 4;
  const Rat a = correlator_g0(r, {{1, 1}, {0, 2}, {0, 1}, {0, 1}, {0, 1}});
  const Rat b = correlator_g0(r, {{0, 1}, {0, 1}, {1, 1}, {0, 1}, {0, 2}});
  CHECK(a == b);
  CHECK(factorial(4) == 24);
}
