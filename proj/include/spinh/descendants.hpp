#pragma once
// Descendant intersection numbers <tau_{a1,m1}..tau_{an,mn}>_g for g <= 1,
// computed by topological recursion from the small phase space values, plus
// the large phase space generating series they assemble into.

#include "spinh/series.hpp"

#include <array>
#include <random>
#include <utility>
#include <vector>

namespace spinh {

using Insertion = std::pair<int, int>;  // (a, m): descendant level, twist

// Dimension gate: the correlator can only be nonzero when
// (r-2)(g-1) + sum m is a nonnegative multiple of r, say rD, and
// sum a + D == 3g - 3 + n.
bool admissible(int r, int g, const std::vector<Insertion>& ins);

// Genus-zero correlator; zero on non-admissible input and whenever some
// m == r-1.  Memoized per (r, insertions).
Rat correlator_g0(int r, std::vector<Insertion> ins);

// Same value computed with randomized recursion choices (pivot and fixed
// pair) and no cross-call memo; exercises the claim that the recursion is
// choice-independent.
Rat correlator_g0_randomized(int r, std::vector<Insertion> ins, std::mt19937& rng);

// Genus-one correlator; all-primary correlators vanish by the dimension gate.
Rat correlator_g1(int r, std::vector<Insertion> ins);

// Genus-zero correlator with one extra mu_1 class inserted.
Rat mu1_correlator_g0(int r, std::vector<Insertion> ins);

// Closed form for the 4-point genus-zero mu_1 integral with primary
// insertions (0, m_i); requires m_i in [0, r-2] and sum m_i == r-2 (mod r).
Rat m04_mu1_integral(int r, const std::array<int, 4>& m);

// Generating series in t_a^m, truncated at total degree N.
GradedSeries genus0_potential(int r, int N);
GradedSeries genus1_potential(int r, int N);

}  // namespace spinh
