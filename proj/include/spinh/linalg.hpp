#pragma once
// Exact linear algebra helpers: dense rational elimination (for the
// associativity solve) and integer Smith form diagonals (for counting
// solutions of linear congruences).

#include "spinh/rational.hpp"

#include <vector>

namespace spinh {

enum class SolveStatus { unique_solution, inconsistent, underdetermined };

struct SolveResult {
  SolveStatus status;
  std::vector<Rat> x;  // meaningful only for unique_solution
};

// Solve M x = b exactly; M is row-major and may be overdetermined.
SolveResult solve_exact(std::vector<std::vector<Rat>> m, std::vector<Rat> b);

// Diagonal of the Smith normal form of an integer matrix (nonnegative entries,
// zeros trailing).  Destructive on the argument.
std::vector<mpz_class> smith_diagonal(std::vector<std::vector<mpz_class>> m);

}  // namespace spinh
