#pragma once
// Exact rational scalars backed by GMP, plus small parse/format helpers.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spinh {

using Rat = mpq_class;

// p/q, canonicalized.  q must be nonzero.
inline Rat make_rat(long p, long q = 1) {
  if (q == 0) throw std::domain_error("make_rat: zero denominator");
  Rat x(p, q);
  x.canonicalize();
  return x;
}

// Accepts "p" or "p/q" (base 10).  Throws on malformed input.
Rat rat_from_string(const std::string& s);

// Canonical rendering: "p" for integers, "p/q" otherwise, '-' on the numerator.
std::string rat_to_string(const Rat& x);

// Generalized binomial coefficient C(x, k) = x(x-1)...(x-k+1) / k!.
Rat rat_binomial(const Rat& x, unsigned k);

// x^k for k >= 0.
Rat rat_pow(const Rat& x, unsigned k);

}  // namespace spinh
