#include "spinh/rational.hpp"

namespace spinh {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::domain_error("rat_from_string: empty string");
  // Validate shape by hand: optional sign, digits, optional "/digits".
  std::size_t i = 0;
  if (s[i] == '-' || s[i] == '+') ++i;
  std::size_t digits = 0;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
  if (digits == 0) throw std::domain_error("rat_from_string: bad rational '" + s + "'");
  if (i < s.size()) {
    if (s[i] != '/') throw std::domain_error("rat_from_string: bad rational '" + s + "'");
    ++i;
    std::size_t den_digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++den_digits;
    if (den_digits == 0 || i != s.size())
      throw std::domain_error("rat_from_string: bad rational '" + s + "'");
  }
  mpq_t q;
  mpq_init(q);
  if (mpq_set_str(q, s.c_str(), 10) != 0) {
    mpq_clear(q);
    throw std::domain_error("rat_from_string: bad rational '" + s + "'");
  }
  if (mpz_sgn(mpq_denref(q)) == 0) {
    mpq_clear(q);
    throw std::domain_error("rat_from_string: zero denominator in '" + s + "'");
  }
  mpq_canonicalize(q);
  Rat out(q);
  mpq_clear(q);
  return out;
}

std::string rat_to_string(const Rat& x) {
  return x.get_str();  // canonical: "p" or "p/q"
}

Rat rat_binomial(const Rat& x, unsigned k) {
  Rat acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    acc *= (x - static_cast<long>(i));
    acc /= static_cast<long>(i + 1);
  }
  return acc;
}

Rat rat_pow(const Rat& x, unsigned k) {
  Rat acc = 1;
  Rat base = x;
  while (k > 0) {
    if (k & 1u) acc *= base;
    base *= base;
    k >>= 1u;
  }
  return acc;
}

}  // namespace spinh
