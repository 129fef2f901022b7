#include "rubber/arith.hpp"

#include <stdexcept>

namespace rubber {

Int factorial(unsigned n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Int binomial(unsigned n, unsigned k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Int open_moduli_euler(int d) {
  if (d == 1) return 1;
  if (d < 3) throw std::invalid_argument("open_moduli_euler: valence must be 1 or >= 3");
  Int r = factorial(static_cast<unsigned>(d - 3));
  return (d % 2 == 0) ? Int(-r) : r;
}

Rat rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Int& v) { return v.get_str(); }

std::string to_string(const Rat& v) { return v.get_str(); }

}  // namespace rubber
