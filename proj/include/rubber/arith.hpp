#pragma once

#include <gmpxx.h>

#include <string>

namespace rubber {

// All arithmetic in this library is exact. Integers are arbitrary-precision,
// rationals are kept in canonical form (positive denominator, gcd 1); the GMP
// class operators preserve canonicity.
using Int = mpz_class;
using Rat = mpq_class;

Int factorial(unsigned n);
Int binomial(unsigned n, unsigned k);

// Euler characteristic of the open moduli space of genus-zero curves with d
// marked points: 1 for d = 1, (-1)^(d-1) (d-3)! for d >= 3. Undefined (throws)
// for d = 0 or d = 2.
Int open_moduli_euler(int d);

// Canonicalized rational from machine integers.
Rat rat(long num, long den = 1);

std::string to_string(const Int& v);
std::string to_string(const Rat& v);

}  // namespace rubber
