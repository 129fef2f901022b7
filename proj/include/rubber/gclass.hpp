#pragma once

#include <vector>

#include "rubber/arith.hpp"

namespace rubber {

// A class in the Grothendieck ring of varieties, restricted to the subring
// generated by the Lefschetz class L: a polynomial in L with integer
// coefficients, stored lowest degree first with no trailing zeros.
// Evaluation at L = 1 gives the topological Euler characteristic.
class GClass {
 public:
  GClass() = default;  // zero
  static GClass one() { return from_coeffs({Int(1)}); }
  static GClass lefschetz() { return from_coeffs({Int(0), Int(1)}); }
  static GClass from_coeffs(std::vector<Int> coeffs);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 if zero
  const std::vector<Int>& coeffs() const { return coeffs_; }

  GClass operator+(const GClass& other) const;
  GClass operator-(const GClass& other) const;
  GClass operator*(const GClass& other) const;
  GClass& operator+=(const GClass& other);
  GClass pow(int k) const;

  Int eval(const Int& value) const;

  bool operator==(const GClass& other) const = default;

 private:
  std::vector<Int> coeffs_;
};

}  // namespace rubber
