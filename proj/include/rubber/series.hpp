#pragma once

#include <span>
#include <vector>

#include "rubber/arith.hpp"

namespace rubber::series {

// Univariate formal power series over Rat, truncated at a fixed order N:
// coefficients of t^0 .. t^N are stored, everything above is discarded.
// Arithmetic on operands of different orders truncates to the smaller one.
// Values are immutable after construction apart from set_coeff, which is
// only meant for building.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order);
  static TruncatedSeries constant(const Rat& c, int order);
  static TruncatedSeries variable(int order);  // the series t

  int order() const { return order_; }
  const Rat& coeff(int i) const;
  void set_coeff(int i, const Rat& v);
  bool is_zero() const;

  // Truncate to a smaller (or equal) order.
  TruncatedSeries truncated(int new_order) const;

  TruncatedSeries operator-() const;
  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const Rat& c, const TruncatedSeries& a);

  // j-th formal derivative; the order drops by j. Rejects j > order.
  TruncatedSeries derivative(int j) const;

  TruncatedSeries pow(int k) const;  // k >= 0

  bool operator==(const TruncatedSeries& other) const = default;

 private:
  int order_;
  std::vector<Rat> coeffs_;  // size order_ + 1
};

// log(1 + t) up to t^order.
TruncatedSeries log1p(int order);

// exp of a series with zero constant term (rejected otherwise).
TruncatedSeries exp(const TruncatedSeries& a);

// Multiplicity vectors lambda = (lambda_1, ..., lambda_m) with
// sum i*lambda_i = m and sum lambda_i = parts, i.e. the partitions of m with
// exactly `parts` parts. Each result has size m + 1 and is indexed by part
// size (index 0 unused).
std::vector<std::vector<int>> partition_multiplicities(int m, int parts);

// Partial exponential Bell polynomial B_{m,j} evaluated at the given
// arguments (args[0] = x_1, ...). Requires 1 <= j <= m and
// args.size() >= m - j + 1.
TruncatedSeries bell(int m, int j, std::span<const TruncatedSeries> args);
Rat bell(int m, int j, std::span<const Rat> args);

// Composition g(f(t)) by Faa di Bruno's formula. g is given by its
// exponential-generating-function coefficients: g(u) = sum_k g_egf[k] u^k/k!.
// f must have zero constant term; the result carries f's order.
TruncatedSeries compose(std::span<const Rat> g_egf, const TruncatedSeries& f);

}  // namespace rubber::series
