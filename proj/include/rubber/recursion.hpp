#pragma once

#include <vector>

#include "rubber/series.hpp"

namespace rubber::recursion {

inline constexpr int kDefaultOrder = 20;

// nu_1(t) = (1+t)log(1+t) - t: the exponential generating function of the
// open-moduli Euler characteristics, coefficient of t^n equal to
// (-1)^n / (n(n-1)) for n >= 2.
series::TruncatedSeries nu1(int order);

// j-th derivative of nu_1 in closed form at full order: log(1+t) for j = 1
// and (-1)^j (j-2)! / (1+t)^(j-1) for j >= 2. Generating it directly avoids
// the order loss of formal differentiation.
series::TruncatedSeries nu1_derivative(int j, int order);

// The graded family nu_1, ..., nu_max_k, all at the same truncation order.
// nu_k collects the Euler characteristics of the k-component loci.
class NuFamily {
 public:
  static NuFamily compute(int max_k, int order);

  int max_k() const { return static_cast<int>(members_.size()); }
  int order() const { return order_; }
  const series::TruncatedSeries& nu(int k) const;  // 1-based

  // internal: used by nu_m while building the family
  void append(series::TruncatedSeries s);
  static NuFamily seed(int order);  // family containing nu_1 only

 private:
  NuFamily() = default;
  int order_ = 0;
  std::vector<series::TruncatedSeries> members_;
};

// nu_m = sum_{j=1}^{m-1} nu_1^(j) B_{m-1,j}(nu_1, ..., nu_{m-j}), for m >= 2.
// The family must already contain nu_1 .. nu_{m-1}.
series::TruncatedSeries nu_m(int m, const NuFamily& family);

// Table of Euler characteristics: entry (n, k) = n! [t^n] nu_k for
// 2 <= n <= max_n, 1 <= k <= n-1, with exact integer entries; the row sum
// over k is the Euler characteristic of the whole space.
class EulerTable {
 public:
  EulerTable(int max_n, std::vector<std::vector<Int>> rows);

  int max_n() const { return max_n_; }
  const Int& entry(int n, int k) const;
  Int row_sum(int n) const;

 private:
  int max_n_;
  std::vector<std::vector<Int>> rows_;  // rows_[n-2][k-1]
};

// Requires order >= n_max.
EulerTable chi_table(int n_max, int order);

// Residual of the generating-function differential equation
//   dPsi/ds = (1+t+Psi) log(1+t+Psi) - (t+Psi),
// assembled from the nu family as a polynomial in s with truncated-series
// coefficients. Returns the per-s-degree differences (degrees 0..s_degree-1),
// all expected to be identically zero.
std::vector<series::TruncatedSeries> pde_residual(int s_degree, int t_order);

// Euler characteristic of the compactified genus-zero moduli space with n+1
// marked points, as the sum over stable trees of the product of open-moduli
// Euler characteristics of the vertices. Exponential in n; bounded by the
// tree-enumeration limit.
Int chi_mbar0(int n, int tree_bound = 9);

// Same numbers from the fixed point mu = nu1(t + mu): the coefficient of t^n
// times n! is chi_mbar0(n). Cheap at any order.
series::TruncatedSeries chi_mbar0_series(int order);

}  // namespace rubber::recursion
