#include "rubber/recursion.hpp"

#include <stdexcept>

#include "rubber/trees.hpp"

namespace rubber::recursion {

using series::TruncatedSeries;

TruncatedSeries nu1(int order) {
  if (order < 2) throw std::invalid_argument("nu1: order must be >= 2");
  TruncatedSeries s(order);
  for (int n = 2; n <= order; ++n) s.set_coeff(n, rat(n % 2 == 0 ? 1 : -1, static_cast<long>(n) * (n - 1)));
  return s;
}

TruncatedSeries nu1_derivative(int j, int order) {
  if (j < 0) throw std::invalid_argument("nu1_derivative: negative order of derivative");
  if (j == 0) return nu1(order);
  if (j == 1) return series::log1p(order);
  // (-1)^j (j-2)! (1+t)^{-(j-1)}; binomial expansion of the negative power
  TruncatedSeries s(order);
  Int lead = factorial(static_cast<unsigned>(j - 2));
  if (j % 2 == 1) lead = -lead;
  for (int k = 0; k <= order; ++k) {
    Int c = lead * binomial(static_cast<unsigned>(j - 2 + k), static_cast<unsigned>(k));
    s.set_coeff(k, Rat(k % 2 == 0 ? c : Int(-c)));
  }
  return s;
}

NuFamily NuFamily::seed(int order) {
  NuFamily f;
  f.order_ = order;
  f.members_.push_back(nu1(order));
  return f;
}

void NuFamily::append(series::TruncatedSeries s) {
  if (s.order() != order_) throw std::invalid_argument("NuFamily::append: order mismatch");
  members_.push_back(std::move(s));
}

const TruncatedSeries& NuFamily::nu(int k) const {
  if (k < 1 || k > max_k()) throw std::invalid_argument("NuFamily::nu: member missing");
  return members_[static_cast<size_t>(k - 1)];
}

NuFamily NuFamily::compute(int max_k, int order) {
  if (max_k < 1) throw std::invalid_argument("NuFamily::compute: need max_k >= 1");
  NuFamily f = seed(order);
  for (int m = 2; m <= max_k; ++m) f.append(nu_m(m, f));
  return f;
}

TruncatedSeries nu_m(int m, const NuFamily& family) {
  if (m < 2) throw std::invalid_argument("nu_m: need m >= 2");
  if (family.max_k() < m - 1) throw std::invalid_argument("nu_m: family is missing predecessors");
  int order = family.order();
  TruncatedSeries acc(order);
  for (int j = 1; j <= m - 1; ++j) {
    std::vector<TruncatedSeries> args;
    args.reserve(static_cast<size_t>(m - j));
    for (int i = 1; i <= m - j; ++i) args.push_back(family.nu(i));
    acc = acc + nu1_derivative(j, order) * series::bell(m - 1, j, args);
  }
  return acc;
}

EulerTable::EulerTable(int max_n, std::vector<std::vector<Int>> rows)
    : max_n_(max_n), rows_(std::move(rows)) {}

const Int& EulerTable::entry(int n, int k) const {
  if (n < 2 || n > max_n_ || k < 1 || k > n - 1) throw std::out_of_range("EulerTable::entry");
  return rows_[static_cast<size_t>(n - 2)][static_cast<size_t>(k - 1)];
}

Int EulerTable::row_sum(int n) const {
  Int s = 0;
  for (int k = 1; k <= n - 1; ++k) s += entry(n, k);
  return s;
}

EulerTable chi_table(int n_max, int order) {
  if (n_max < 2) throw std::invalid_argument("chi_table: need n_max >= 2");
  if (order < n_max) throw std::invalid_argument("chi_table: order must be >= n_max");
  NuFamily family = NuFamily::compute(std::max(1, n_max - 1), order);
  std::vector<std::vector<Int>> rows;
  for (int n = 2; n <= n_max; ++n) {
    std::vector<Int> row;
    for (int k = 1; k <= n - 1; ++k) {
      Rat v = Rat(factorial(static_cast<unsigned>(n))) * family.nu(k).coeff(n);
      if (v.get_den() != 1) throw std::logic_error("chi_table: non-integer entry");
      row.push_back(v.get_num());
    }
    rows.push_back(std::move(row));
  }
  return EulerTable(n_max, std::move(rows));
}

namespace {

// Polynomial in s with truncated-series coefficients, truncated at a fixed
// s-degree; just enough bivariate machinery for the residual check.
struct SGraded {
  int t_order;
  std::vector<TruncatedSeries> comp;  // index = s-degree

  explicit SGraded(int s_degree, int t_order)
      : t_order(t_order), comp(static_cast<size_t>(s_degree) + 1, TruncatedSeries(t_order)) {}

  int s_degree() const { return static_cast<int>(comp.size()) - 1; }
};

SGraded smul(const SGraded& a, const SGraded& b) {
  SGraded out(a.s_degree(), a.t_order);
  for (int i = 0; i <= a.s_degree(); ++i) {
    if (a.comp[static_cast<size_t>(i)].is_zero()) continue;
    for (int j = 0; i + j <= out.s_degree() && j <= b.s_degree(); ++j)
      out.comp[static_cast<size_t>(i + j)] =
          out.comp[static_cast<size_t>(i + j)] + a.comp[static_cast<size_t>(i)] * b.comp[static_cast<size_t>(j)];
  }
  return out;
}

SGraded sadd(const SGraded& a, const SGraded& b) {
  SGraded out(a.s_degree(), a.t_order);
  for (int i = 0; i <= a.s_degree(); ++i)
    out.comp[static_cast<size_t>(i)] = a.comp[static_cast<size_t>(i)] + b.comp[static_cast<size_t>(i)];
  return out;
}

}  // namespace

std::vector<TruncatedSeries> pde_residual(int s_degree, int t_order) {
  if (s_degree < 1) throw std::invalid_argument("pde_residual: need s_degree >= 1");
  int K = s_degree, N = t_order;
  NuFamily family = NuFamily::compute(K, N);
  int D = K - 1;  // the s-derivative has degree K-1 when Psi is truncated at s^K

  SGraded psi(D, N);
  for (int k = 1; k <= D; ++k)
    psi.comp[static_cast<size_t>(k)] = Rat(1) / Rat(factorial(static_cast<unsigned>(k))) * family.nu(k);

  // 1/(1+t) as a plain series
  TruncatedSeries inv1pt(N);
  for (int k = 0; k <= N; ++k) inv1pt.set_coeff(k, Rat(k % 2 == 0 ? 1 : -1));

  // log(1 + Psi/(1+t)), expanded s-adically (Psi/(1+t) has no s-constant term)
  SGraded arg(D, N);
  for (int k = 0; k <= D; ++k) arg.comp[static_cast<size_t>(k)] = psi.comp[static_cast<size_t>(k)] * inv1pt;
  SGraded lg(D, N);
  SGraded power(D, N);
  power.comp[0] = TruncatedSeries::constant(1, N);
  for (int k = 1; k <= D; ++k) {
    power = smul(power, arg);
    SGraded term(D, N);
    Rat c = rat(k % 2 == 1 ? 1 : -1, k);
    for (int i = 0; i <= D; ++i) term.comp[static_cast<size_t>(i)] = c * power.comp[static_cast<size_t>(i)];
    lg = sadd(lg, term);
  }
  // log(1+t+Psi) = log(1+t) + log(1 + Psi/(1+t))
  lg.comp[0] = lg.comp[0] + series::log1p(N);

  // (1+t+Psi) * log(1+t+Psi) - t - Psi
  SGraded lin = psi;
  TruncatedSeries one_plus_t(N);
  one_plus_t.set_coeff(0, 1);
  one_plus_t.set_coeff(1, 1);
  lin.comp[0] = lin.comp[0] + one_plus_t;
  SGraded rhs = smul(lin, lg);
  rhs.comp[0] = rhs.comp[0] - TruncatedSeries::variable(N);
  for (int k = 0; k <= D; ++k)
    rhs.comp[static_cast<size_t>(k)] = rhs.comp[static_cast<size_t>(k)] - psi.comp[static_cast<size_t>(k)];

  std::vector<TruncatedSeries> residual;
  for (int j = 0; j <= D; ++j) {
    TruncatedSeries lhs = Rat(1) / Rat(factorial(static_cast<unsigned>(j))) * family.nu(j + 1);
    residual.push_back(lhs - rhs.comp[static_cast<size_t>(j)]);
  }
  return residual;
}

Int chi_mbar0(int n, int tree_bound) {
  if (n < 2) throw std::invalid_argument("chi_mbar0: need n >= 2");
  Int total = 0;
  trees::for_each_stable_tree(
      n + 1,
      [&](const trees::MarkedTree& t) {
        Int a = 1;
        auto val = t.valences();
        for (int v = t.n; v < t.vertex_count(); ++v) a *= open_moduli_euler(val[static_cast<size_t>(v)]);
        total += a;
      },
      tree_bound);
  return total;
}

series::TruncatedSeries chi_mbar0_series(int order) {
  if (order < 2) throw std::invalid_argument("chi_mbar0_series: order must be >= 2");
  TruncatedSeries mu(order);
  // iterate mu <- nu1(t + mu); each pass fixes at least the next coefficient
  for (int pass = 0; pass < order; ++pass) {
    TruncatedSeries u = TruncatedSeries::variable(order) + mu;
    TruncatedSeries acc(order);
    TruncatedSeries up = u * u;
    for (int c = 2; c <= order; ++c) {
      acc = acc + rat(c % 2 == 0 ? 1 : -1, static_cast<long>(c) * (c - 1)) * up;
      if (c < order) up = up * u;
    }
    if (acc == mu) break;
    mu = acc;
  }
  return mu;
}

}  // namespace rubber::recursion
