#include "rubber/series.hpp"

#include <stdexcept>

namespace rubber::series {

TruncatedSeries::TruncatedSeries(int order) : order_(order) {
  if (order < 0) throw std::invalid_argument("TruncatedSeries: negative order");
  coeffs_.assign(static_cast<size_t>(order) + 1, Rat(0));
}

TruncatedSeries TruncatedSeries::constant(const Rat& c, int order) {
  TruncatedSeries s(order);
  s.coeffs_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::variable(int order) {
  if (order < 1) throw std::invalid_argument("variable: order must be >= 1");
  TruncatedSeries s(order);
  s.coeffs_[1] = 1;
  return s;
}

const Rat& TruncatedSeries::coeff(int i) const {
  if (i < 0 || i > order_) throw std::out_of_range("TruncatedSeries::coeff");
  return coeffs_[static_cast<size_t>(i)];
}

void TruncatedSeries::set_coeff(int i, const Rat& v) {
  if (i < 0 || i > order_) throw std::out_of_range("TruncatedSeries::set_coeff");
  coeffs_[static_cast<size_t>(i)] = v;
}

bool TruncatedSeries::is_zero() const {
  for (const Rat& c : coeffs_)
    if (c != 0) return false;
  return true;
}

TruncatedSeries TruncatedSeries::truncated(int new_order) const {
  if (new_order > order_) throw std::invalid_argument("truncated: cannot extend order");
  TruncatedSeries s(new_order);
  for (int i = 0; i <= new_order; ++i) s.coeffs_[i] = coeffs_[i];
  return s;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries s(order_);
  for (int i = 0; i <= order_; ++i) s.coeffs_[i] = -coeffs_[i];
  return s;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  int n = std::min(a.order_, b.order_);
  TruncatedSeries s(n);
  for (int i = 0; i <= n; ++i) s.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
  return s;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  int n = std::min(a.order_, b.order_);
  TruncatedSeries s(n);
  for (int i = 0; i <= n; ++i) s.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
  return s;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  int n = std::min(a.order_, b.order_);
  TruncatedSeries s(n);
  for (int i = 0; i <= n; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (b.coeffs_[j] == 0) continue;
      s.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return s;
}

TruncatedSeries operator*(const Rat& c, const TruncatedSeries& a) {
  TruncatedSeries s(a.order_);
  for (int i = 0; i <= a.order_; ++i) s.coeffs_[i] = c * a.coeffs_[i];
  return s;
}

TruncatedSeries TruncatedSeries::derivative(int j) const {
  if (j < 0) throw std::invalid_argument("derivative: negative count");
  if (j > order_) throw std::invalid_argument("derivative: count exceeds order");
  if (j == 0) return *this;
  TruncatedSeries s(order_ - j);
  for (int i = 0; i <= order_ - j; ++i) {
    // falling factorial (i+j)(i+j-1)...(i+1)
    Int f = 1;
    for (int k = i + 1; k <= i + j; ++k) f *= k;
    s.coeffs_[i] = Rat(f) * coeffs_[static_cast<size_t>(i + j)];
  }
  return s;
}

TruncatedSeries TruncatedSeries::pow(int k) const {
  if (k < 0) throw std::invalid_argument("pow: negative exponent");
  TruncatedSeries r = constant(1, order_);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

TruncatedSeries log1p(int order) {
  TruncatedSeries s(order);
  for (int k = 1; k <= order; ++k) s.set_coeff(k, rat(k % 2 == 1 ? 1 : -1, k));
  return s;
}

TruncatedSeries exp(const TruncatedSeries& a) {
  if (a.coeff(0) != 0) throw std::invalid_argument("exp: nonzero constant term");
  int n = a.order();
  // e' = a' e  =>  n e_n = sum_{k=1}^{n} k a_k e_{n-k}
  TruncatedSeries e(n);
  e.set_coeff(0, 1);
  for (int i = 1; i <= n; ++i) {
    Rat acc = 0;
    for (int k = 1; k <= i; ++k) acc += Rat(k) * a.coeff(k) * e.coeff(i - k);
    e.set_coeff(i, acc / i);
  }
  return e;
}

std::vector<std::vector<int>> partition_multiplicities(int m, int parts) {
  std::vector<std::vector<int>> out;
  if (m < 0 || parts < 0) return out;
  std::vector<int> mult(static_cast<size_t>(m) + 1, 0);
  // choose lambda_i for i = 1..m, left to right
  auto rec = [&](auto&& self, int i, int rem, int left) -> void {
    if (rem == 0 && left == 0) {
      out.push_back(mult);
      return;
    }
    if (i > rem || left <= 0) return;
    int max_c = std::min(rem / i, left);
    for (int c = 0; c <= max_c; ++c) {
      mult[static_cast<size_t>(i)] = c;
      self(self, i + 1, rem - c * i, left - c);
      mult[static_cast<size_t>(i)] = 0;
    }
  };
  rec(rec, 1, m, parts);
  return out;
}

namespace {

void check_bell_args(int m, int j, size_t nargs) {
  if (j < 1 || j > m) throw std::invalid_argument("bell: need 1 <= j <= m");
  if (static_cast<int>(nargs) < m - j + 1)
    throw std::invalid_argument("bell: need at least m - j + 1 arguments");
}

// weight of one partition term: m! / (prod (i!)^{lambda_i} lambda_i!)
Rat bell_weight(int m, const std::vector<int>& mult) {
  Rat w(factorial(static_cast<unsigned>(m)));
  for (int i = 1; i <= m; ++i) {
    int c = mult[static_cast<size_t>(i)];
    if (c == 0) continue;
    Int d = factorial(static_cast<unsigned>(i));
    Int dp;
    mpz_pow_ui(dp.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned>(c));
    w /= Rat(dp * factorial(static_cast<unsigned>(c)));
  }
  return w;
}

}  // namespace

TruncatedSeries bell(int m, int j, std::span<const TruncatedSeries> args) {
  check_bell_args(m, j, args.size());
  int order = args[0].order();
  for (const auto& a : args) order = std::min(order, a.order());
  TruncatedSeries out(order);
  for (const auto& mult : partition_multiplicities(m, j)) {
    TruncatedSeries term = TruncatedSeries::constant(bell_weight(m, mult), order);
    for (int i = 1; i <= m; ++i)
      for (int c = 0; c < mult[static_cast<size_t>(i)]; ++c) term = term * args[i - 1];
    out = out + term;
  }
  return out;
}

Rat bell(int m, int j, std::span<const Rat> args) {
  check_bell_args(m, j, args.size());
  Rat out = 0;
  for (const auto& mult : partition_multiplicities(m, j)) {
    Rat term = bell_weight(m, mult);
    for (int i = 1; i <= m; ++i)
      for (int c = 0; c < mult[static_cast<size_t>(i)]; ++c) term *= args[i - 1];
    out += term;
  }
  return out;
}

TruncatedSeries compose(std::span<const Rat> g_egf, const TruncatedSeries& f) {
  if (f.coeff(0) != 0) throw std::invalid_argument("compose: inner series has nonzero constant term");
  int n = f.order();
  // EGF coefficients of f: a_k = k! [t^k] f
  std::vector<Rat> a(static_cast<size_t>(n) + 1, Rat(0));
  for (int k = 1; k <= n; ++k) a[static_cast<size_t>(k)] = Rat(factorial(static_cast<unsigned>(k))) * f.coeff(k);
  auto b = [&](int k) -> Rat {
    return k < static_cast<int>(g_egf.size()) ? g_egf[static_cast<size_t>(k)] : Rat(0);
  };
  TruncatedSeries out(n);
  out.set_coeff(0, b(0));
  for (int i = 1; i <= n; ++i) {
    Rat acc = 0;
    for (int k = 1; k <= i; ++k) {
      if (b(k) == 0) continue;
      acc += b(k) * bell(i, k, std::span<const Rat>(a).subspan(1, static_cast<size_t>(i - k + 1)));
    }
    out.set_coeff(i, acc / Rat(factorial(static_cast<unsigned>(i))));
  }
  return out;
}

}  // namespace rubber::series
