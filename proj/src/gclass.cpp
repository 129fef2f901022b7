#include "rubber/gclass.hpp"

#include <stdexcept>

namespace rubber {

GClass GClass::from_coeffs(std::vector<Int> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  GClass g;
  g.coeffs_ = std::move(coeffs);
  return g;
}

GClass GClass::operator+(const GClass& other) const {
  std::vector<Int> out(std::max(coeffs_.size(), other.coeffs_.size()), Int(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (size_t i = 0; i < other.coeffs_.size(); ++i) out[i] += other.coeffs_[i];
  return from_coeffs(std::move(out));
}

GClass GClass::operator-(const GClass& other) const {
  std::vector<Int> out(std::max(coeffs_.size(), other.coeffs_.size()), Int(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (size_t i = 0; i < other.coeffs_.size(); ++i) out[i] -= other.coeffs_[i];
  return from_coeffs(std::move(out));
}

GClass GClass::operator*(const GClass& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<Int> out(coeffs_.size() + other.coeffs_.size() - 1, Int(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  return from_coeffs(std::move(out));
}

GClass& GClass::operator+=(const GClass& other) {
  *this = *this + other;
  return *this;
}

GClass GClass::pow(int k) const {
  if (k < 0) throw std::invalid_argument("GClass::pow: negative exponent");
  GClass r = one();
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

Int GClass::eval(const Int& value) const {
  Int acc = 0;
  for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * value + coeffs_[i];
  return acc;
}

}  // namespace rubber
