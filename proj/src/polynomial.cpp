#include "srn/polynomial.hpp"

#include <algorithm>

namespace srn {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::affine(const Rational& a, const Rational& b) { return Polynomial({a, b}); }

Polynomial Polynomial::falling_factorial(const Rational& a, const Rational& b, std::int64_t n) {
  Polynomial p = constant(1);
  for (std::int64_t i = 0; i < n; ++i) p *= affine(a - i, b);
  return p;
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coefficient(std::int64_t k) const {
  if (k < 0 || k >= static_cast<std::int64_t>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  if (is_zero() || other.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& factor) {
  for (auto& c : coeffs_) c *= factor;
  trim();
  return *this;
}

std::string Polynomial::to_string(const std::string& variable) const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (s.empty()) s += negative ? "-" : "";
    else s += negative ? " - " : " + ";
    const bool unit = mag == 1;
    if (k == 0 || !unit) s += srn::to_string(mag);
    if (k > 0) {
      if (!unit) s += "*";
      s += variable;
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s;
}

}  // namespace srn
