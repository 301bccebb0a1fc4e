#ifndef SRN_POLYNOMIAL_HPP
#define SRN_POLYNOMIAL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "srn/numeric.hpp"

namespace srn {

/// Univariate polynomial with exact rational coefficients, lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  static Polynomial constant(const Rational& c);
  /// a + b x
  static Polynomial affine(const Rational& a, const Rational& b);
  /// (a + b x)(a - 1 + b x) ... (a - n + 1 + b x); one for n = 0.
  static Polynomial falling_factorial(const Rational& a, const Rational& b, std::int64_t n);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of x^k; zero outside the stored range (including k < 0).
  Rational coefficient(std::int64_t k) const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational operator()(const Rational& x) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& factor);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& b) { return a *= b; }
  bool operator==(const Polynomial&) const = default;

  /// "2*x^3 - x + 1/2" in the named variable.
  std::string to_string(const std::string& variable = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace srn

#endif  // SRN_POLYNOMIAL_HPP
