#pragma once

#include <initializer_list>
#include <vector>

namespace freeplate {

/// Dense univariate polynomial, coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) {}
  explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  /// Horner evaluation.
  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int k) const {
    return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(k)] : 0.0;
  }

  Polynomial derivative() const;
  /// Drops the constant term and shifts down; exact when p(0) == 0.
  Polynomial divided_by_x() const;

  friend Polynomial operator+(const Polynomial& lhs, const Polynomial& rhs);
  friend Polynomial operator-(const Polynomial& lhs, const Polynomial& rhs);
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  friend Polynomial operator*(double scalar, const Polynomial& p);

 private:
  std::vector<double> coeffs_;
};

/// Real roots of c0 + c1 x + c2 x^2 in increasing order, by the quadratic
/// formula (with the cancellation-free form for the smaller root).
std::vector<double> quadratic_roots(double c0, double c1, double c2);

/// Interior critical points of a cubic in [lo, hi], found in closed form.
std::vector<double> cubic_critical_points(const Polynomial& cubic, double lo, double hi);

}  // namespace freeplate
