#include "freeplate/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "freeplate/errors.hpp"

namespace freeplate {

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial{0.0};
  std::vector<double> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::divided_by_x() const {
  if (coeffs_.size() <= 1) return Polynomial{0.0};
  return Polynomial(std::vector<double>(coeffs_.begin() + 1, coeffs_.end()));
}

Polynomial operator+(const Polynomial& lhs, const Polynomial& rhs) {
  std::vector<double> out(std::max(lhs.coeffs_.size(), rhs.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = lhs.coeff(static_cast<int>(k)) + rhs.coeff(static_cast<int>(k));
  }
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& lhs, const Polynomial& rhs) {
  return lhs + (-1.0) * rhs;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.coeffs_.empty() || rhs.coeffs_.empty()) return Polynomial{};
  std::vector<double> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial operator*(double scalar, const Polynomial& p) {
  std::vector<double> out = p.coeffs_;
  for (double& c : out) c *= scalar;
  return Polynomial(std::move(out));
}

std::vector<double> quadratic_roots(double c0, double c1, double c2) {
  if (c2 == 0.0) {
    if (c1 == 0.0) return {};
    return {-c0 / c1};
  }
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc < 0.0) return {};
  const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
  std::vector<double> roots;
  roots.push_back(q / c2);
  if (q != 0.0) roots.push_back(c0 / q);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> cubic_critical_points(const Polynomial& cubic, double lo, double hi) {
  if (cubic.degree() > 3) throw DomainError("expected a polynomial of degree <= 3");
  const Polynomial slope = cubic.derivative();
  std::vector<double> inside;
  for (double x : quadratic_roots(slope.coeff(0), slope.coeff(1), slope.coeff(2))) {
    if (x >= lo && x <= hi) inside.push_back(x);
  }
  return inside;
}

}  // namespace freeplate
