#pragma once

#include <memory>
#include <span>
#include <string>

namespace freeplate {

/// Arithmetic/logical expression in the coordinates of a point.
///
/// Variables are x, y, z (first three coordinates) or x1..xN. Operators, by
/// increasing precedence: `||` / `or`, `&&` / `and`, `!` / `not`, comparisons
/// (< <= > >= == !=), `+ -`, `* /`, unary minus, `^` (right associative).
/// Functions: abs sqrt exp log sin cos tan min max pow. Constant: pi.
/// Comparisons and logical operators yield 1 or 0.
class Expression {
 public:
  /// Throws ParseError with the column of the first offending token.
  static Expression parse(const std::string& text, int dim);

  double operator()(std::span<const double> x) const;
  /// Nonzero and not NaN.
  bool holds(std::span<const double> x) const;

  int dim() const noexcept { return dim_; }
  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  int dim_ = 0;
  std::string text_;
};

}  // namespace freeplate
