#pragma once

#include <functional>

namespace freeplate {

struct IntegralEstimate {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (15/31) quadrature of f on [lo, hi].
IntegralEstimate integrate_interval(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    double rel_tol = 1e-12);

}  // namespace freeplate
