#include "freeplate/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace freeplate {

IntegralEstimate integrate_interval(const std::function<double(double)>& f,
                                    double lo, double hi, double rel_tol) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  IntegralEstimate out;
  out.value = Rule::integrate(f, lo, hi, 20, rel_tol, &out.error);
  return out;
}

}  // namespace freeplate
