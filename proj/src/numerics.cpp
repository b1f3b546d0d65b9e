#include "heli/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace heli {

double sig(double x, double gamma) {
  if (x == 0.0) return 0.0;
  return std::pow(std::abs(x), gamma) * sgn(x);
}

double smooth_abs_factor(double w, double eps, double sigma) {
  const double e2 = eps * eps;
  const double s2 = sigma * sigma;
  return std::sqrt((w + s2 + e2) / ((w + e2) * (w + s2)));
}

double smooth_abs_gap(double x, double eps, double sigma) {
  const double w = x * x;
  const double e2 = eps * eps;
  const double s2 = sigma * sigma;
  const double den = (w + e2) * (w + s2);
  // w*N/D = 1 - e2*s2/D, so this equals |x| * (1 - sqrt(w*N/D)) without the
  // subtraction of nearly equal quantities.
  const double ratio = w * (w + s2 + e2) / den;
  return std::abs(x) * e2 * s2 / (den * (1.0 + std::sqrt(ratio)));
}

double smooth_abs_gap_bound(double eps, double sigma) {
  return eps * sigma / std::sqrt(eps * eps + sigma * sigma);
}

void OddRatioExponent::validate() const {
  if (num <= 0 || den <= 0)
    throw std::invalid_argument("OddRatioExponent: both integers must be positive");
  if (num % 2 == 0 || den % 2 == 0)
    throw std::invalid_argument("OddRatioExponent: both integers must be odd");
}

}  // namespace heli
