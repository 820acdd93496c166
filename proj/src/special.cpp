#include "essmodes/special.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace essmodes {

double gaussian_moment(int n, double a) {
  if (n < 0) throw std::invalid_argument("gaussian_moment: n must be non-negative");
  if (n % 2 != 0) throw std::invalid_argument("gaussian_moment: odd moment requested");
  if (!(a > 0.0)) throw std::invalid_argument("gaussian_moment: a must be positive");
  double double_factorial = 1.0;
  for (int k = n - 1; k > 1; k -= 2) double_factorial *= k;
  return double_factorial * std::sqrt(std::numbers::pi) /
         (std::pow(2.0, n / 2) * std::pow(a, 0.5 * (n + 1)));
}

double chi_square_p_value(double statistic, int dof) {
  if (dof < 1) throw std::invalid_argument("chi_square_p_value: dof must be >= 1");
  if (!(statistic >= 0.0)) throw std::invalid_argument("chi_square_p_value: negative statistic");
  if (statistic == 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

}  // namespace essmodes
