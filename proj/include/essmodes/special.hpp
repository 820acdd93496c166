#pragma once

namespace essmodes {

// Closed form of int_{-inf}^{inf} t^n exp(-a t^2) dt for even n >= 0, a > 0:
// (n-1)!! sqrt(pi) / (2^(n/2) a^((n+1)/2)).
// Odd n throws std::invalid_argument rather than returning zero.
double gaussian_moment(int n, double a);

// Upper-tail probability Q(dof/2, statistic/2) of the chi-square distribution.
double chi_square_p_value(double statistic, int dof);

}  // namespace essmodes
