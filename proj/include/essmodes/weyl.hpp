#pragma once

// Weyl-criterion residual ||M F - lambda F||^2 for the essential modes.
//
// The operator is applied in the frequency domain: d/dt -> -i w, so the
// diagonal block acts as multiplication by -i w eps_hat(x, w). The curl
// block annihilates phi*Psi because Psi = (x - x_c) h(|x - x_c|), so only
// the diagonal row contributes:
//
//   residual^2 = int int |-i w eps_hat(x, w) - lambda|^2 |phi_hat|^2 |Psi|^2 dx dw
//
// and its alpha, beta -> infinity limit is |lambda + i w_c eps_hat(x_c, w_c)|^2.

#include "essmodes/medium.hpp"
#include "essmodes/modes.hpp"
#include "essmodes/quadrature.hpp"

#include <complex>
#include <string>
#include <vector>

namespace essmodes {

struct ResidualQuery {
  EssentialModeParams mode;
  std::complex<double> lambda;
  Material material;
  QuadratureSpec quadrature;
};

struct ConvergenceRecord {
  double alpha = 0.0;
  double beta = 0.0;
  double residual_sq = 0.0;
  double target = 0.0;
  double error = 0.0;
  std::string failure;  // empty unless residual_sq could not be computed
};

// Frequency half-window, in units of 1/sqrt(beta), used when the medium has a
// real pole of w eps_hat. Outside it |phi_hat|^2 < 1e-25 relative.
inline constexpr double kPoleWindow = 8.0;

// Throws std::domain_error if a real pole falls inside the frequency window.
[[nodiscard]] double residual_sq(const ResidualQuery& q);

// |lambda + i w_c eps_hat(x_c, w_c)|^2 (mu_hat for magnetic modes).
[[nodiscard]] double limit_target(const ResidualQuery& q);

// The lambda minimising residual_sq: the |phi_hat Psi|^2-weighted mean of
// -i w eps_hat(x, w).
[[nodiscard]] std::complex<double> optimal_lambda(const ResidualQuery& q);

// Records are ordered alpha-major, then beta, regardless of worker count.
// A failing point is recorded with NaN residual and a message.
[[nodiscard]] std::vector<ConvergenceRecord> convergence_sweep(const ResidualQuery& base,
                                                               const std::vector<double>& alphas,
                                                               const std::vector<double>& betas,
                                                               unsigned workers = 1);

}  // namespace essmodes
