#pragma once

// Singular Weyl-sequence functions of the Maxwell operator.
//
//   Psi(alpha, x, x_c)  spatial square root of a delta function at x_c
//   phi(beta, t, w_c)   temporal sequence, with Fourier image phi_hat
//                       concentrating at angular frequency w_c
//
// Both are unit-norm for every positive sequence parameter, and their
// squared magnitudes sift point values as alpha, beta -> infinity.

#include "essmodes/quadrature.hpp"

#include <array>
#include <complex>
#include <functional>
#include <span>

namespace essmodes {

using Vec3 = std::array<double, 3>;

class SpatialMode {
public:
  // alpha in 1/m^2, must be positive and finite.
  SpatialMode(double alpha, Vec3 center);

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] const Vec3& center() const noexcept { return center_; }
  // Characteristic width 1/sqrt(alpha).
  [[nodiscard]] double width() const noexcept;

private:
  double alpha_;
  Vec3 center_;
};

class TemporalMode {
public:
  // beta in s^2, must be positive and finite; omega_c in rad/s.
  TemporalMode(double beta, double omega_c);

  [[nodiscard]] double beta() const noexcept { return beta_; }
  [[nodiscard]] double omega_c() const noexcept { return omega_c_; }

private:
  double beta_;
  double omega_c_;
};

enum class ModeKind { electric, magnetic };

struct EssentialModeParams {
  ModeKind kind;
  SpatialMode spatial;
  TemporalMode temporal;
};

using SixVector = std::array<std::complex<double>, 6>;

[[nodiscard]] Vec3 eval_psi(const SpatialMode& p, const Vec3& x);
// |Psi|^2 at distance r from the centre.
[[nodiscard]] double psi_sq_at_radius(const SpatialMode& p, double r);

[[nodiscard]] std::complex<double> eval_phi(const TemporalMode& p, double t);
[[nodiscard]] double eval_phi_hat(const TemporalMode& p, double omega);

// Electric mode puts phi*Psi in the E rows, magnetic in the H rows.
[[nodiscard]] SixVector eval_essential_mode(const EssentialModeParams& p, const Vec3& x, double t);
[[nodiscard]] SixVector eval_essential_mode_hat(const EssentialModeParams& p, const Vec3& x,
                                                double omega);

[[nodiscard]] double norm_sq_psi(const SpatialMode& p, const QuadratureSpec& spec = {});

// int f(|x - x_c|) |Psi|^2 dx for a field radially symmetric about the mode centre.
[[nodiscard]] double sift_psi_radial(const std::function<double(double)>& f, const SpatialMode& p,
                                     const QuadratureSpec& spec = {});

// int f(x) |Psi|^2 dx for a general field, integrated on the box of
// half-width 8/sqrt(alpha) around the centre.
[[nodiscard]] double sift_psi(const std::function<double(const Vec3&)>& f, const SpatialMode& p,
                              const QuadratureSpec& spec = {});

[[nodiscard]] double norm_sq_phi(const TemporalMode& p, const QuadratureSpec& spec = {});
[[nodiscard]] double norm_sq_phi_hat(const TemporalMode& p, const QuadratureSpec& spec = {});
[[nodiscard]] double sift_phi_hat(const std::function<double(double)>& g, const TemporalMode& p,
                                  const QuadratureSpec& spec = {});

// Transform convention: phi_hat(w) = (2 pi)^(-1/2) int phi(t) exp(+i w t) dt.
// Under it the transform of eval_phi equals kFourierPhase * eval_phi_hat.
inline constexpr double kFourierPhase = -1.0;

struct FourierCheck {
  double max_deviation;
  std::size_t frequencies;
};

// Trapezoid transform of eval_phi sampled on `times`, compared against
// kFourierPhase * eval_phi_hat on a uniform frequency window of
// w_c +- 8/sqrt(beta). Throws std::invalid_argument if the time grid spans
// fewer than 12 envelope standard deviations or undersamples the window.
[[nodiscard]] FourierCheck fourier_consistency(const TemporalMode& p, const Grid1D& times,
                                               std::size_t frequencies = 257);

// Max |curl Psi| over the probes using central differences with step h.
// The exact curl vanishes, so the result is pure O(h^2) discretisation error.
[[nodiscard]] double curl_psi_residual(const SpatialMode& p, std::span<const Vec3> probes,
                                       double h);

// Amplitude scale for the curl residual bound: prefactor * alpha^(9/4).
[[nodiscard]] double curl_error_scale(const SpatialMode& p);

}  // namespace essmodes
