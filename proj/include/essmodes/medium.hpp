#pragma once

// Frequency-domain constitutive models eps_hat(x, w), mu_hat(x, w) in relative
// (natural) units, and the search for essential resonances w eps_hat = 0.

#include "essmodes/modes.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

namespace essmodes {

struct Vacuum {};

struct ConstantScalar {
  double relative = 1.0;
};

// 1 - w_p^2 / (w^2 + i gamma w)
struct Drude {
  double omega_p = 0.0;
  double gamma = 0.0;
};

// 1 + strength w_0^2 / (w_0^2 - w^2 - i gamma w)
struct Lorentz {
  double omega_0 = 0.0;
  double strength = 0.0;
  double gamma = 0.0;
};

// amplitude * exp(1 - 1 / (1 - (r/R)^2)) inside radius R of `center`, zero
// outside. Smooth with compact support; equals `amplitude` at the centre.
struct SmoothBump {
  Vec3 center{0.0, 0.0, 0.0};
  double radius = 1.0;
  double amplitude = 1.0;

  [[nodiscard]] double operator()(const Vec3& x) const;
};

// Susceptibility d(w) = eps_inner(w) - 1 of the wrapped dispersive law.
using DispersiveFactor = std::variant<ConstantScalar, Drude, Lorentz>;

// 1 + s(x) d(w)
struct Separable {
  SmoothBump profile;
  DispersiveFactor factor;
};

using MediumModel = std::variant<Vacuum, ConstantScalar, Drude, Lorentz, Separable>;

struct Material {
  MediumModel permittivity = Vacuum{};
  MediumModel permeability = Vacuum{};
};

// Throws std::invalid_argument on negative rates or a degenerate profile.
void validate(const MediumModel& m);

// Throws std::domain_error at a pole (w = 0 for Drude, w = +-w_0 for lossless Lorentz).
[[nodiscard]] std::complex<double> eval_eps_hat(const MediumModel& m, const Vec3& x, double omega);

// w * eps_hat(x, w), written so the lossy Drude value stays finite at w = 0.
[[nodiscard]] std::complex<double> eval_omega_eps_hat(const MediumModel& m, const Vec3& x,
                                                      double omega);

// w * d(w) for a dispersive factor, finite at w = 0 for lossy Drude.
[[nodiscard]] std::complex<double> eval_omega_susceptibility(const DispersiveFactor& f,
                                                             double omega);

[[nodiscard]] bool is_spatially_uniform(const MediumModel& m);

// Real frequencies at which w eps_hat(w) is singular.
[[nodiscard]] std::vector<double> real_poles(const MediumModel& m);

struct ResonancePoint {
  Vec3 x_c;
  double omega_c;
  double residual;  // |w_c eps_hat(x_c, w_c)|
};

struct ResonanceSearch {
  Vec3 x_min{0.0, 0.0, 0.0};
  Vec3 x_max{0.0, 0.0, 0.0};
  std::array<std::size_t, 3> x_samples{1, 1, 1};
  double omega_min = 0.0;  // exclusive of zero: must be > 0
  double omega_max = 0.0;
  std::size_t omega_samples = 2001;
  double tolerance = 1e-6;

  void validate() const;
};

// Local minima of |w eps_hat| on the real frequency axis with value below the
// tolerance, one scan per sampled spatial point. Lossless sign changes are
// refined by bracketing root solves; lossy minima by Brent minimisation.
// Uniform media are scanned once and the roots paired with every sample.
// Results are ordered by spatial sample, then by frequency.
[[nodiscard]] std::vector<ResonancePoint> find_essential_resonance(const MediumModel& m,
                                                                   const ResonanceSearch& search,
                                                                   unsigned workers = 1);

}  // namespace essmodes
