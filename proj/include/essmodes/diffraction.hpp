#pragma once

// Far-field (Fraunhofer) two-slit field on a one-dimensional detector screen:
//
//   E(x, w) = A S(w) cos(w d x / (2 c L)) sinc(w a x / (2 c L))
//
// with a Gaussian spectral envelope S(w) = exp(-(w - w0)^2 / (2 sigma^2)).
// Natural units (c = 1) throughout.

#include "essmodes/modes.hpp"
#include "essmodes/quadrature.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace essmodes {

struct SlitGeometry {
  double separation = 0.0;         // d
  double width = 0.0;              // a
  double screen_distance = 0.0;    // L
  double screen_half_width = 0.0;  // X, screen spans [-X, X]
  std::size_t screen_points = 0;

  void validate() const;
  // X / L above 0.2 leaves the paraxial regime.
  [[nodiscard]] bool paraxial_warning() const noexcept;
};

struct SourceSpectrum {
  double omega_0 = 0.0;
  double sigma_omega = 0.0;
  double amplitude = 1.0;
  std::size_t omega_points = 0;

  void validate() const;
};

class NormalStateField {
public:
  NormalStateField(SlitGeometry geometry, SourceSpectrum spectrum, Grid1D x, Grid1D omega,
                   std::vector<std::complex<double>> values);

  [[nodiscard]] const SlitGeometry& geometry() const noexcept { return geometry_; }
  [[nodiscard]] const SourceSpectrum& spectrum() const noexcept { return spectrum_; }
  [[nodiscard]] const Grid1D& x() const noexcept { return x_; }
  [[nodiscard]] const Grid1D& omega() const noexcept { return omega_; }
  [[nodiscard]] const std::vector<std::complex<double>>& values() const noexcept { return values_; }

  [[nodiscard]] std::complex<double> at(std::size_t ix, std::size_t iw) const {
    return values_[ix * omega_.size() + iw];
  }
  [[nodiscard]] double intensity(std::size_t ix, std::size_t iw) const {
    return std::norm(at(ix, iw));
  }

  // Same geometry and grids with every amplitude multiplied by `factor`.
  [[nodiscard]] NormalStateField scaled(double factor) const;

private:
  SlitGeometry geometry_;
  SourceSpectrum spectrum_;
  Grid1D x_;
  Grid1D omega_;
  std::vector<std::complex<double>> values_;  // x-major
};

// Screen grid [-X, X] and spectral grid w0 +- 5 sigma at the configured resolutions.
[[nodiscard]] Grid1D screen_grid(const SlitGeometry& g);
[[nodiscard]] Grid1D spectral_grid(const SourceSpectrum& s);

[[nodiscard]] std::complex<double> two_slit_amplitude(const SlitGeometry& g,
                                                      const SourceSpectrum& s, double x,
                                                      double omega);

[[nodiscard]] NormalStateField synthesize_field(const SlitGeometry& g, const SourceSpectrum& s);
[[nodiscard]] NormalStateField synthesize_field(const SlitGeometry& g, const SourceSpectrum& s,
                                                const Grid1D& x, const Grid1D& omega,
                                                unsigned workers = 1);

// eps0 * int int |E|^2 dx dw by the trapezoid rule, unit transverse depth.
[[nodiscard]] double total_action(const NormalStateField& f, double eps0 = 1.0);

// int |E(x_i, w)|^2 dw at each screen node.
[[nodiscard]] std::vector<double> spectral_marginal(const NormalStateField& f);

// Screen position of the detection point in 3D: (x, 0, L).
[[nodiscard]] Vec3 screen_point(const SlitGeometry& g, double x);

}  // namespace essmodes
