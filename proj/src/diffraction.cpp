#include "essmodes/diffraction.hpp"

#include "essmodes/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace essmodes {

void SlitGeometry::validate() const {
  if (!(width > 0.0) || !(separation > width))
    throw std::invalid_argument("SlitGeometry: need 0 < slit width < slit separation");
  if (!(screen_distance > 0.0)) throw std::invalid_argument("SlitGeometry: screen distance must be > 0");
  if (!(screen_half_width > 0.0))
    throw std::invalid_argument("SlitGeometry: screen half-width must be > 0");
  if (screen_points < 16) throw std::invalid_argument("SlitGeometry: screen resolution must be >= 16");
}

bool SlitGeometry::paraxial_warning() const noexcept {
  return screen_half_width / screen_distance > 0.2;
}

void SourceSpectrum::validate() const {
  if (!(omega_0 > 0.0) || !(sigma_omega > 0.0))
    throw std::invalid_argument("SourceSpectrum: omega_0 and sigma_omega must be > 0");
  if (!(omega_0 - 5.0 * sigma_omega > 0.0))
    throw std::invalid_argument("SourceSpectrum: omega_0 - 5 sigma_omega must be > 0");
  if (!std::isfinite(amplitude)) throw std::invalid_argument("SourceSpectrum: amplitude must be finite");
  if (omega_points < 2) throw std::invalid_argument("SourceSpectrum: need >= 2 frequency points");
}

NormalStateField::NormalStateField(SlitGeometry geometry, SourceSpectrum spectrum, Grid1D x,
                                   Grid1D omega, std::vector<std::complex<double>> values)
    : geometry_(geometry),
      spectrum_(spectrum),
      x_(std::move(x)),
      omega_(std::move(omega)),
      values_(std::move(values)) {
  if (values_.size() != x_.size() * omega_.size())
    throw std::invalid_argument("NormalStateField: amplitude table does not match the grids");
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("NormalStateField: non-finite amplitude");
}

NormalStateField NormalStateField::scaled(double factor) const {
  auto values = values_;
  for (auto& v : values) v *= factor;
  auto spectrum = spectrum_;
  spectrum.amplitude *= factor;
  return {geometry_, spectrum, x_, omega_, std::move(values)};
}

Grid1D screen_grid(const SlitGeometry& g) {
  return Grid1D::uniform(-g.screen_half_width, g.screen_half_width, g.screen_points);
}

Grid1D spectral_grid(const SourceSpectrum& s) {
  return Grid1D::uniform(s.omega_0 - 5.0 * s.sigma_omega, s.omega_0 + 5.0 * s.sigma_omega,
                         s.omega_points);
}

std::complex<double> two_slit_amplitude(const SlitGeometry& g, const SourceSpectrum& s, double x,
                                        double omega) {
  const double k_over_2l = omega / (2.0 * g.screen_distance);
  const double u_sep = k_over_2l * g.separation * x;
  const double u_width = k_over_2l * g.width * x;
  const double sinc = u_width == 0.0 ? 1.0 : std::sin(u_width) / u_width;
  const double dw = omega - s.omega_0;
  const double envelope = std::exp(-dw * dw / (2.0 * s.sigma_omega * s.sigma_omega));
  return s.amplitude * envelope * std::cos(u_sep) * sinc;
}

NormalStateField synthesize_field(const SlitGeometry& g, const SourceSpectrum& s) {
  g.validate();
  s.validate();
  return synthesize_field(g, s, screen_grid(g), spectral_grid(s));
}

NormalStateField synthesize_field(const SlitGeometry& g, const SourceSpectrum& s, const Grid1D& x,
                                  const Grid1D& omega, unsigned workers) {
  g.validate();
  s.validate();
  std::vector<std::complex<double>> values(x.size() * omega.size());
  parallel_for(x.size(), workers, [&](std::size_t ix) {
    for (std::size_t iw = 0; iw < omega.size(); ++iw)
      values[ix * omega.size() + iw] = two_slit_amplitude(g, s, x[ix], omega[iw]);
  });
  return {g, s, x, omega, std::move(values)};
}

double total_action(const NormalStateField& f, double eps0) {
  const auto wx = f.x().trapezoid_weights();
  const auto ww = f.omega().trapezoid_weights();
  double sum = 0.0;
  for (std::size_t ix = 0; ix < wx.size(); ++ix) {
    double row = 0.0;
    for (std::size_t iw = 0; iw < ww.size(); ++iw) row += ww[iw] * f.intensity(ix, iw);
    sum += wx[ix] * row;
  }
  return eps0 * sum;
}

std::vector<double> spectral_marginal(const NormalStateField& f) {
  const auto ww = f.omega().trapezoid_weights();
  std::vector<double> out(f.x().size(), 0.0);
  for (std::size_t ix = 0; ix < out.size(); ++ix)
    for (std::size_t iw = 0; iw < ww.size(); ++iw) out[ix] += ww[iw] * f.intensity(ix, iw);
  return out;
}

Vec3 screen_point(const SlitGeometry& g, double x) { return {x, 0.0, g.screen_distance}; }

}  // namespace essmodes
