#include "essmodes/modes.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace essmodes {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// (2/3)^(1/2) pi^(-3/4)
const double kPsiPrefactor = std::sqrt(2.0 / 3.0) * std::pow(kPi, -0.75);
// sqrt(2) pi^(-1/4)
const double kPhiPrefactor = std::sqrt(2.0) * std::pow(kPi, -0.25);

// Half-width of the truncation box in units of 1/sqrt(alpha).
constexpr double kBoxHalfWidth = 8.0;

}  // namespace

SpatialMode::SpatialMode(double alpha, Vec3 center) : alpha_(alpha), center_(center) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("SpatialMode: alpha must be positive and finite");
  for (double c : center)
    if (!std::isfinite(c)) throw std::invalid_argument("SpatialMode: centre must be finite");
}

double SpatialMode::width() const noexcept { return 1.0 / std::sqrt(alpha_); }

TemporalMode::TemporalMode(double beta, double omega_c) : beta_(beta), omega_c_(omega_c) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("TemporalMode: beta must be positive and finite");
  if (!std::isfinite(omega_c)) throw std::invalid_argument("TemporalMode: omega_c must be finite");
}

Vec3 eval_psi(const SpatialMode& p, const Vec3& x) {
  const double a = p.alpha();
  Vec3 d{x[0] - p.center()[0], x[1] - p.center()[1], x[2] - p.center()[2]};
  const double r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
  const double scale = kPsiPrefactor * std::pow(a, 1.25) * std::exp(-0.5 * a * r2);
  return {scale * d[0], scale * d[1], scale * d[2]};
}

double psi_sq_at_radius(const SpatialMode& p, double r) {
  const double a = p.alpha();
  const double amp = kPsiPrefactor * std::pow(a, 1.25) * r * std::exp(-0.5 * a * r * r);
  return amp * amp;
}

std::complex<double> eval_phi(const TemporalMode& p, double t) {
  const double b = p.beta();
  const double envelope = kPhiPrefactor * std::pow(b, -0.75) * t * std::exp(-t * t / (2.0 * b));
  // i * envelope * exp(-i w_c t)
  const double phase = -p.omega_c() * t;
  return {-envelope * std::sin(phase), envelope * std::cos(phase)};
}

double eval_phi_hat(const TemporalMode& p, double omega) {
  const double b = p.beta();
  const double d = omega - p.omega_c();
  return kPhiPrefactor * std::pow(b, 0.75) * d * std::exp(-0.5 * b * d * d);
}

SixVector eval_essential_mode(const EssentialModeParams& p, const Vec3& x, double t) {
  const auto psi = eval_psi(p.spatial, x);
  const auto phi = eval_phi(p.temporal, t);
  SixVector out{};
  const std::size_t offset = p.kind == ModeKind::electric ? 0 : 3;
  for (std::size_t i = 0; i < 3; ++i) out[offset + i] = phi * psi[i];
  return out;
}

SixVector eval_essential_mode_hat(const EssentialModeParams& p, const Vec3& x, double omega) {
  const auto psi = eval_psi(p.spatial, x);
  const double phi_hat = eval_phi_hat(p.temporal, omega);
  SixVector out{};
  const std::size_t offset = p.kind == ModeKind::electric ? 0 : 3;
  for (std::size_t i = 0; i < 3; ++i) out[offset + i] = phi_hat * psi[i];
  return out;
}

double norm_sq_psi(const SpatialMode& p, const QuadratureSpec& spec) {
  return sift_psi_radial([](double) { return 1.0; }, p, spec);
}

double sift_psi_radial(const std::function<double(double)>& f, const SpatialMode& p,
                       const QuadratureSpec& spec) {
  // r = s / sqrt(alpha): |Psi|^2 r^2 dr becomes alpha-free in s.
  const double w = p.width();
  const double c2 = kPsiPrefactor * kPsiPrefactor;
  return integrate_radial_3d(
             [&](double s) { return f(s * w) * c2 * s * s * std::exp(-s * s); }, spec)
      .value;
}

double sift_psi(const std::function<double(const Vec3&)>& f, const SpatialMode& p,
                const QuadratureSpec& spec) {
  const double w = p.width();
  const Vec3& c = p.center();
  const double c2 = kPsiPrefactor * kPsiPrefactor;
  const Interval box{-kBoxHalfWidth, kBoxHalfWidth};
  auto inner_spec = spec;
  inner_spec.abs_tol = spec.abs_tol * 1e-2;

  auto over_z = [&](double sx, double sy) {
    return integrate_1d(
               [&](double sz) {
                 const double s2 = sx * sx + sy * sy + sz * sz;
                 const Vec3 x{c[0] + sx * w, c[1] + sy * w, c[2] + sz * w};
                 return f(x) * c2 * s2 * std::exp(-s2);
               },
               box, inner_spec)
        .value;
  };
  auto over_yz = [&](double sx) {
    return integrate_1d([&](double sy) { return over_z(sx, sy); }, box, inner_spec).value;
  };
  return integrate_1d(over_yz, box, spec).value;
}

double norm_sq_phi(const TemporalMode& p, const QuadratureSpec& spec) {
  // t = s sqrt(beta)
  const double sb = std::sqrt(p.beta());
  return integrate_1d(
             [&](double s) { return std::norm(eval_phi(p, s * sb)) * sb; }, {-kInf, kInf}, spec)
      .value;
}

double norm_sq_phi_hat(const TemporalMode& p, const QuadratureSpec& spec) {
  return sift_phi_hat([](double) { return 1.0; }, p, spec);
}

double sift_phi_hat(const std::function<double(double)>& g, const TemporalMode& p,
                    const QuadratureSpec& spec) {
  // omega = omega_c + s / sqrt(beta)
  const double w = 1.0 / std::sqrt(p.beta());
  const double wc = p.omega_c();
  const double c2 = kPhiPrefactor * kPhiPrefactor;
  return integrate_1d([&](double s) { return g(wc + s * w) * c2 * s * s * std::exp(-s * s); },
                      {-kInf, kInf}, spec)
      .value;
}

FourierCheck fourier_consistency(const TemporalMode& p, const Grid1D& times,
                                 std::size_t frequencies) {
  const double sigma = std::sqrt(p.beta());
  if (times.front() > -6.0 * sigma || times.back() < 6.0 * sigma)
    throw std::invalid_argument(
        "fourier_consistency: time grid must span at least 12 envelope standard deviations");
  if (frequencies < 2) throw std::invalid_argument("fourier_consistency: need >= 2 frequencies");

  const double half_window = 8.0 / sigma;
  const double max_omega = std::abs(p.omega_c()) + half_window;
  const auto& t = times.nodes();
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if ((t[i + 1] - t[i]) * max_omega > kPi)
      throw std::invalid_argument("fourier_consistency: time grid too coarse for the window");
  }

  const auto weights = times.trapezoid_weights();
  std::vector<std::complex<double>> samples(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) samples[j] = weights[j] * eval_phi(p, t[j]);

  const double norm = 1.0 / std::sqrt(2.0 * kPi);
  double worst = 0.0;
  for (std::size_t k = 0; k < frequencies; ++k) {
    const double omega = p.omega_c() - half_window +
                         2.0 * half_window * static_cast<double>(k) /
                             static_cast<double>(frequencies - 1);
    std::complex<double> acc{};
    for (std::size_t j = 0; j < t.size(); ++j)
      acc += samples[j] * std::polar(1.0, omega * t[j]);
    acc *= norm;
    worst = std::max(worst, std::abs(acc - kFourierPhase * eval_phi_hat(p, omega)));
  }
  return {worst, frequencies};
}

double curl_psi_residual(const SpatialMode& p, std::span<const Vec3> probes, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("curl_psi_residual: step must be positive");
  double worst = 0.0;
  for (const auto& x : probes) {
    // d[i][j] = dPsi_j / dx_i
    double d[3][3];
    for (int i = 0; i < 3; ++i) {
      Vec3 plus = x;
      Vec3 minus = x;
      plus[i] += h;
      minus[i] -= h;
      const auto fp = eval_psi(p, plus);
      const auto fm = eval_psi(p, minus);
      for (int j = 0; j < 3; ++j) d[i][j] = (fp[j] - fm[j]) / (2.0 * h);
    }
    const double cx = d[1][2] - d[2][1];
    const double cy = d[2][0] - d[0][2];
    const double cz = d[0][1] - d[1][0];
    worst = std::max(worst, std::sqrt(cx * cx + cy * cy + cz * cz));
  }
  return worst;
}

double curl_error_scale(const SpatialMode& p) {
  return kPsiPrefactor * std::pow(p.alpha(), 2.25);
}

}  // namespace essmodes
