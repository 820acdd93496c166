#include "essmodes/weyl.hpp"

#include "essmodes/parallel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace essmodes {

namespace {

using cd = std::complex<double>;

const MediumModel& active_model(const ResidualQuery& q) {
  return q.mode.kind == ModeKind::electric ? q.material.permittivity : q.material.permeability;
}

// int fn(w) |phi_hat(w)|^2 dw in the scaled variable w = w_c + s / sqrt(beta).
template <typename Fn>
auto integrate_spectral(const ResidualQuery& q, Fn fn) {
  const auto& t = q.mode.temporal;
  const double scale = 1.0 / std::sqrt(t.beta());
  const double c2 = 2.0 / std::sqrt(std::numbers::pi);
  Interval range{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  const auto poles = real_poles(active_model(q));
  if (!poles.empty()) {
    for (double p : poles) {
      if (std::abs(p - t.omega_c()) <= kPoleWindow * scale)
        throw std::domain_error("residual_sq: real pole of w*eps_hat inside the spectral window");
    }
    range = {-kPoleWindow, kPoleWindow};
  }
  return integrate_1d(
             [&](double s) { return fn(t.omega_c() + s * scale) * (c2 * s * s * std::exp(-s * s)); },
             range, q.quadrature)
      .value;
}

struct SpatialMoments {
  double first;   // int s |Psi|^2
  double second;  // int s^2 |Psi|^2
};

SpatialMoments profile_moments(const Separable& sep, const SpatialMode& mode,
                               const QuadratureSpec& spec) {
  const auto& bump = sep.profile;
  if (bump.center == mode.center()) {
    auto radial = [&](double r) {
      return bump({bump.center[0] + r, bump.center[1], bump.center[2]});
    };
    return {sift_psi_radial(radial, mode, spec),
            sift_psi_radial([&](double r) { return radial(r) * radial(r); }, mode, spec)};
  }
  return {sift_psi([&](const Vec3& x) { return bump(x); }, mode, spec),
          sift_psi([&](const Vec3& x) { return bump(x) * bump(x); }, mode, spec)};
}

}  // namespace

double residual_sq(const ResidualQuery& q) {
  const auto& model = active_model(q);
  validate(model);
  const cd lambda = q.lambda;
  const Vec3& xc = q.mode.spatial.center();

  if (is_spatially_uniform(model)) {
    return integrate_spectral(q, [&](double w) {
      return std::norm(cd(0.0, -1.0) * eval_omega_eps_hat(model, xc, w) - lambda);
    });
  }

  const auto& sep = std::get<Separable>(model);
  const auto m = profile_moments(sep, q.mode.spatial, q.quadrature);
  // |a + s b|^2 with a = -i w - lambda, b = -i w d(w), averaged over |Psi|^2.
  return integrate_spectral(q, [&](double w) {
    const cd a = cd(0.0, -w) - lambda;
    const cd b = cd(0.0, -1.0) * eval_omega_susceptibility(sep.factor, w);
    return std::norm(a) + 2.0 * m.first * (a * std::conj(b)).real() + m.second * std::norm(b);
  });
}

double limit_target(const ResidualQuery& q) {
  const auto& t = q.mode.temporal;
  const cd w_eps = eval_omega_eps_hat(active_model(q), q.mode.spatial.center(), t.omega_c());
  return std::norm(q.lambda + cd(0.0, 1.0) * w_eps);
}

cd optimal_lambda(const ResidualQuery& q) {
  const auto& model = active_model(q);
  validate(model);
  const Vec3& xc = q.mode.spatial.center();
  if (is_spatially_uniform(model)) {
    return integrate_spectral(
        q, [&](double w) { return cd(0.0, -1.0) * eval_omega_eps_hat(model, xc, w); });
  }
  const auto& sep = std::get<Separable>(model);
  const auto m = profile_moments(sep, q.mode.spatial, q.quadrature);
  return integrate_spectral(q, [&](double w) {
    return cd(0.0, -w) + m.first * cd(0.0, -1.0) * eval_omega_susceptibility(sep.factor, w);
  });
}

std::vector<ConvergenceRecord> convergence_sweep(const ResidualQuery& base,
                                                 const std::vector<double>& alphas,
                                                 const std::vector<double>& betas,
                                                 unsigned workers) {
  if (alphas.empty() || betas.empty())
    throw std::invalid_argument("convergence_sweep: alpha and beta lists must be non-empty");
  for (double a : alphas)
    if (!(a > 0.0)) throw std::invalid_argument("convergence_sweep: alpha values must be > 0");
  for (double b : betas)
    if (!(b > 0.0)) throw std::invalid_argument("convergence_sweep: beta values must be > 0");

  std::vector<ConvergenceRecord> records(alphas.size() * betas.size());
  parallel_for(records.size(), workers, [&](std::size_t i) {
    const double alpha = alphas[i / betas.size()];
    const double beta = betas[i % betas.size()];
    ResidualQuery q = base;
    q.mode.spatial = SpatialMode(alpha, base.mode.spatial.center());
    q.mode.temporal = TemporalMode(beta, base.mode.temporal.omega_c());
    auto& rec = records[i];
    rec.alpha = alpha;
    rec.beta = beta;
    try {
      rec.target = limit_target(q);
      rec.residual_sq = residual_sq(q);
      rec.error = std::abs(rec.residual_sq - rec.target);
    } catch (const std::exception& e) {
      rec.residual_sq = std::numeric_limits<double>::quiet_NaN();
      rec.error = std::numeric_limits<double>::quiet_NaN();
      rec.failure = e.what();
    }
  });
  return records;
}

}  // namespace essmodes
