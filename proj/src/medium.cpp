#include "essmodes/medium.hpp"

#include "essmodes/parallel.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <type_traits>

namespace essmodes {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using cd = std::complex<double>;

cd susceptibility(const DispersiveFactor& f, double w) {
  return std::visit(overloaded{
                        [](const ConstantScalar& c) { return cd(c.relative - 1.0); },
                        [w](const Drude& d) {
                          const cd den(w * w, d.gamma * w);
                          if (den == cd(0.0))
                            throw std::domain_error("Drude permittivity is singular at omega = 0");
                          return -d.omega_p * d.omega_p / den;
                        },
                        [w](const Lorentz& l) {
                          const cd den(l.omega_0 * l.omega_0 - w * w, -l.gamma * w);
                          if (den == cd(0.0))
                            throw std::domain_error("lossless Lorentz permittivity is singular");
                          return l.strength * l.omega_0 * l.omega_0 / den;
                        },
                    },
                    f);
}

// w * susceptibility(w)
cd omega_susceptibility(const DispersiveFactor& f, double w) {
  if (const auto* d = std::get_if<Drude>(&f)) {
    const cd den(w, d->gamma);
    if (den == cd(0.0))
      throw std::domain_error("lossless Drude w*eps is singular at omega = 0");
    return -d->omega_p * d->omega_p / den;
  }
  return w * susceptibility(f, w);
}

// The top-level dispersive laws share their formulas with DispersiveFactor.
std::optional<DispersiveFactor> as_factor(const MediumModel& m) {
  if (const auto* c = std::get_if<ConstantScalar>(&m)) return DispersiveFactor{*c};
  if (const auto* d = std::get_if<Drude>(&m)) return DispersiveFactor{*d};
  if (const auto* l = std::get_if<Lorentz>(&m)) return DispersiveFactor{*l};
  return std::nullopt;
}

void validate_factor(const DispersiveFactor& f) {
  std::visit(overloaded{
                 [](const ConstantScalar& c) {
                   if (!std::isfinite(c.relative))
                     throw std::invalid_argument("ConstantScalar: relative value must be finite");
                 },
                 [](const Drude& d) {
                   if (!(d.omega_p >= 0.0) || !(d.gamma >= 0.0))
                     throw std::invalid_argument("Drude: omega_p and gamma must be >= 0");
                 },
                 [](const Lorentz& l) {
                   if (!(l.omega_0 >= 0.0) || !(l.gamma >= 0.0) || !std::isfinite(l.strength))
                     throw std::invalid_argument("Lorentz: omega_0, gamma must be >= 0");
                 },
             },
             f);
}

}  // namespace

double SmoothBump::operator()(const Vec3& x) const {
  const double dx = x[0] - center[0];
  const double dy = x[1] - center[1];
  const double dz = x[2] - center[2];
  const double q = (dx * dx + dy * dy + dz * dz) / (radius * radius);
  if (q >= 1.0) return 0.0;
  return amplitude * std::exp(1.0 - 1.0 / (1.0 - q));
}

void validate(const MediumModel& m) {
  if (auto f = as_factor(m)) {
    validate_factor(*f);
    return;
  }
  if (const auto* s = std::get_if<Separable>(&m)) {
    if (!(s->profile.radius > 0.0) || !std::isfinite(s->profile.radius))
      throw std::invalid_argument("Separable: profile radius must be positive");
    if (!std::isfinite(s->profile.amplitude))
      throw std::invalid_argument("Separable: profile amplitude must be finite");
    validate_factor(s->factor);
  }
}

cd eval_eps_hat(const MediumModel& m, const Vec3& x, double omega) {
  if (std::holds_alternative<Vacuum>(m)) return 1.0;
  if (auto f = as_factor(m)) return 1.0 + susceptibility(*f, omega);
  const auto& s = std::get<Separable>(m);
  const double weight = s.profile(x);
  if (weight == 0.0) return 1.0;
  return 1.0 + weight * susceptibility(s.factor, omega);
}

cd eval_omega_eps_hat(const MediumModel& m, const Vec3& x, double omega) {
  if (std::holds_alternative<Vacuum>(m)) return omega;
  if (auto f = as_factor(m)) return omega + omega_susceptibility(*f, omega);
  const auto& s = std::get<Separable>(m);
  const double weight = s.profile(x);
  if (weight == 0.0) return omega;
  return omega + weight * omega_susceptibility(s.factor, omega);
}

cd eval_omega_susceptibility(const DispersiveFactor& f, double omega) {
  return omega_susceptibility(f, omega);
}

bool is_spatially_uniform(const MediumModel& m) { return !std::holds_alternative<Separable>(m); }

std::vector<double> real_poles(const MediumModel& m) {
  std::optional<DispersiveFactor> f = as_factor(m);
  if (const auto* s = std::get_if<Separable>(&m)) f = s->factor;
  if (!f) return {};
  if (const auto* d = std::get_if<Drude>(&*f); d && d->gamma == 0.0 && d->omega_p != 0.0)
    return {0.0};
  if (const auto* l = std::get_if<Lorentz>(&*f);
      l && l->gamma == 0.0 && l->strength != 0.0 && l->omega_0 != 0.0)
    return {-l->omega_0, l->omega_0};
  return {};
}

void ResonanceSearch::validate() const {
  if (!(omega_min > 0.0) || !(omega_max > omega_min) || !std::isfinite(omega_max))
    throw std::invalid_argument("ResonanceSearch: need 0 < omega_min < omega_max");
  if (omega_samples < 3) throw std::invalid_argument("ResonanceSearch: omega_samples must be >= 3");
  for (std::size_t i = 0; i < 3; ++i) {
    if (x_samples[i] < 1) throw std::invalid_argument("ResonanceSearch: x_samples must be >= 1");
    if (!(x_max[i] >= x_min[i])) throw std::invalid_argument("ResonanceSearch: x_max < x_min");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("ResonanceSearch: tolerance must be > 0");
}

namespace {

double magnitude_at(const MediumModel& m, const Vec3& x, double w) {
  try {
    return std::abs(eval_omega_eps_hat(m, x, w));
  } catch (const std::domain_error&) {
    return std::numeric_limits<double>::infinity();
  }
}

std::vector<ResonancePoint> scan_frequencies(const MediumModel& m, const Vec3& x,
                                             const ResonanceSearch& s) {
  const std::size_t n = s.omega_samples;
  std::vector<double> w(n);
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = s.omega_min + (s.omega_max - s.omega_min) * static_cast<double>(k) /
                             static_cast<double>(n - 1);
    v[k] = magnitude_at(m, x, w[k]);
  }

  std::vector<ResonancePoint> found;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (!(v[k] <= v[k - 1] && v[k] < v[k + 1])) continue;
    const double lo = w[k - 1];
    const double hi = w[k + 1];
    const cd f_lo = eval_omega_eps_hat(m, x, lo);
    const cd f_hi = eval_omega_eps_hat(m, x, hi);
    double root = w[k];
    const bool lossless = f_lo.imag() == 0.0 && f_hi.imag() == 0.0 &&
                          eval_omega_eps_hat(m, x, w[k]).imag() == 0.0;
    if (lossless && (f_lo.real() < 0.0) != (f_hi.real() < 0.0)) {
      auto re = [&](double u) { return eval_omega_eps_hat(m, x, u).real(); };
      std::uintmax_t iterations = 200;
      const auto bracket = boost::math::tools::toms748_solve(
          re, lo, hi, f_lo.real(), f_hi.real(), boost::math::tools::eps_tolerance<double>(52),
          iterations);
      root = 0.5 * (bracket.first + bracket.second);
    } else {
      auto objective = [&](double u) { return std::norm(eval_omega_eps_hat(m, x, u)); };
      root = boost::math::tools::brent_find_minima(objective, lo, hi, 52).first;
    }
    const double residual = std::abs(eval_omega_eps_hat(m, x, root));
    if (residual <= s.tolerance) found.push_back({x, root, residual});
  }
  return found;
}

}  // namespace

std::vector<ResonancePoint> find_essential_resonance(const MediumModel& m,
                                                     const ResonanceSearch& search,
                                                     unsigned workers) {
  validate(m);
  search.validate();

  std::vector<Vec3> points;
  auto coord = [&](std::size_t axis, std::size_t i) {
    const std::size_t n = search.x_samples[axis];
    if (n == 1) return search.x_min[axis];
    return search.x_min[axis] + (search.x_max[axis] - search.x_min[axis]) *
                                    static_cast<double>(i) / static_cast<double>(n - 1);
  };
  for (std::size_t i = 0; i < search.x_samples[0]; ++i)
    for (std::size_t j = 0; j < search.x_samples[1]; ++j)
      for (std::size_t k = 0; k < search.x_samples[2]; ++k)
        points.push_back({coord(0, i), coord(1, j), coord(2, k)});

  std::vector<std::vector<ResonancePoint>> per_point(points.size());
  if (is_spatially_uniform(m)) {
    const auto roots = scan_frequencies(m, points.front(), search);
    for (std::size_t p = 0; p < points.size(); ++p) {
      for (auto r : roots) {
        r.x_c = points[p];
        per_point[p].push_back(r);
      }
    }
  } else {
    parallel_for(points.size(), workers,
                 [&](std::size_t p) { per_point[p] = scan_frequencies(m, points[p], search); });
  }

  std::vector<ResonancePoint> out;
  for (auto& v : per_point) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace essmodes
