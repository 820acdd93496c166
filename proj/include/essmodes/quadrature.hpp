#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature over finite, half-infinite and
// doubly infinite intervals. Infinite ends are mapped onto a finite range
// with t = u / (1 - u^2).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace essmodes {

// Strictly increasing coordinate list (metres, seconds or rad/s depending on use).
class Grid1D {
public:
  explicit Grid1D(std::vector<double> nodes);

  static Grid1D uniform(double lo, double hi, std::size_t count);

  [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] double front() const noexcept { return nodes_.front(); }
  [[nodiscard]] double back() const noexcept { return nodes_.back(); }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return nodes_[i]; }

  // Trapezoid weights for integrating sampled values over the grid.
  [[nodiscard]] std::vector<double> trapezoid_weights() const;

private:
  std::vector<double> nodes_;
};

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  std::size_t max_panels = 1'000'000;

  void validate() const;
};

struct Interval {
  double lo;
  double hi;
};

template <typename T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  std::size_t panels = 0;
};

// Thrown when the panel budget is exhausted; carries the best estimate so far.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, std::complex<double> best, double error)
      : std::runtime_error(what), best_estimate_(best), error_estimate_(error) {}

  [[nodiscard]] std::complex<double> best_estimate() const noexcept { return best_estimate_; }
  [[nodiscard]] double error_estimate() const noexcept { return error_estimate_; }

private:
  std::complex<double> best_estimate_;
  double error_estimate_;
};

namespace detail {

inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes plus the centre.
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

inline std::complex<double> as_complex(double v) { return {v, 0.0}; }
inline std::complex<double> as_complex(const std::complex<double>& v) { return v; }

template <typename T>
struct Panel {
  double lo;
  double hi;
  T value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename T, typename F>
Panel<T> kronrod_panel(F& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const T fc = f(centre);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const T sum = f(centre - dx) + f(centre + dx);
    kronrod += sum * kKronrodWeights[j];
    if (j % 2 == 1) gauss += sum * kGaussWeights[j / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, magnitude(kronrod - gauss)};
}

template <typename F>
auto map_to_finite(F f, Interval iv) {
  using T = std::invoke_result_t<F&, double>;
  struct Mapped {
    F f;
    double lo;
    double hi;
    int kind;  // 0 finite, 1 [lo, inf), 2 (-inf, hi], 3 (-inf, inf)
    T operator()(double u) {
      if (kind == 0) return f(u);
      const double d = 1.0 - u * u;
      const double s = u / d;
      const double jac = (1.0 + u * u) / (d * d);
      if (kind == 1) return f(lo + s) * jac;
      if (kind == 2) return f(hi - s) * jac;
      return f(s) * jac;
    }
  };
  const bool lo_inf = std::isinf(iv.lo);
  const bool hi_inf = std::isinf(iv.hi);
  int kind = 0;
  Interval mapped = iv;
  if (lo_inf && hi_inf) {
    kind = 3;
    mapped = {-1.0, 1.0};
  } else if (hi_inf) {
    kind = 1;
    mapped = {0.0, 1.0};
  } else if (lo_inf) {
    kind = 2;
    mapped = {0.0, 1.0};
  }
  return std::make_pair(Mapped{std::move(f), iv.lo, iv.hi, kind}, mapped);
}

// Initial breakpoints in the mapped variable. Infinite ranges are seeded
// geometrically towards u = 0 and u = 1 so narrow features at either scale
// are not straddled by a single panel.
inline std::vector<double> initial_breaks(Interval mapped, bool infinite) {
  if (!infinite) return {mapped.lo, mapped.hi};
  std::vector<double> half = {0.0};
  for (int k = 10; k >= 1; --k) half.push_back(std::pow(10.0, -k));
  half.push_back(0.5);
  for (int k = 1; k <= 10; ++k) half.push_back(1.0 - std::pow(10.0, -k));
  half.push_back(1.0);
  if (mapped.lo == 0.0) return half;
  std::vector<double> full;
  for (auto it = half.rbegin(); it != half.rend(); ++it) full.push_back(-*it);
  full.insert(full.end(), half.begin() + 1, half.end());
  return full;
}

}  // namespace detail

// Integrates f over the interval. f may return double or std::complex<double>.
// The returned error is the sum of per-panel |Kronrod - Gauss| differences.
template <typename F>
auto integrate_1d(F f, Interval interval, const QuadratureSpec& spec = {})
    -> QuadratureResult<std::invoke_result_t<F&, double>> {
  using T = std::invoke_result_t<F&, double>;
  static_assert(std::is_same_v<T, double> || std::is_same_v<T, std::complex<double>>,
                "integrand must return double or std::complex<double>");
  spec.validate();
  if (std::isnan(interval.lo) || std::isnan(interval.hi))
    throw std::invalid_argument("integrate_1d: NaN interval bound");

  double sign = 1.0;
  if (interval.hi < interval.lo) {
    std::swap(interval.lo, interval.hi);
    sign = -1.0;
  }
  if (interval.lo == interval.hi) return {T{}, 0.0, 0};

  const bool infinite = std::isinf(interval.lo) || std::isinf(interval.hi);
  auto [g, range] = detail::map_to_finite(std::move(f), interval);

  std::vector<detail::Panel<T>> panels;
  const auto breaks = detail::initial_breaks(range, infinite);
  T total{};
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    panels.push_back(detail::kronrod_panel<T>(g, breaks[i], breaks[i + 1]));
    total += panels.back().value;
    total_error += panels.back().error;
  }
  std::make_heap(panels.begin(), panels.end());

  auto converged = [&] {
    return total_error <= std::max(spec.abs_tol, spec.rel_tol * detail::magnitude(total));
  };
  // The running totals accumulate cancellation error; confirm with a fresh sum.
  auto resum = [&] {
    T v{};
    double e = 0.0;
    for (const auto& p : panels) {
      v += p.value;
      e += p.error;
    }
    total = v;
    total_error = e;
  };

  while (!converged() || (resum(), !converged())) {
    if (panels.size() >= spec.max_panels) {
      throw QuadratureError("integrate_1d: panel budget exhausted",
                            detail::as_complex(T(total * sign)), total_error);
    }
    std::pop_heap(panels.begin(), panels.end());
    const auto worst = panels.back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw QuadratureError("integrate_1d: panel width reached machine precision",
                            detail::as_complex(T(total * sign)), total_error);
    }
    panels.pop_back();
    const auto left = detail::kronrod_panel<T>(g, worst.lo, mid);
    const auto right = detail::kronrod_panel<T>(g, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push_back(left);
    std::push_heap(panels.begin(), panels.end());
    panels.push_back(right);
    std::push_heap(panels.begin(), panels.end());
  }
  return {T(total * sign), total_error, panels.size()};
}

// 3D integral of a radially symmetric integrand h(|x - c|) = g(r),
// evaluated as 4 pi * int_0^inf r^2 g(r) dr.
template <typename G>
QuadratureResult<double> integrate_radial_3d(G g, const QuadratureSpec& spec = {}) {
  constexpr double four_pi = 4.0 * 3.14159265358979323846;
  return integrate_1d([&g](double r) { return four_pi * r * r * g(r); },
                      {0.0, std::numeric_limits<double>::infinity()}, spec);
}

}  // namespace essmodes
