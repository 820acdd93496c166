#include "essmodes/collapse.hpp"

#include "essmodes/parallel.hpp"
#include "essmodes/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace essmodes {

namespace {

// Uniform double in [0, 1) from the top 53 bits.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Inverse CDF of the density proportional to (1 - u) a + u b on [0, 1].
double invert_linear(double xi, double a, double b) {
  const double sum = a + b;
  if (sum <= 0.0) return xi;
  const double u = xi * sum / (a + std::sqrt(a * a + (b * b - a * a) * xi));
  return std::clamp(u, 0.0, std::nextafter(1.0, 0.0));
}

std::vector<std::size_t> bin_edge_cells(std::size_t cells, std::size_t bins) {
  if (bins < 1 || bins > cells)
    throw std::invalid_argument("pattern_report: bins must be between 1 and the screen cell count");
  std::vector<std::size_t> edges(bins + 1);
  for (std::size_t k = 0; k <= bins; ++k)
    edges[k] = static_cast<std::size_t>(std::llround(static_cast<double>(k * cells) /
                                                     static_cast<double>(bins)));
  return edges;
}

struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> observed;
  std::vector<double> expected;
};

Histogram histogram(const std::vector<DetectionEvent>& events, const BornDensity& d,
                    std::size_t bins) {
  const std::size_t cells = d.x().size() - 1;
  const auto edge_cells = bin_edge_cells(cells, bins);
  Histogram h;
  for (auto c : edge_cells) h.edges.push_back(d.x()[c]);
  h.observed.assign(bins, 0);
  h.expected.resize(bins);
  const double n = static_cast<double>(events.size());
  for (std::size_t k = 0; k < bins; ++k)
    h.expected[k] = n * d.x_cell_mass(edge_cells[k], edge_cells[k + 1]);
  for (const auto& e : events) {
    auto it = std::upper_bound(h.edges.begin() + 1, h.edges.end() - 1, e.x_c);
    ++h.observed[static_cast<std::size_t>(it - (h.edges.begin() + 1))];
  }
  return h;
}

}  // namespace

std::uint64_t suggested_event_count(double total_action, double action_quantum) {
  if (!(action_quantum > 0.0)) throw std::invalid_argument("action quantum must be > 0");
  if (!(total_action >= 0.0)) throw std::invalid_argument("total action must be >= 0");
  return static_cast<std::uint64_t>(std::llround(total_action / action_quantum));
}

BornDensity::BornDensity(const NormalStateField& field, std::uint64_t events,
                         double action_quantum, double eps0)
    : x_(field.x()),
      omega_(field.omega()),
      events_(events),
      action_quantum_(action_quantum),
      eps0_(eps0),
      total_action_(essmodes::total_action(field, eps0)) {
  if (events < 1) throw std::invalid_argument("BornDensity: N must be >= 1");
  if (!(action_quantum > 0.0)) throw std::invalid_argument("BornDensity: C must be > 0");
  if (!(total_action_ > 0.0)) throw std::invalid_argument("BornDensity: field is identically zero");

  const std::size_t nx = x_.size();
  const std::size_t nw = omega_.size();
  const double scale = eps0 / total_action_;
  density_.resize(nx * nw);
  for (std::size_t ix = 0; ix < nx; ++ix)
    for (std::size_t iw = 0; iw < nw; ++iw)
      density_[ix * nw + iw] = scale * field.intensity(ix, iw);

  cell_mass_.resize((nx - 1) * (nw - 1));
  cdf_.resize(cell_mass_.size());
  double running = 0.0;
  for (std::size_t ix = 0; ix + 1 < nx; ++ix) {
    const double dx = x_[ix + 1] - x_[ix];
    for (std::size_t iw = 0; iw + 1 < nw; ++iw) {
      const double dw = omega_[iw + 1] - omega_[iw];
      const double mass = 0.25 * dx * dw *
                          (at(ix, iw) + at(ix + 1, iw) + at(ix, iw + 1) + at(ix + 1, iw + 1));
      const std::size_t c = ix * (nw - 1) + iw;
      cell_mass_[c] = mass;
      running += mass;
      cdf_[c] = running;
    }
  }
}

double BornDensity::born_factor() const noexcept {
  return eps0_ / (static_cast<double>(events_) * action_quantum_);
}

bool BornDensity::budget_consistent() const noexcept {
  const double budget = static_cast<double>(events_) * action_quantum_;
  return std::abs(total_action_ - budget) <= 0.01 * budget;
}

double BornDensity::integral() const {
  double sum = 0.0;
  for (double m : cell_mass_) sum += m;
  return sum;
}

double BornDensity::x_cell_mass(std::size_t first_cell, std::size_t last_cell) const {
  const std::size_t nwc = omega_.size() - 1;
  double sum = 0.0;
  for (std::size_t c = first_cell * nwc; c < last_cell * nwc; ++c) sum += cell_mass_[c];
  return sum;
}

double BornDensity::factorization_defect() const {
  const auto wx = x_.trapezoid_weights();
  const auto ww = omega_.trapezoid_weights();
  const std::size_t nx = x_.size();
  const std::size_t nw = omega_.size();
  std::vector<double> fx(nx, 0.0);
  std::vector<double> gw(nw, 0.0);
  for (std::size_t ix = 0; ix < nx; ++ix)
    for (std::size_t iw = 0; iw < nw; ++iw) {
      fx[ix] += ww[iw] * at(ix, iw);
      gw[iw] += wx[ix] * at(ix, iw);
    }
  double defect = 0.0;
  for (std::size_t ix = 0; ix < nx; ++ix)
    for (std::size_t iw = 0; iw < nw; ++iw)
      defect += wx[ix] * ww[iw] * std::abs(at(ix, iw) - fx[ix] * gw[iw]);
  return defect;
}

std::vector<DetectionEvent> sample_events(const BornDensity& d, std::uint64_t count,
                                          std::uint64_t seed, ModeKind kind, unsigned workers) {
  std::vector<DetectionEvent> events(count);
  if (count == 0) return events;

  const auto& cdf = d.cumulative();
  const double total = cdf.back();
  const std::size_t nwc = d.omega().size() - 1;
  const std::size_t chunks = (count + kSamplingChunk - 1) / kSamplingChunk;

  parallel_for(chunks, workers, [&](std::size_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk),
                      static_cast<std::uint32_t>(static_cast<std::uint64_t>(chunk) >> 32)};
    std::mt19937_64 rng(seq);
    const std::size_t begin = chunk * kSamplingChunk;
    const std::size_t end = std::min<std::size_t>(begin + kSamplingChunk, count);
    for (std::size_t i = begin; i < end; ++i) {
      const double target = unit_uniform(rng) * total;
      // First cell whose cumulative mass reaches the target: ties go to the lower cell.
      auto it = target > 0.0 ? std::lower_bound(cdf.begin(), cdf.end(), target)
                             : std::upper_bound(cdf.begin(), cdf.end(), 0.0);
      if (it == cdf.end()) --it;
      const std::size_t cell = static_cast<std::size_t>(it - cdf.begin());
      const std::size_t ix = cell / nwc;
      const std::size_t iw = cell % nwc;

      const double p00 = d.at(ix, iw);
      const double p10 = d.at(ix + 1, iw);
      const double p01 = d.at(ix, iw + 1);
      const double p11 = d.at(ix + 1, iw + 1);
      const double u = invert_linear(unit_uniform(rng), p00 + p01, p10 + p11);
      const double v =
          invert_linear(unit_uniform(rng), p00 * (1.0 - u) + p10 * u, p01 * (1.0 - u) + p11 * u);

      const double x0 = d.x()[ix];
      const double w0 = d.omega()[iw];
      events[i] = {x0 + u * (d.x()[ix + 1] - x0), w0 + v * (d.omega()[iw + 1] - w0), kind,
                   d.action_quantum()};
    }
  });
  return events;
}

EssentialModeParams essential_mode_for(const DetectionEvent& e, const SlitGeometry& g,
                                       double alpha, double beta) {
  return {e.kind, SpatialMode(alpha, screen_point(g, e.x_c)), TemporalMode(beta, e.omega_c)};
}

ConservationReport conservation_check(const std::vector<DetectionEvent>& events,
                                      const NormalStateField& field, const TestFunctional& u,
                                      double action_quantum, double eps0) {
  if (events.empty()) throw std::invalid_argument("conservation_check: no events");
  ConservationReport r;
  const auto wx = field.x().trapezoid_weights();
  const auto ww = field.omega().trapezoid_weights();
  for (std::size_t ix = 0; ix < wx.size(); ++ix) {
    double row = 0.0;
    for (std::size_t iw = 0; iw < ww.size(); ++iw)
      row += ww[iw] * u(field.x()[ix], field.omega()[iw]) * field.intensity(ix, iw);
    r.lhs += wx[ix] * row;
  }
  r.lhs *= eps0;

  const double n = static_cast<double>(events.size());
  double sum = 0.0;
  for (const auto& e : events) sum += u(e.x_c, e.omega_c);
  const double mean = sum / n;
  double ss = 0.0;
  for (const auto& e : events) {
    const double dv = u(e.x_c, e.omega_c) - mean;
    ss += dv * dv;
  }
  const double variance = events.size() > 1 ? ss / (n - 1.0) : 0.0;
  r.rhs = action_quantum * sum;
  r.se = action_quantum * std::sqrt(n * variance);
  const double diff = r.lhs - r.rhs;
  const double magnitude = std::max(std::abs(r.lhs), std::abs(r.rhs));
  r.relative_difference = magnitude > 0.0 ? std::abs(diff) / magnitude : 0.0;
  if (r.se > 0.0)
    r.z = diff / r.se;
  else if (r.relative_difference <= kRoundingTolerance)
    r.z = 0.0;
  else
    r.z = std::copysign(std::numeric_limits<double>::infinity(), diff);
  return r;
}

ChiSquareReport chi_square_from_counts(std::vector<double> edges,
                                       std::vector<std::uint64_t> observed,
                                       std::vector<double> expected) {
  if (observed.size() != expected.size() || edges.size() != observed.size() + 1)
    throw std::invalid_argument("chi_square_from_counts: inconsistent bin arrays");

  ChiSquareReport r;
  r.edges.push_back(edges.front());
  std::uint64_t obs_acc = 0;
  double exp_acc = 0.0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    obs_acc += observed[k];
    exp_acc += expected[k];
    if (exp_acc >= 5.0) {
      r.edges.push_back(edges[k + 1]);
      r.observed.push_back(obs_acc);
      r.expected.push_back(exp_acc);
      obs_acc = 0;
      exp_acc = 0.0;
    }
  }
  if (obs_acc > 0 || exp_acc > 0.0) {
    if (r.observed.empty()) {
      r.edges.push_back(edges.back());
      r.observed.push_back(obs_acc);
      r.expected.push_back(exp_acc);
    } else {
      r.edges.back() = edges.back();
      r.observed.back() += obs_acc;
      r.expected.back() += exp_acc;
    }
  }
  if (r.observed.size() < 5)
    throw std::invalid_argument("chi-square test needs at least 5 bins after merging");

  for (std::size_t k = 0; k < r.observed.size(); ++k) {
    const double diff = static_cast<double>(r.observed[k]) - r.expected[k];
    r.statistic += diff * diff / r.expected[k];
  }
  r.dof = static_cast<int>(r.observed.size()) - 1;
  r.p_value = chi_square_p_value(r.statistic, r.dof);
  return r;
}

ChiSquareReport pattern_report(const std::vector<DetectionEvent>& events, const BornDensity& d,
                               std::size_t bins) {
  if (events.empty()) throw std::invalid_argument("pattern_report: no events");
  auto h = histogram(events, d, bins);
  return chi_square_from_counts(std::move(h.edges), std::move(h.observed), std::move(h.expected));
}

double marginal_l1_distance(const std::vector<DetectionEvent>& events, const BornDensity& d,
                            std::size_t bins) {
  if (events.empty()) throw std::invalid_argument("marginal_l1_distance: no events");
  const auto h = histogram(events, d, bins);
  const double n = static_cast<double>(events.size());
  double l1 = 0.0;
  for (std::size_t k = 0; k < bins; ++k)
    l1 += std::abs(static_cast<double>(h.observed[k]) - h.expected[k]) / n;
  return l1;
}

}  // namespace essmodes
