#pragma once

// Replacement of a normal-state field by N essential modes.
//
// Each mode carries one action quantum C. Requiring
//   eps0 int int u |E_nr|^2 = eps0 int int u |E_es|^2
// for every test functional u fixes the density of mode centres
// (x_c, w_c) to eps0 |E_nr|^2 / (N C). This module builds that density on
// the field grid, draws detection events from it and checks both the
// conservation identity and the emerging fringe pattern.
//
// Only |E_nr|^2 is consumed; nothing here propagates fields in time.

#include "essmodes/diffraction.hpp"
#include "essmodes/modes.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace essmodes {

struct DetectionEvent {
  double x_c = 0.0;
  double omega_c = 0.0;
  ModeKind kind = ModeKind::electric;
  double action = 0.0;

  friend bool operator==(const DetectionEvent&, const DetectionEvent&) = default;
};

// round(total / C): how many quanta the normal state holds.
[[nodiscard]] std::uint64_t suggested_event_count(double total_action, double action_quantum);

// Normalised joint density p(x, w) on the field grid. Between nodes the
// density is the bilinear interpolant, so cell masses are exact trapezoid
// sums and integrate to one.
class BornDensity {
public:
  // Throws std::invalid_argument for an all-zero field, N < 1 or C <= 0.
  BornDensity(const NormalStateField& field, std::uint64_t events, double action_quantum,
              double eps0 = 1.0);

  [[nodiscard]] const Grid1D& x() const noexcept { return x_; }
  [[nodiscard]] const Grid1D& omega() const noexcept { return omega_; }
  [[nodiscard]] double at(std::size_t ix, std::size_t iw) const {
    return density_[ix * omega_.size() + iw];
  }
  [[nodiscard]] const std::vector<double>& cell_masses() const noexcept { return cell_mass_; }
  [[nodiscard]] const std::vector<double>& cumulative() const noexcept { return cdf_; }

  [[nodiscard]] std::uint64_t events() const noexcept { return events_; }
  [[nodiscard]] double action_quantum() const noexcept { return action_quantum_; }
  // eps0 int int |E|^2
  [[nodiscard]] double total_action() const noexcept { return total_action_; }
  // eps0 / (N C); equals 1 / total_action when the budget is exact.
  [[nodiscard]] double born_factor() const noexcept;
  // True when |total_action - N C| <= 1% of N C.
  [[nodiscard]] bool budget_consistent() const noexcept;

  // Trapezoid integral of the density (1 up to rounding).
  [[nodiscard]] double integral() const;
  // Probability mass of the x-cells [first_cell, last_cell).
  [[nodiscard]] double x_cell_mass(std::size_t first_cell, std::size_t last_cell) const;
  // int int |p - f g| with f, g the x and w marginals. Zero iff p factorises on the grid.
  [[nodiscard]] double factorization_defect() const;

private:
  Grid1D x_;
  Grid1D omega_;
  std::vector<double> density_;
  std::vector<double> cell_mass_;  // x-major over (nx-1) * (nw-1) cells
  std::vector<double> cdf_;
  std::uint64_t events_;
  double action_quantum_;
  double eps0_;
  double total_action_;
};

// Events per deterministic random substream.
inline constexpr std::size_t kSamplingChunk = 4096;

// N independent draws by inverse CDF over cells then bilinear inversion
// inside the cell. Event i belongs to substream i / kSamplingChunk seeded
// from (seed, substream), so output depends only on the seed.
[[nodiscard]] std::vector<DetectionEvent> sample_events(const BornDensity& d, std::uint64_t count,
                                                        std::uint64_t seed,
                                                        ModeKind kind = ModeKind::electric,
                                                        unsigned workers = 1);

// Essential mode centred on an event, at finite sequence parameters.
[[nodiscard]] EssentialModeParams essential_mode_for(const DetectionEvent& e,
                                                     const SlitGeometry& g, double alpha,
                                                     double beta);

using TestFunctional = std::function<double(double x, double omega)>;

struct ConservationReport {
  double lhs = 0.0;  // eps0 int int u |E|^2
  double rhs = 0.0;  // C sum_i u(x_i, w_i)
  double se = 0.0;   // C sqrt(N) sd(u)
  double z = 0.0;    // (lhs - rhs) / se
  double relative_difference = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|)
};

// Relative difference treated as exact equality when u is constant over the
// events (se = 0): floating-point rounding of the grid sum only.
inline constexpr double kRoundingTolerance = 1e-12;

[[nodiscard]] ConservationReport conservation_check(const std::vector<DetectionEvent>& events,
                                                    const NormalStateField& field,
                                                    const TestFunctional& u,
                                                    double action_quantum, double eps0 = 1.0);

struct ChiSquareReport {
  std::vector<double> edges;  // bins.size() + 1 entries
  std::vector<std::uint64_t> observed;
  std::vector<double> expected;
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

// Bins with expected count below 5 are merged into their neighbour.
// Throws std::invalid_argument when fewer than 5 bins survive.
[[nodiscard]] ChiSquareReport chi_square_from_counts(std::vector<double> edges,
                                                     std::vector<std::uint64_t> observed,
                                                     std::vector<double> expected);

// Screen-coordinate histogram of the events against the density's x-marginal.
// Bin edges sit on grid nodes, `bins` requested before merging.
[[nodiscard]] ChiSquareReport pattern_report(const std::vector<DetectionEvent>& events,
                                             const BornDensity& d, std::size_t bins);

// sum_k |observed_k / N - expected_k / N| over unmerged bins.
[[nodiscard]] double marginal_l1_distance(const std::vector<DetectionEvent>& events,
                                          const BornDensity& d, std::size_t bins);

}  // namespace essmodes
