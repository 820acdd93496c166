#pragma once

// Subcommands of the experiment runner. Each returns a process exit code:
// 0 success, 1 a check failed, 2 usage or configuration error (thrown as
// UsageError / ConfigError and mapped by the caller).

#include "essmodes/collapse.hpp"
#include "essmodes/config.hpp"

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace essmodes {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kVersion = "essmodes 1.0.0";

int cmd_verify(const ExperimentConfig& cfg, std::ostream& log);
int cmd_residual(const ExperimentConfig& cfg, std::ostream& log);
int cmd_resonance(const ExperimentConfig& cfg, std::ostream& log);
int cmd_simulate(const ExperimentConfig& cfg, std::ostream& log);
int cmd_conserve(const ExperimentConfig& cfg, const std::filesystem::path& events,
                 std::ostream& log);

// Normal-state field for the configured geometry, rescaled when
// sampling.calibrate is set so that its action is exactly N C.
struct PreparedField {
  NormalStateField field;
  std::uint64_t events;
};
[[nodiscard]] PreparedField prepare_field(const ExperimentConfig& cfg);

// The test functionals checked by simulate and conserve, in report order:
// one, x, x2, central_fringe, omega, x_omega.
[[nodiscard]] std::vector<std::pair<std::string, TestFunctional>> standard_functionals(
    const ExperimentConfig& cfg);

// First interference null of the monochromatic slice at the source centre.
[[nodiscard]] double central_fringe_half_width(const SlitGeometry& g, const SourceSpectrum& s);

void write_events_csv(const std::vector<DetectionEvent>& events, const ExperimentConfig& cfg,
                      const std::filesystem::path& path);
[[nodiscard]] std::vector<DetectionEvent> read_events_csv(const std::filesystem::path& path,
                                                          const UnitSystem& units);

}  // namespace essmodes
