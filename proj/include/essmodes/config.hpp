#pragma once

// Experiment configuration: one INI-style file with [section] blocks drives
// every subcommand. Values are converted to internal natural units
// (eps0 = mu0 = c = 1) once, at load time.

#include "essmodes/diffraction.hpp"
#include "essmodes/medium.hpp"
#include "essmodes/modes.hpp"
#include "essmodes/quadrature.hpp"

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace essmodes {

// Bad file syntax or an invalid field value; the message names the line or field.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Conversions between the file's unit system and internal natural units.
// In SI mode frequencies are divided by c (rad/s -> 1/m), beta multiplied by
// c^2 (s^2 -> m^2) and action divided by eps0 c.
struct UnitSystem {
  bool si = false;

  static constexpr double kSpeedOfLight = 299792458.0;
  static constexpr double kVacuumPermittivity = 8.8541878128e-12;
  static constexpr double kReducedPlanck = 1.054571817e-34;

  [[nodiscard]] std::string name() const { return si ? "si" : "natural"; }
  [[nodiscard]] double frequency_in(double w) const { return si ? w / kSpeedOfLight : w; }
  [[nodiscard]] double frequency_out(double w) const { return si ? w * kSpeedOfLight : w; }
  [[nodiscard]] double beta_in(double b) const { return si ? b * kSpeedOfLight * kSpeedOfLight : b; }
  [[nodiscard]] double beta_out(double b) const { return si ? b / (kSpeedOfLight * kSpeedOfLight) : b; }
  [[nodiscard]] double action_in(double c) const {
    return si ? c / (kVacuumPermittivity * kSpeedOfLight) : c;
  }
  [[nodiscard]] double action_out(double c) const {
    return si ? c * kVacuumPermittivity * kSpeedOfLight : c;
  }
  // Residual^2 scales like lambda^2, i.e. like frequency^2.
  [[nodiscard]] double residual_out(double r) const {
    return si ? r * kSpeedOfLight * kSpeedOfLight : r;
  }
  [[nodiscard]] double default_action_quantum() const { return si ? kReducedPlanck : 1.0; }
};

struct SamplingConfig {
  std::optional<std::uint64_t> events;  // empty: use the action budget
  double action_quantum = 1.0;          // internal units
  std::uint64_t seed = 42;
  std::size_t bins = 50;
  unsigned workers = 0;  // 0: hardware concurrency
  bool calibrate = true;  // rescale the field so its action equals N C
  ModeKind kind = ModeKind::electric;
};

struct VerifyConfig {
  std::vector<double> alphas;
  std::vector<double> betas;
  double tolerance = 1e-8;
  std::size_t fourier_points = 4096;
  double curl_step = 1e-3;
};

struct ExperimentConfig {
  UnitSystem units;
  Material material;
  EssentialModeParams mode{ModeKind::electric, SpatialMode(1e4, {0.0, 0.0, 0.0}),
                           TemporalMode(1e4, 1.0)};
  std::complex<double> lambda{0.0, 0.0};
  std::vector<double> sweep_alphas;
  std::vector<double> sweep_betas;
  ResonanceSearch resonance;
  SlitGeometry geometry;
  SourceSpectrum spectrum;
  SamplingConfig sampling;
  QuadratureSpec quadrature;
  VerifyConfig verify;
  std::filesystem::path output_dir = "out";
  std::string config_hash;  // FNV-1a 64 of the file bytes, hex

  [[nodiscard]] unsigned worker_count() const;
};

[[nodiscard]] ExperimentConfig parse_config(const std::string& text);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

[[nodiscard]] std::string fnv1a_hex(const std::string& bytes);

}  // namespace essmodes
