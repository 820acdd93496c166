#include "essmodes/commands.hpp"

#include "essmodes/field_io.hpp"
#include "essmodes/modes.hpp"
#include "essmodes/weyl.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace essmodes {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path ensure_output_dir(const ExperimentConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec || !fs::is_directory(cfg.output_dir))
    throw ConfigError("field 'output.directory': cannot create '" + cfg.output_dir.string() + "'");
  return cfg.output_dir;
}

json stamp(const ExperimentConfig& cfg) {
  return {{"config_hash", cfg.config_hash},
          {"seed", cfg.sampling.seed},
          {"unit_system", cfg.units.name()}};
}

std::string csv_stamp(const ExperimentConfig& cfg) {
  return "# config_hash=" + cfg.config_hash + " seed=" + std::to_string(cfg.sampling.seed) +
         " units=" + cfg.units.name() + "\n";
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool passed;
  std::string error;
};

template <typename Fn>
Check run_check(std::string name, double tolerance, Fn deviation) {
  try {
    const double v = deviation();
    return {std::move(name), v, tolerance, v <= tolerance, {}};
  } catch (const std::exception& e) {
    return {std::move(name), std::numeric_limits<double>::quiet_NaN(), tolerance, false, e.what()};
  }
}

const char* kind_name(ModeKind k) { return k == ModeKind::electric ? "electric" : "magnetic"; }

}  // namespace

int cmd_verify(const ExperimentConfig& cfg, std::ostream& log) {
  const auto dir = ensure_output_dir(cfg);
  const auto& q = cfg.quadrature;
  const double tol = cfg.verify.tolerance;
  const Vec3 center = cfg.mode.spatial.center();
  std::vector<Check> checks;

  for (double a : cfg.verify.alphas) {
    const SpatialMode p(a, center);
    const std::string tag = "[alpha=" + format_double(a) + "]";
    checks.push_back(run_check("norm_psi" + tag, tol, [&] { return std::abs(norm_sq_psi(p, q) - 1.0); }));
    checks.push_back(run_check("sift_psi_gaussian" + tag, tol, [&] {
      const SpatialMode origin(a, {0.0, 0.0, 0.0});
      const double v = sift_psi_radial([](double r) { return std::exp(-r * r); }, origin, q);
      return std::abs(v - std::pow(a / (a + 1.0), 2.5));
    }));
  }
  for (double b : cfg.verify.betas) {
    const TemporalMode p(b, cfg.mode.temporal.omega_c());
    const std::string tag = "[beta=" + format_double(b) + "]";
    checks.push_back(run_check("norm_phi_hat" + tag, tol, [&] { return std::abs(norm_sq_phi_hat(p, q) - 1.0); }));
    checks.push_back(run_check("parseval_phi" + tag, tol, [&] { return std::abs(norm_sq_phi(p, q) - 1.0); }));
    checks.push_back(run_check("sift_phi_hat_gaussian" + tag, tol, [&] {
      const TemporalMode origin(b, 0.0);
      const double v = sift_phi_hat([](double w) { return std::exp(-w * w); }, origin, q);
      return std::abs(v - std::pow(b / (b + 1.0), 1.5));
    }));
  }
  for (auto [b, wc] : {std::pair{1.0, 0.0}, std::pair{4.0, 3.0}}) {
    const std::string tag = "[beta=" + format_double(b) + ",omega_c=" + format_double(wc) + "]";
    checks.push_back(run_check("fourier_duality" + tag, 1e-6, [&] {
      const double span = 10.0 * std::sqrt(b);
      const auto times = Grid1D::uniform(-span, span, cfg.verify.fourier_points);
      return fourier_consistency(TemporalMode(b, wc), times).max_deviation;
    }));
  }
  for (double a : {1.0, cfg.mode.spatial.alpha()}) {
    const SpatialMode p(a, center);
    const double w = p.width();
    const double h = cfg.verify.curl_step * w;
    const std::vector<Vec3> probes = {
        center,
        {center[0] + 0.7 * w, center[1] - 0.3 * w, center[2] + 1.1 * w},
        {center[0] - 1.5 * w, center[1] + 0.9 * w, center[2] - 0.4 * w},
        {center[0] + 0.2 * w, center[1] + 2.0 * w, center[2] + 0.5 * w},
    };
    checks.push_back(run_check("curl_free[alpha=" + format_double(a) + "]",
                               10.0 * h * h * curl_error_scale(p),
                               [&] { return curl_psi_residual(p, probes, h); }));
  }

  json report = stamp(cfg);
  report["checks"] = json::array();
  bool all = true;
  for (const auto& c : checks) {
    json jc = {{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}};
    if (!c.error.empty()) jc["error"] = c.error;
    report["checks"].push_back(jc);
    all = all && c.passed;
    if (!c.passed)
      log << "FAIL " << c.name << " value=" << format_double(c.value)
          << " tolerance=" << format_double(c.tolerance) << (c.error.empty() ? "" : " " + c.error)
          << '\n';
  }
  report["passed"] = all;
  write_json(dir / "verify.json", report);
  log << (all ? "verify: all " : "verify: failures among ") << checks.size() << " checks, report "
      << (dir / "verify.json").string() << '\n';
  return all ? 0 : 1;
}

int cmd_residual(const ExperimentConfig& cfg, std::ostream& log) {
  if (cfg.sweep_alphas.empty() || cfg.sweep_betas.empty())
    throw UsageError("residual: sweep.alpha and sweep.beta must both be non-empty");
  const auto dir = ensure_output_dir(cfg);
  ResidualQuery base{cfg.mode, cfg.lambda, cfg.material, cfg.quadrature};
  const auto records =
      convergence_sweep(base, cfg.sweep_alphas, cfg.sweep_betas, cfg.worker_count());

  const auto& u = cfg.units;
  std::ofstream out(dir / "residual.csv");
  if (!out) throw std::runtime_error("cannot write residual.csv");
  out << csv_stamp(cfg) << "alpha,beta,residual_sq,target,error\n";
  bool failures = false;
  for (const auto& r : records) {
    out << format_double(r.alpha) << ',' << format_double(u.beta_out(r.beta)) << ','
        << format_double(u.residual_out(r.residual_sq)) << ','
        << format_double(u.residual_out(r.target)) << ',' << format_double(u.residual_out(r.error))
        << '\n';
    if (!r.failure.empty()) {
      failures = true;
      log << "residual failed at alpha=" << format_double(r.alpha)
          << " beta=" << format_double(u.beta_out(r.beta)) << ": " << r.failure << '\n';
    }
  }
  log << "residual: " << records.size() << " records, " << (dir / "residual.csv").string() << '\n';
  return failures ? 1 : 0;
}

int cmd_resonance(const ExperimentConfig& cfg, std::ostream& log) {
  const auto dir = ensure_output_dir(cfg);
  const auto points =
      find_essential_resonance(cfg.material.permittivity, cfg.resonance, cfg.worker_count());
  json report = stamp(cfg);
  report["tolerance"] = cfg.units.frequency_out(cfg.resonance.tolerance);
  report["points"] = json::array();
  for (const auto& p : points) {
    report["points"].push_back({{"x_c", p.x_c},
                                {"omega_c", cfg.units.frequency_out(p.omega_c)},
                                {"residual", cfg.units.frequency_out(p.residual)}});
  }
  write_json(dir / "resonance.json", report);
  log << "resonance: " << points.size() << " points, " << (dir / "resonance.json").string() << '\n';
  return 0;
}

PreparedField prepare_field(const ExperimentConfig& cfg) {
  auto field = synthesize_field(cfg.geometry, cfg.spectrum, screen_grid(cfg.geometry),
                                spectral_grid(cfg.spectrum), cfg.worker_count());
  const double c = cfg.sampling.action_quantum;
  const double total = total_action(field);
  if (!(total > 0.0)) throw ConfigError("source: the configured field is identically zero");
  const std::uint64_t n = cfg.sampling.events.value_or(suggested_event_count(total, c));
  if (n < 1) throw ConfigError("field 'sampling.events': the action budget gives zero events");
  if (cfg.sampling.calibrate) field = field.scaled(std::sqrt(static_cast<double>(n) * c / total));
  return {std::move(field), n};
}

double central_fringe_half_width(const SlitGeometry& g, const SourceSpectrum& s) {
  return std::numbers::pi * g.screen_distance / (s.omega_0 * g.separation);
}

std::vector<std::pair<std::string, TestFunctional>> standard_functionals(
    const ExperimentConfig& cfg) {
  const double null = central_fringe_half_width(cfg.geometry, cfg.spectrum);
  return {
      {"one", [](double, double) { return 1.0; }},
      {"x", [](double x, double) { return x; }},
      {"x2", [](double x, double) { return x * x; }},
      {"central_fringe", [null](double x, double) { return std::abs(x) < null ? 1.0 : 0.0; }},
      {"omega", [](double, double w) { return w; }},
      {"x_omega", [](double x, double w) { return x * w; }},
  };
}

void write_events_csv(const std::vector<DetectionEvent>& events, const ExperimentConfig& cfg,
                      const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << csv_stamp(cfg) << "event_index,x_c,omega_c,kind,action\n";
  const auto& u = cfg.units;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    out << i << ',' << format_double(e.x_c) << ',' << format_double(u.frequency_out(e.omega_c))
        << ',' << kind_name(e.kind) << ',' << format_double(u.action_out(e.action)) << '\n';
  }
}

std::vector<DetectionEvent> read_events_csv(const fs::path& path, const UnitSystem& units) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read events file " + path.string());
  std::string line;
  bool header = false;
  std::vector<DetectionEvent> events;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "event_index,x_c,omega_c,kind,action")
        throw UsageError(path.string() + ": unexpected events header");
      header = true;
      continue;
    }
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    if (cols.size() != 5)
      throw UsageError(path.string() + ": line " + std::to_string(line_no) + " needs 5 columns");
    DetectionEvent e;
    try {
      e.x_c = parse_double(cols[1]);
      e.omega_c = units.frequency_in(parse_double(cols[2]));
      e.action = units.action_in(parse_double(cols[4]));
    } catch (const std::invalid_argument& err) {
      throw UsageError(path.string() + ": line " + std::to_string(line_no) + ": " + err.what());
    }
    if (cols[3] == "electric")
      e.kind = ModeKind::electric;
    else if (cols[3] == "magnetic")
      e.kind = ModeKind::magnetic;
    else
      throw UsageError(path.string() + ": line " + std::to_string(line_no) + ": bad kind");
    events.push_back(e);
  }
  if (!header) throw UsageError(path.string() + ": missing events header");
  return events;
}

namespace {

json conservation_json(const std::vector<DetectionEvent>& events, const NormalStateField& field,
                       const ExperimentConfig& cfg) {
  const auto& u = cfg.units;
  json out = json::object();
  for (const auto& [name, fn] : standard_functionals(cfg)) {
    const auto r = conservation_check(events, field, fn, cfg.sampling.action_quantum);
    out[name] = {{"lhs", u.action_out(r.lhs)},
                 {"rhs", u.action_out(r.rhs)},
                 {"se", u.action_out(r.se)},
                 {"z", r.z},
                 {"relative_difference", r.relative_difference}};
  }
  return out;
}

}  // namespace

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& log) {
  const auto dir = ensure_output_dir(cfg);
  if (cfg.geometry.paraxial_warning())
    log << "warning: screen half-width exceeds 0.2 of the screen distance (paraxial regime)\n";
  const auto prepared = prepare_field(cfg);
  const BornDensity density(prepared.field, prepared.events, cfg.sampling.action_quantum);
  const auto events = sample_events(density, prepared.events, cfg.sampling.seed, cfg.sampling.kind,
                                    cfg.worker_count());
  const auto chi = pattern_report(events, density, cfg.sampling.bins);

  write_events_csv(events, cfg, dir / "events.csv");
  {
    std::ofstream hist(dir / "histogram.csv");
    if (!hist) throw std::runtime_error("cannot write histogram.csv");
    hist << csv_stamp(cfg) << "bin_lo,bin_hi,observed,expected\n";
    for (std::size_t k = 0; k < chi.observed.size(); ++k)
      hist << format_double(chi.edges[k]) << ',' << format_double(chi.edges[k + 1]) << ','
           << chi.observed[k] << ',' << format_double(chi.expected[k]) << '\n';
  }

  const auto& u = cfg.units;
  json report = stamp(cfg);
  report["events"] = prepared.events;
  report["action_quantum"] = u.action_out(cfg.sampling.action_quantum);
  report["total_action"] = u.action_out(density.total_action());
  report["born_factor"] = density.born_factor();
  report["budget_consistent"] = density.budget_consistent();
  report["factorization_defect"] = density.factorization_defect();
  report["chi_square"] = {{"statistic", chi.statistic},
                          {"dof", chi.dof},
                          {"p_value", chi.p_value},
                          {"bins", chi.observed.size()}};
  report["conservation"] = conservation_json(events, prepared.field, cfg);
  write_json(dir / "report.json", report);

  json manifest = stamp(cfg);
  manifest["version"] = kVersion;
  manifest["compiler"] = __VERSION__;
  manifest["artifacts"] = {"events.csv", "histogram.csv", "report.json"};
  write_json(dir / "manifest.json", manifest);

  log << "simulate: " << events.size() << " events, chi-square p=" << format_double(chi.p_value)
      << ", artifacts in " << dir.string() << '\n';
  return 0;
}

int cmd_conserve(const ExperimentConfig& cfg, const fs::path& events_path, std::ostream& log) {
  const auto dir = ensure_output_dir(cfg);
  const auto events = read_events_csv(events_path, cfg.units);
  if (events.empty()) throw UsageError("conserve: events file holds no events");
  const auto prepared = prepare_field(cfg);
  json report = stamp(cfg);
  report["events"] = events.size();
  report["events_file"] = events_path.filename().string();
  report["conservation"] = conservation_json(events, prepared.field, cfg);
  write_json(dir / "conserve.json", report);
  log << "conserve: " << events.size() << " events, " << (dir / "conserve.json").string() << '\n';
  return 0;
}

}  // namespace essmodes
