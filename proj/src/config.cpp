#include "essmodes/config.hpp"

#include "essmodes/field_io.hpp"
#include "essmodes/parallel.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace essmodes {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"units", {"system"}},
      {"medium", {"kind", "relative", "omega_p", "gamma", "omega_0", "strength", "factor",
                  "profile_center", "profile_radius", "profile_amplitude"}},
      {"permeability", {"kind", "relative", "omega_p", "gamma", "omega_0", "strength", "factor",
                        "profile_center", "profile_radius", "profile_amplitude"}},
      {"mode", {"kind", "alpha", "beta", "center", "omega_c", "lambda_re", "lambda_im"}},
      {"sweep", {"alpha", "beta"}},
      {"resonance", {"omega_min", "omega_max", "omega_samples", "x_min", "x_max", "x_samples",
                     "tolerance"}},
      {"geometry", {"slit_separation", "slit_width", "screen_distance", "screen_half_width",
                    "screen_points"}},
      {"source", {"omega_0", "sigma_omega", "amplitude", "omega_points"}},
      {"sampling", {"events", "action", "seed", "bins", "workers", "calibrate", "kind"}},
      {"quadrature", {"rel_tol", "abs_tol", "max_panels"}},
      {"verify", {"alpha", "beta", "tolerance", "fourier_points", "curl_step"}},
      {"output", {"directory"}},
  };
  return keys;
}

class Reader {
public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  [[nodiscard]] std::optional<std::string> raw(const std::string& field) const {
    if (auto v = tree_.get_optional<std::string>(pt::ptree::path_type(field, '.'))) return *v;
    return std::nullopt;
  }

  [[nodiscard]] std::string text(const std::string& field, const std::string& fallback) const {
    return raw(field).value_or(fallback);
  }

  [[nodiscard]] double number(const std::string& field, double fallback) const {
    const auto v = raw(field);
    if (!v) return fallback;
    try {
      return parse_double(*v);
    } catch (const std::invalid_argument&) {
      throw ConfigError("field '" + field + "': expected a number, got '" + *v + "'");
    }
  }

  [[nodiscard]] std::uint64_t count(const std::string& field, std::uint64_t fallback) const {
    const auto v = raw(field);
    if (!v) return fallback;
    const double d = number(field, 0.0);
    if (!(d >= 0.0) || d != std::floor(d) || d > 1.8e19)
      throw ConfigError("field '" + field + "': expected a non-negative integer, got '" + *v + "'");
    return static_cast<std::uint64_t>(d);
  }

  [[nodiscard]] bool flag(const std::string& field, bool fallback) const {
    const auto v = raw(field);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw ConfigError("field '" + field + "': expected true or false, got '" + *v + "'");
  }

  [[nodiscard]] std::vector<double> list(const std::string& field,
                                         const std::vector<double>& fallback) const {
    const auto v = raw(field);
    if (!v) return fallback;
    std::vector<double> out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        out.push_back(parse_double(item));
      } catch (const std::invalid_argument&) {
        throw ConfigError("field '" + field + "': bad list entry '" + item + "'");
      }
    }
    return out;
  }

  [[nodiscard]] Vec3 vec3(const std::string& field, const Vec3& fallback) const {
    if (!raw(field)) return fallback;
    const auto l = list(field, {});
    if (l.size() != 3) throw ConfigError("field '" + field + "': expected three comma-separated values");
    return {l[0], l[1], l[2]};
  }

private:
  const pt::ptree& tree_;
};

ModeKind parse_kind(const Reader& r, const std::string& field) {
  const auto k = r.text(field, "electric");
  if (k == "electric") return ModeKind::electric;
  if (k == "magnetic") return ModeKind::magnetic;
  throw ConfigError("field '" + field + "': expected electric or magnetic, got '" + k + "'");
}

DispersiveFactor parse_factor(const Reader& r, const std::string& section, const std::string& kind,
                              const UnitSystem& u) {
  const auto f = [&](const char* key, double fallback) {
    return r.number(section + "." + key, fallback);
  };
  if (kind == "constant") return ConstantScalar{f("relative", 1.0)};
  if (kind == "drude")
    return Drude{u.frequency_in(f("omega_p", 1.0)), u.frequency_in(f("gamma", 0.0))};
  if (kind == "lorentz")
    return Lorentz{u.frequency_in(f("omega_0", 0.0)), f("strength", 0.0),
                   u.frequency_in(f("gamma", 0.0))};
  throw ConfigError("field '" + section + ".kind': unknown medium kind '" + kind + "'");
}

MediumModel parse_medium(const Reader& r, const std::string& section, const UnitSystem& u,
                         const std::string& fallback_kind) {
  const auto kind = r.text(section + ".kind", fallback_kind);
  MediumModel m;
  if (kind == "vacuum") {
    m = Vacuum{};
  } else if (kind == "separable") {
    SmoothBump bump{r.vec3(section + ".profile_center", {0.0, 0.0, 0.0}),
                    r.number(section + ".profile_radius", 1.0),
                    r.number(section + ".profile_amplitude", 1.0)};
    m = Separable{bump, parse_factor(r, section, r.text(section + ".factor", "drude"), u)};
  } else {
    std::visit([&](auto v) { m = v; }, parse_factor(r, section, kind, u));
  }
  try {
    validate(m);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("section '" + section + "': " + e.what());
  }
  return m;
}

template <typename Fn>
void check_field(const std::string& field, Fn fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("field '" + field + "': " + e.what());
  }
}

void require_positive(const std::string& field, const std::vector<double>& values) {
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError("field '" + field + "': values must be positive, got " + format_double(v));
}

const std::vector<double> kDecadeList = {1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6};

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

unsigned ExperimentConfig::worker_count() const {
  return sampling.workers == 0 ? default_workers() : sampling.workers;
}

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) throw ConfigError("unknown section [" + section + "]");
    if (!body.data().empty()) throw ConfigError("key '" + section + "' must sit inside a section");
    for (const auto& [key, value] : body)
      if (!it->second.count(key)) throw ConfigError("unknown field '" + section + "." + key + "'");
  }

  const Reader r(tree);
  ExperimentConfig cfg;
  cfg.config_hash = fnv1a_hex(text);

  const auto system = r.text("units.system", "natural");
  if (system == "si")
    cfg.units.si = true;
  else if (system != "natural")
    throw ConfigError("field 'units.system': expected natural or si, got '" + system + "'");
  const auto& u = cfg.units;

  cfg.material.permittivity = parse_medium(r, "medium", u, "vacuum");
  cfg.material.permeability = parse_medium(r, "permeability", u, "vacuum");

  const double alpha = r.number("mode.alpha", 1e4);
  const double beta = r.number("mode.beta", 1e4);
  const Vec3 center = r.vec3("mode.center", {0.0, 0.0, 0.0});
  const double omega_c = u.frequency_in(r.number("mode.omega_c", 1.0));
  std::optional<SpatialMode> spatial;
  std::optional<TemporalMode> temporal;
  check_field("mode.alpha", [&] { spatial.emplace(alpha, center); });
  check_field("mode.beta", [&] { temporal.emplace(u.beta_in(beta), omega_c); });
  cfg.mode = {parse_kind(r, "mode.kind"), *spatial, *temporal};
  cfg.lambda = {u.frequency_in(r.number("mode.lambda_re", 0.0)),
                u.frequency_in(r.number("mode.lambda_im", 0.0))};

  cfg.sweep_alphas = r.list("sweep.alpha", {1e2, 1e4});
  cfg.sweep_betas = r.list("sweep.beta", {1e2, 1e3, 1e4, 1e5, 1e6});
  require_positive("sweep.alpha", cfg.sweep_alphas);
  require_positive("sweep.beta", cfg.sweep_betas);
  for (auto& b : cfg.sweep_betas) b = u.beta_in(b);

  auto& rs = cfg.resonance;
  rs.omega_min = u.frequency_in(r.number("resonance.omega_min", 0.1));
  rs.omega_max = u.frequency_in(r.number("resonance.omega_max", 3.0));
  rs.omega_samples = r.count("resonance.omega_samples", 2001);
  rs.x_min = r.vec3("resonance.x_min", {0.0, 0.0, 0.0});
  rs.x_max = r.vec3("resonance.x_max", {1.0, 1.0, 0.0});
  {
    const auto xs = r.list("resonance.x_samples", {3, 3, 1});
    if (xs.size() != 3) throw ConfigError("field 'resonance.x_samples': expected three counts");
    for (std::size_t i = 0; i < 3; ++i) rs.x_samples[i] = static_cast<std::size_t>(xs[i]);
  }
  rs.tolerance = u.frequency_in(r.number("resonance.tolerance", 1e-6));
  check_field("resonance", [&] { rs.validate(); });

  auto& g = cfg.geometry;
  g.separation = r.number("geometry.slit_separation", 20.0);
  g.width = r.number("geometry.slit_width", 4.0);
  g.screen_distance = r.number("geometry.screen_distance", 1000.0);
  g.screen_half_width = r.number("geometry.screen_half_width", 200.0);
  g.screen_points = r.count("geometry.screen_points", 801);
  check_field("geometry", [&] { g.validate(); });

  auto& s = cfg.spectrum;
  s.omega_0 = u.frequency_in(r.number("source.omega_0", 2.0 * std::numbers::pi));
  s.sigma_omega = u.frequency_in(r.number("source.sigma_omega", 0.04 * std::numbers::pi));
  s.amplitude = r.number("source.amplitude", 1.0);
  s.omega_points = r.count("source.omega_points", 41);
  check_field("source", [&] { s.validate(); });

  auto& sm = cfg.sampling;
  if (r.raw("sampling.events")) sm.events = r.count("sampling.events", 0);
  sm.action_quantum = u.action_in(r.number("sampling.action", u.default_action_quantum()));
  if (!(sm.action_quantum > 0.0)) throw ConfigError("field 'sampling.action': must be > 0");
  sm.seed = r.count("sampling.seed", 42);
  sm.bins = r.count("sampling.bins", 50);
  sm.workers = static_cast<unsigned>(r.count("sampling.workers", 0));
  sm.calibrate = r.flag("sampling.calibrate", true);
  sm.kind = parse_kind(r, "sampling.kind");
  if (sm.bins < 5) throw ConfigError("field 'sampling.bins': need at least 5 bins");

  auto& q = cfg.quadrature;
  q.rel_tol = r.number("quadrature.rel_tol", 1e-10);
  q.abs_tol = r.number("quadrature.abs_tol", 1e-14);
  q.max_panels = r.count("quadrature.max_panels", 1'000'000);
  check_field("quadrature", [&] { q.validate(); });

  auto& v = cfg.verify;
  v.alphas = r.list("verify.alpha", kDecadeList);
  v.betas = r.list("verify.beta", kDecadeList);
  require_positive("verify.alpha", v.alphas);
  require_positive("verify.beta", v.betas);
  for (auto& b : v.betas) b = u.beta_in(b);
  v.tolerance = r.number("verify.tolerance", 1e-8);
  if (!(v.tolerance > 0.0)) throw ConfigError("field 'verify.tolerance': must be > 0");
  v.fourier_points = r.count("verify.fourier_points", 4096);
  v.curl_step = r.number("verify.curl_step", 1e-3);
  if (!(v.curl_step > 0.0)) throw ConfigError("field 'verify.curl_step': must be > 0");

  cfg.output_dir = r.text("output.directory", "out");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace essmodes
