#include "essmodes/field_io.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace essmodes {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

double parse_double(std::string_view token) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r'))
    token.remove_suffix(1);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size() || token.empty())
    throw std::invalid_argument("not a number: '" + std::string(token) + "'");
  return v;
}

void write_field(const NormalStateField& field, const std::filesystem::path& header_json,
                 const std::filesystem::path& table_csv) {
  const auto& g = field.geometry();
  const auto& s = field.spectrum();
  json header = {
      {"geometry",
       {{"slit_separation", g.separation},
        {"slit_width", g.width},
        {"screen_distance", g.screen_distance},
        {"screen_half_width", g.screen_half_width},
        {"screen_points", g.screen_points}}},
      {"spectrum",
       {{"omega_0", s.omega_0},
        {"sigma_omega", s.sigma_omega},
        {"amplitude", s.amplitude},
        {"omega_points", s.omega_points}}},
      {"x", field.x().nodes()},
      {"omega", field.omega().nodes()},
      {"table", table_csv.filename().string()},
  };
  std::ofstream hj(header_json);
  if (!hj) throw std::runtime_error("cannot write " + header_json.string());
  hj << header.dump(2) << '\n';

  std::ofstream csv(table_csv);
  if (!csv) throw std::runtime_error("cannot write " + table_csv.string());
  csv << "x,omega,re,im\n";
  for (std::size_t ix = 0; ix < field.x().size(); ++ix) {
    for (std::size_t iw = 0; iw < field.omega().size(); ++iw) {
      const auto v = field.at(ix, iw);
      csv << format_double(field.x()[ix]) << ',' << format_double(field.omega()[iw]) << ','
          << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
  }
}

NormalStateField read_field(const std::filesystem::path& header_json,
                            const std::filesystem::path& table_csv) {
  std::ifstream hj(header_json);
  if (!hj) throw std::runtime_error("cannot read " + header_json.string());
  const json header = json::parse(hj);

  SlitGeometry g;
  const auto& jg = header.at("geometry");
  g.separation = jg.at("slit_separation").get<double>();
  g.width = jg.at("slit_width").get<double>();
  g.screen_distance = jg.at("screen_distance").get<double>();
  g.screen_half_width = jg.at("screen_half_width").get<double>();
  g.screen_points = jg.at("screen_points").get<std::size_t>();
  SourceSpectrum s;
  const auto& js = header.at("spectrum");
  s.omega_0 = js.at("omega_0").get<double>();
  s.sigma_omega = js.at("sigma_omega").get<double>();
  s.amplitude = js.at("amplitude").get<double>();
  s.omega_points = js.at("omega_points").get<std::size_t>();
  Grid1D x(header.at("x").get<std::vector<double>>());
  Grid1D omega(header.at("omega").get<std::vector<double>>());

  std::ifstream csv(table_csv);
  if (!csv) throw std::runtime_error("cannot read " + table_csv.string());
  std::string line;
  std::getline(csv, line);
  if (line.rfind("x,omega,re,im", 0) != 0)
    throw std::runtime_error(table_csv.string() + ": unexpected header");
  std::vector<std::complex<double>> values;
  values.reserve(x.size() * omega.size());
  std::size_t row = 0;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> cols;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      cols.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    cols.push_back(rest);
    if (cols.size() != 4)
      throw std::runtime_error(table_csv.string() + ": expected 4 columns on row " +
                               std::to_string(row + 2));
    const std::size_t ix = row / omega.size();
    const std::size_t iw = row % omega.size();
    if (ix >= x.size() || parse_double(cols[0]) != x[ix] || parse_double(cols[1]) != omega[iw])
      throw std::runtime_error(table_csv.string() + ": row " + std::to_string(row + 2) +
                               " does not match the header grids");
    values.emplace_back(parse_double(cols[2]), parse_double(cols[3]));
    ++row;
  }
  return {g, s, std::move(x), std::move(omega), std::move(values)};
}

}  // namespace essmodes
