#include "parmag/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "parmag/errors.hpp"

namespace parmag {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool known_key(const std::string& key) {
  static const char* const registry[] = {
      // model parameters (full form)
      "model.delta_c", "model.delta_1", "model.delta_2", "model.g1",
      "model.g2", "model.kappa", "model.gamma1", "model.gamma2", "model.G",
      "model.delta_2ph", "model.omega_rabi",
      // model parameters (symmetric form)
      "symmetric.delta", "symmetric.g", "symmetric.gamma", "symmetric.G",
      "symmetric.delta_2ph", "symmetric.omega_rabi",
      // sweep axes and metric
      "sweep.x", "sweep.x_min", "sweep.x_max", "sweep.x_count", "sweep.y",
      "sweep.y_min", "sweep.y_max", "sweep.y_count", "sweep.metric",
      // eigenvalue tracks
      "tracks.delta_min", "tracks.delta_max", "tracks.count", "tracks.radius",
      // bath occupancies
      "noise.n_cavity", "noise.n_m1", "noise.n_m2",
      // run control
      "run.workers", "run.tol", "run.g_max", "run.cond_warn",
      // output
      "output.path", "output.format",
      // command-specific switches
      "phase.mode", "eig.form",
      // laboratory conversion inputs
      "units.omega_c", "units.v_c", "units.n1", "units.n2", "units.rho1",
      "units.d1", "units.d_p", "units.gamma_ref",
      // metadata keys accepted (and ignored) so that extracted config
      // echoes re-parse cleanly
      "command", "generator",
  };
  for (const char* k : registry)
    if (key == k) return true;
  return false;
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v.empty()) throw config_error("empty value for key: " + key);
  char* end = nullptr;
  const double parsed = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size())
    throw config_error("invalid number for key " + key + ": '" + v + "'");
  return parsed;
}

long parse_int(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v.empty()) throw config_error("empty value for key: " + key);
  char* end = nullptr;
  const long parsed = std::strtol(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size())
    throw config_error("invalid integer for key " + key + ": '" + v + "'");
  return parsed;
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return from_string(text.str());
}

Config Config::from_string(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(line_no) +
                         ": expected 'key = value', got '" + body + "'");
    c.set(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  }
  return c;
}

void Config::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw config_error("empty config key");
  if (!known_key(key)) throw config_error("unknown config key: " + key);
  kv_[key] = value;
}

void Config::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw config_error("override must be key=value, got '" + assignment + "'");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  set(key, value);
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : parse_double(key, it->second);
}

long Config::get_int(const std::string& key, long fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : parse_int(key, it->second);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  const std::string v = trim(it->second);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw config_error("invalid boolean for key " + key + ": '" + v + "'");
}

ModelParams<double> Config::resolve_model() const {
  ModelParams<double> p;
  bool symmetric_seen = false;
  for (const auto& [key, value] : kv_) {
    (void)value;
    if (key.rfind("symmetric.", 0) == 0) symmetric_seen = true;
  }
  if (symmetric_seen) {
    SymmetricParams<double> s;
    s.delta = get_double("symmetric.delta", s.delta);
    s.g = get_double("symmetric.g", s.g);
    s.gamma = get_double("symmetric.gamma", s.gamma);
    s.G = get_double("symmetric.G", s.G);
    s.delta_2ph = get_double("symmetric.delta_2ph", s.delta_2ph);
    s.omega_rabi = get_double("symmetric.omega_rabi", s.omega_rabi);
    p = s.expand();
  }
  p.delta_c = get_double("model.delta_c", p.delta_c);
  p.delta_1 = get_double("model.delta_1", p.delta_1);
  p.delta_2 = get_double("model.delta_2", p.delta_2);
  p.g1 = get_double("model.g1", p.g1);
  p.g2 = get_double("model.g2", p.g2);
  p.kappa = get_double("model.kappa", p.kappa);
  p.gamma1 = get_double("model.gamma1", p.gamma1);
  p.gamma2 = get_double("model.gamma2", p.gamma2);
  p.G = get_double("model.G", p.G);
  p.delta_2ph = get_double("model.delta_2ph", p.delta_2ph);
  p.omega_rabi = get_double("model.omega_rabi", p.omega_rabi);
  return p;
}

SymmetricParams<double> Config::resolve_symmetric() const {
  for (const auto& [key, value] : kv_) {
    (void)value;
    if (key.rfind("model.", 0) == 0)
      throw config_error(
          "this command needs symmetric.* parameters; the model.* key '" +
          key + "' cannot be expressed in the symmetric form");
  }
  SymmetricParams<double> s;
  s.delta = get_double("symmetric.delta", s.delta);
  s.g = get_double("symmetric.g", s.g);
  s.gamma = get_double("symmetric.gamma", s.gamma);
  s.G = get_double("symmetric.G", s.G);
  s.delta_2ph = get_double("symmetric.delta_2ph", s.delta_2ph);
  s.omega_rabi = get_double("symmetric.omega_rabi", s.omega_rabi);
  return s;
}

std::optional<Axis<double>> Config::resolve_axis(
    const std::string& prefix) const {
  if (!has(prefix)) return std::nullopt;
  Axis<double> axis;
  axis.name = get_string(prefix, "");
  validate_axis_name(axis.name);
  const double lo = get_double(prefix + "_min", 0.0);
  const double hi = get_double(prefix + "_max", 0.0);
  const long count = get_int(prefix + "_count", 0);
  if (count < 1)
    throw config_error(prefix + "_count must be a positive integer");
  axis.values = linspace(lo, hi, static_cast<std::size_t>(count));
  return axis;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> values(count);
  if (count == 1) {
    values[0] = lo;
    return values;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k)
    values[k] = lo + step * static_cast<double>(k);
  if (count > 1) values.back() = hi;  // land exactly on the endpoint
  return values;
}

}  // namespace parmag
