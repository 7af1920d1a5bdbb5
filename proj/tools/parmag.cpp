#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parmag/config.hpp"
#include "parmag/fluctuations.hpp"
#include "parmag/lab_units.hpp"
#include "parmag/serialize.hpp"
#include "parmag/stability.hpp"
#include "parmag/sweep.hpp"
#include "parmag/version.hpp"

namespace {

using parmag::Cell;
using parmag::Config;
using parmag::format_double;
using parmag::KeyValueList;
using parmag::Table;

struct CliOptions {
  std::string config_path;
  std::vector<std::string> sets;
  std::string output_path;
  std::string format;
  int workers = 0;
  double tol = 0;
};

// File first, then --set overrides, then the dedicated flags.
Config load_config(const CliOptions& o) {
  Config c = o.config_path.empty() ? Config{} : Config::from_file(o.config_path);
  for (const auto& assignment : o.sets) c.apply_override(assignment);
  if (!o.output_path.empty()) c.set("output.path", o.output_path);
  if (!o.format.empty()) c.set("output.format", o.format);
  if (o.workers > 0) c.set("run.workers", std::to_string(o.workers));
  if (o.tol > 0) c.set("run.tol", format_double(o.tol));
  return c;
}

void echo_model(KeyValueList& kv, const parmag::ModelParams<double>& p) {
  kv.emplace_back("model.delta_c", format_double(p.delta_c));
  kv.emplace_back("model.delta_1", format_double(p.delta_1));
  kv.emplace_back("model.delta_2", format_double(p.delta_2));
  kv.emplace_back("model.g1", format_double(p.g1));
  kv.emplace_back("model.g2", format_double(p.g2));
  kv.emplace_back("model.kappa", format_double(p.kappa));
  kv.emplace_back("model.gamma1", format_double(p.gamma1));
  kv.emplace_back("model.gamma2", format_double(p.gamma2));
  kv.emplace_back("model.G", format_double(p.G));
  kv.emplace_back("model.delta_2ph", format_double(p.delta_2ph));
  kv.emplace_back("model.omega_rabi", format_double(p.omega_rabi));
}

void echo_symmetric(KeyValueList& kv, const parmag::SymmetricParams<double>& s) {
  kv.emplace_back("symmetric.delta", format_double(s.delta));
  kv.emplace_back("symmetric.g", format_double(s.g));
  kv.emplace_back("symmetric.gamma", format_double(s.gamma));
  kv.emplace_back("symmetric.G", format_double(s.G));
  kv.emplace_back("symmetric.delta_2ph", format_double(s.delta_2ph));
  kv.emplace_back("symmetric.omega_rabi", format_double(s.omega_rabi));
}

void echo_axis(KeyValueList& kv, const std::string& prefix,
               const parmag::Axis<double>& axis) {
  kv.emplace_back(prefix, axis.name);
  kv.emplace_back(prefix + "_min", format_double(axis.values.front()));
  kv.emplace_back(prefix + "_max", format_double(axis.values.back()));
  kv.emplace_back(prefix + "_count", std::to_string(axis.values.size()));
}

unsigned resolved_workers(const Config& c) {
  const long w = c.get_int("run.workers", 1);
  if (w < 1) throw parmag::config_error("run.workers must be >= 1");
  return static_cast<unsigned>(w);
}

// Error notes travel in CSV cells; keep them single-token friendly.
std::string sanitize_note(std::string note) {
  for (char& ch : note)
    if (ch == ',' || ch == '\n') ch = ';';
  return note;
}

void emit(const Config& c, const std::string& command, KeyValueList echo,
          const KeyValueList& summaries, const Table& table) {
  const std::string format = c.get_string("output.format", "csv");
  if (format != "csv" && format != "json")
    throw parmag::config_error("output.format must be csv or json, got '" +
                               format + "'");
  KeyValueList full;
  full.emplace_back("command", command);
  full.emplace_back("generator", std::string("parmag ") + parmag::version_string);
  for (auto& kv : echo) full.push_back(std::move(kv));
  full.emplace_back("output.format", format);

  const std::string path = c.get_string("output.path", "");
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!path.empty()) {
    file.open(path);
    if (!file)
      throw parmag::config_error("cannot open output path: " + path);
    os = &file;
  }
  if (format == "csv")
    parmag::write_csv(*os, full, summaries, table);
  else
    parmag::write_json(*os, command, full, summaries, table);
}

void cmd_eig(const Config& c) {
  const std::string form = c.get_string("eig.form", "full");
  KeyValueList echo;
  parmag::Spectrum<double> spec;
  if (form == "full") {
    const auto p = c.resolve_model();
    spec = parmag::compute_spectrum(parmag::build_full_matrix(p));
    echo_model(echo, p);
  } else if (form == "reduced") {
    const auto s = c.resolve_symmetric();
    spec = parmag::compute_spectrum(parmag::build_reduced_matrix(s));
    echo_symmetric(echo, s);
  } else {
    throw parmag::config_error("eig.form must be full or reduced, got '" +
                               form + "'");
  }
  echo.emplace_back("eig.form", form);
  KeyValueList summaries;
  summaries.emplace_back("stable", spec.stable ? "true" : "false");
  summaries.emplace_back("max_im", format_double(spec.max_im));
  Table t;
  t.columns = {"index", "re_lambda", "im_lambda"};
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k)
    t.rows.push_back({Cell::num(static_cast<double>(k)),
                      Cell::num(spec.eigenvalues[k].real()),
                      Cell::num(spec.eigenvalues[k].imag())});
  emit(c, "eig", std::move(echo), summaries, t);
}

void cmd_steady(const Config& c) {
  const auto p = c.resolve_model();
  const auto s = parmag::solve_steady_state(p);
  const double cond_warn = c.get_double("run.cond_warn", 1e12);
  if (s.condition_estimate > cond_warn)
    std::cerr << "warning: drift matrix condition estimate "
              << format_double(s.condition_estimate) << " exceeds "
              << format_double(cond_warn)
              << "; the steady state is poorly conditioned\n";
  KeyValueList echo;
  echo_model(echo, p);
  KeyValueList summaries;
  summaries.emplace_back("spin_current", format_double(s.spin_current));
  summaries.emplace_back("condition_estimate",
                         format_double(s.condition_estimate));
  static const char* const mode_names[] = {"a",     "m1",     "m2",
                                           "a_dag", "m1_dag", "m2_dag"};
  Table t;
  t.columns = {"mode", "re_amplitude", "im_amplitude"};
  for (int k = 0; k < 6; ++k)
    t.rows.push_back({Cell::str(mode_names[k]), Cell::num(s.amplitudes(k).real()),
                      Cell::num(s.amplitudes(k).imag())});
  emit(c, "steady", std::move(echo), summaries, t);
}

void cmd_enhance(const Config& c) {
  const auto p = c.resolve_model();
  const auto axis = c.resolve_axis("sweep.x");
  KeyValueList echo;
  echo_model(echo, p);
  Table t;
  if (axis) {
    if (axis->name != "G")
      throw parmag::config_error(
          "enhance sweeps the pump strength; sweep.x must be G");
    const unsigned workers = resolved_workers(c);
    const auto curve = parmag::enhancement_curve(p, axis->values, workers);
    echo_axis(echo, "sweep.x", *axis);
    echo.emplace_back("run.workers", std::to_string(workers));
    t.columns = {"G", "F"};
    for (const auto& point : curve)
      t.rows.push_back({Cell::num(point.g_pump),
                        point.stable ? Cell::num(point.f_value)
                                     : Cell::str("unstable")});
    emit(c, "enhance", std::move(echo), {}, t);
  } else {
    const auto r = parmag::enhancement_factor(p);
    t.columns = {"G", "F", "m_with_G", "m_without_G"};
    t.rows.push_back({Cell::num(p.G), Cell::num(r.f_value),
                      Cell::num(r.m_with_G), Cell::num(r.m_without_G)});
    emit(c, "enhance", std::move(echo), {}, t);
  }
}

void cmd_phase(const Config& c) {
  const auto p = c.resolve_model();
  const std::string mode = c.get_string("phase.mode", "grid");
  const unsigned workers = resolved_workers(c);
  KeyValueList echo;
  echo_model(echo, p);
  echo.emplace_back("phase.mode", mode);
  Table t;
  if (mode == "grid") {
    parmag::Axis<double> x = c.resolve_axis("sweep.x").value_or(
        parmag::Axis<double>{"delta", parmag::linspace(-6, 6, 241)});
    parmag::Axis<double> y = c.resolve_axis("sweep.y").value_or(
        parmag::Axis<double>{"G", parmag::linspace(0, 3, 241)});
    const std::string metric = c.get_string("sweep.metric", "stable");
    const auto grid = parmag::run_sweep(p, x, std::optional{y}, metric, workers);
    echo_axis(echo, "sweep.x", x);
    echo_axis(echo, "sweep.y", y);
    echo.emplace_back("sweep.metric", metric);
    echo.emplace_back("run.workers", std::to_string(workers));
    t.columns = {x.name, y.name, metric};
    const std::size_t nx = x.values.size();
    for (std::size_t k = 0; k < grid.values.size(); ++k) {
      const double v = grid.values[k];
      t.rows.push_back({Cell::num(x.values[k % nx]), Cell::num(y.values[k / nx]),
                        std::isfinite(v) ? Cell::num(v)
                                         : Cell::str("unstable")});
    }
    emit(c, "phase", std::move(echo), {}, t);
  } else if (mode == "boundary") {
    parmag::Axis<double> x = c.resolve_axis("sweep.x").value_or(
        parmag::Axis<double>{"delta", parmag::linspace(-6, 6, 241)});
    if (x.name != "delta")
      throw parmag::config_error(
          "boundary tracing follows the common detuning; sweep.x must be delta");
    const double tol = c.get_double("run.tol", parmag::default_bisection_tol);
    const double g_max = c.get_double("run.g_max", parmag::default_g_max);
    const auto boundary =
        parmag::trace_boundary(x.values, p, g_max, tol, workers);
    echo_axis(echo, "sweep.x", x);
    echo.emplace_back("run.tol", format_double(tol));
    echo.emplace_back("run.g_max", format_double(g_max));
    echo.emplace_back("run.workers", std::to_string(workers));
    t.columns = {"delta", "g_c", "note"};
    for (std::size_t k = 0; k < boundary.delta_axis.size(); ++k) {
      const double gc = boundary.g_c[k];
      t.rows.push_back({Cell::num(boundary.delta_axis[k]),
                        std::isfinite(gc) ? Cell::num(gc) : Cell::str("none"),
                        Cell::str(sanitize_note(boundary.notes[k]))});
    }
    emit(c, "phase", std::move(echo), {}, t);
  } else {
    throw parmag::config_error("phase.mode must be grid or boundary, got '" +
                               mode + "'");
  }
}

void cmd_tracks(const Config& c) {
  const auto s = c.resolve_symmetric();
  const double lo = c.get_double("tracks.delta_min", 0.0);
  const double hi = c.get_double("tracks.delta_max", 6.0);
  const long count = c.get_int("tracks.count", 601);
  if (count < 1)
    throw parmag::config_error("tracks.count must be a positive integer");
  const double radius =
      c.get_double("tracks.radius", parmag::default_matching_radius);
  const auto tracks = parmag::eigenvalue_tracks(
      s, parmag::linspace(lo, hi, static_cast<std::size_t>(count)), radius);
  KeyValueList echo;
  echo_symmetric(echo, s);
  echo.emplace_back("tracks.delta_min", format_double(lo));
  echo.emplace_back("tracks.delta_max", format_double(hi));
  echo.emplace_back("tracks.count", std::to_string(count));
  echo.emplace_back("tracks.radius", format_double(radius));
  double best_im = std::numeric_limits<double>::infinity();
  double best_delta = 0;
  for (const auto& track : tracks.tracks)
    for (std::size_t k = 0; k < track.size(); ++k)
      if (std::abs(track[k].imag()) < best_im) {
        best_im = std::abs(track[k].imag());
        best_delta = tracks.delta_values[k];
      }
  KeyValueList summaries;
  summaries.emplace_back("min_abs_im", format_double(best_im));
  summaries.emplace_back("min_abs_im_delta", format_double(best_delta));
  Table t;
  t.columns = {"delta"};
  for (int m = 1; m <= 4; ++m) t.columns.push_back("re_lambda_" + std::to_string(m));
  for (int m = 1; m <= 4; ++m) t.columns.push_back("im_lambda_" + std::to_string(m));
  t.columns.push_back("ambiguous");
  for (std::size_t k = 0; k < tracks.delta_values.size(); ++k) {
    std::vector<Cell> row{Cell::num(tracks.delta_values[k])};
    for (int m = 0; m < 4; ++m) row.push_back(Cell::num(tracks.tracks[m][k].real()));
    for (int m = 0; m < 4; ++m) row.push_back(Cell::num(tracks.tracks[m][k].imag()));
    row.push_back(Cell::num(tracks.ambiguous[k] ? 1 : 0));
    t.rows.push_back(std::move(row));
  }
  emit(c, "tracks", std::move(echo), summaries, t);
}

void cmd_lyapunov(const Config& c) {
  const auto p = c.resolve_model();
  parmag::NoiseSpec<double> n;
  n.n_th_cavity = c.get_double("noise.n_cavity", 0.0);
  n.n_th_m1 = c.get_double("noise.n_m1", 0.0);
  n.n_th_m2 = c.get_double("noise.n_m2", 0.0);
  const auto r = parmag::solve_lyapunov(p, n);
  const auto steady = parmag::solve_steady_state(p);
  KeyValueList echo;
  echo_model(echo, p);
  echo.emplace_back("noise.n_cavity", format_double(n.n_th_cavity));
  echo.emplace_back("noise.n_m1", format_double(n.n_th_m1));
  echo.emplace_back("noise.n_m2", format_double(n.n_th_m2));
  KeyValueList summaries;
  summaries.emplace_back("quantum_m2_occupancy",
                         format_double(r.quantum_m2_occupancy));
  summaries.emplace_back("ratio_to_semiclassical",
                         format_double(r.ratio_to_semiclassical));
  summaries.emplace_back("semiclassical_spin_current",
                         format_double(steady.spin_current));
  summaries.emplace_back(
      "total_spin_current",
      format_double(steady.spin_current + r.quantum_m2_occupancy));
  Table t;
  t.columns = {"row", "col", "re_moment", "im_moment"};
  for (Eigen::Index i = 0; i < 6; ++i)
    for (Eigen::Index j = 0; j < 6; ++j)
      t.rows.push_back({Cell::num(static_cast<double>(i)),
                        Cell::num(static_cast<double>(j)),
                        Cell::num(r.second_moments(i, j).real()),
                        Cell::num(r.second_moments(i, j).imag())});
  emit(c, "lyapunov", std::move(echo), summaries, t);
}

void cmd_units(const Config& c) {
  const parmag::LabParams<double> defaults;
  const double omega_c = c.get_double("units.omega_c", defaults.omega_c);
  const double v_c = c.get_double("units.v_c", defaults.v_c);
  const double n1 = c.get_double("units.n1", defaults.n1);
  const double n2 = c.get_double("units.n2", defaults.n2);
  const double rho1 = c.get_double("units.rho1", defaults.rho1);
  const double d1 = c.get_double("units.d1", defaults.d1);
  const double d_p = c.get_double("units.d_p", defaults.d_p);
  const double gamma_ref = c.get_double("units.gamma_ref", parmag::default_gamma_lab);
  if (!(gamma_ref > 0))
    throw parmag::invalid_parameter("units.gamma_ref must be > 0");
  const double b_vac = parmag::vacuum_field(omega_c, v_c);
  const double g1 = parmag::coupling_g(n1, omega_c, v_c);
  const double g2 = parmag::coupling_g(n2, omega_c, v_c);
  const double omega = parmag::rabi_omega(rho1, d1, d_p);
  KeyValueList echo;
  echo.emplace_back("units.omega_c", format_double(omega_c));
  echo.emplace_back("units.v_c", format_double(v_c));
  echo.emplace_back("units.n1", format_double(n1));
  echo.emplace_back("units.n2", format_double(n2));
  echo.emplace_back("units.rho1", format_double(rho1));
  echo.emplace_back("units.d1", format_double(d1));
  echo.emplace_back("units.d_p", format_double(d_p));
  echo.emplace_back("units.gamma_ref", format_double(gamma_ref));
  Table t;
  t.columns = {"quantity", "value", "unit"};
  t.rows.push_back({Cell::str("b_vac"), Cell::num(b_vac), Cell::str("T")});
  t.rows.push_back({Cell::str("g1"), Cell::num(g1), Cell::str("rad/s")});
  t.rows.push_back({Cell::str("g2"), Cell::num(g2), Cell::str("rad/s")});
  t.rows.push_back({Cell::str("omega_rabi"), Cell::num(omega), Cell::str("rad/s")});
  t.rows.push_back({Cell::str("omega_over_gamma_ref"),
                    Cell::num(omega / gamma_ref), Cell::str("dimensionless")});
  emit(c, "units", std::move(echo), {}, t);
}

void error_record(const char* kind, const std::string& message) {
  nlohmann::ordered_json rec;
  rec["error"] = kind;
  rec["message"] = message;
  std::cerr << rec.dump() << "\n";
}

int dispatch(const std::string& command, const CliOptions& opts) {
  try {
    const Config cfg = load_config(opts);
    if (command == "eig") cmd_eig(cfg);
    else if (command == "steady") cmd_steady(cfg);
    else if (command == "enhance") cmd_enhance(cfg);
    else if (command == "phase") cmd_phase(cfg);
    else if (command == "tracks") cmd_tracks(cfg);
    else if (command == "lyapunov") cmd_lyapunov(cfg);
    else cmd_units(cfg);
    return 0;
  } catch (const parmag::config_error& e) {
    error_record("config", e.what());
    return 2;
  } catch (const parmag::invalid_parameter& e) {
    error_record("invalid_parameter", e.what());
    return 3;
  } catch (const parmag::unstable_parameters& e) {
    error_record("unstable_parameters", e.what());
    return 3;
  } catch (const parmag::bracket_failure& e) {
    error_record("bracket_failure", e.what());
    return 3;
  } catch (const parmag::zero_denominator& e) {
    error_record("zero_denominator", e.what());
    return 3;
  } catch (const parmag::eigensolver_failure& e) {
    error_record("eigensolver_failure", e.what());
    return 4;
  } catch (const parmag::singular_solve& e) {
    error_record("singular_solve", e.what());
    return 4;
  } catch (const std::exception& e) {
    error_record("internal", e.what());
    return 4;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steady-state and stability toolkit for a parametrically "
               "pumped cavity coupled to two magnon modes"};
  app.set_version_flag("--version", std::string("parmag ") + parmag::version_string);
  CliOptions opts;
  app.add_option("--config", opts.config_path, "configuration file (key = value lines)");
  app.add_option("--set", opts.sets, "override one config key (key=value), repeatable")
      ->allow_extra_args(false);
  app.add_option("--output", opts.output_path, "output path (default: stdout)");
  app.add_option("--format", opts.format, "output format: csv or json");
  app.add_option("--workers", opts.workers, "worker threads for grid commands");
  app.add_option("--tol", opts.tol, "bisection tolerance for boundary tracing");
  app.require_subcommand(1);
  static const char* const commands[][2] = {
      {"eig", "eigenvalue spectrum of the drift matrix (full or reduced)"},
      {"steady", "steady-state amplitudes, spin current, condition estimate"},
      {"enhance", "spin-current enhancement factor F (single point or curve)"},
      {"phase", "stability grid or traced critical-pump boundary"},
      {"tracks", "reduced-model eigenvalue tracks along the common detuning"},
      {"lyapunov", "steady-state second moments and quantum/semiclassical ratio"},
      {"units", "laboratory-to-model rate conversions"},
  };
  for (const auto& cmd : commands) app.add_subcommand(cmd[0], cmd[1])->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return dispatch(app.get_subcommands().front()->get_name(), opts);
}
