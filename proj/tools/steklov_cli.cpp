// steklov: command-line front end for the Steklov eigenvalue solver.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "steklov/extension.hpp"
#include "steklov/io.hpp"
#include "steklov/operators.hpp"
#include "steklov/steklov.hpp"
#include "steklov/studies.hpp"

using namespace steklov;
namespace fs = std::filesystem;

namespace {

constexpr int kConfigError = 2;
constexpr int kSolverError = 3;

struct Options {
  std::string curve;
  std::vector<std::string> params;
  bool exterior = false;
  std::string alpha;
  std::optional<double> perimeter;
  std::string config;
  std::size_t n = 256;
  std::size_t k = 10;
  std::string output = ".";
  std::string format;
  bool scaled = false;
  bool dump_operators = false;

  // modes
  std::string spectrum;
  std::vector<std::size_t> modes;
  std::size_t nx = 101;
  std::size_t ny = 101;
  std::vector<double> box;

  // converge
  std::vector<std::size_t> n_list;
  std::size_t n_ref = 1024;
  bool exact = false;

  // sweep, crossing, verify
  std::string r_values;
  std::vector<double> bracket;
  double tol = 1e-8;
  std::string check = "inequalities";
  std::size_t gaps = 50;
};

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw InvalidArgument("cannot parse " + what + " from '" + text + "'");
  return v;
}

// "1,1.5,2" or "1:0.5:10" (inclusive), or a mix of both.
std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto c1 = item.find(':');
    if (c1 == std::string::npos) {
      out.push_back(parse_double(item, "a value"));
      continue;
    }
    const auto c2 = item.find(':', c1 + 1);
    if (c2 == std::string::npos) throw InvalidArgument("ranges are written start:step:stop");
    const double a = parse_double(item.substr(0, c1), "range start");
    const double step = parse_double(item.substr(c1 + 1, c2 - c1 - 1), "range step");
    const double b = parse_double(item.substr(c2 + 1), "range stop");
    if (!(step > 0.0) || b < a) throw InvalidArgument("empty range '" + item + "'");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(a + static_cast<double>(i) * step);
  }
  if (out.empty()) throw InvalidArgument("no values given");
  return out;
}

CurveSpec curve_spec(const Options& o) {
  CurveSpec spec;
  if (!o.config.empty()) {
    const io::Json j = io::read_json(o.config);
    spec = io::curve_spec_from_json(j.contains("curve") ? j.at("curve") : j);
  } else if (o.curve.empty()) {
    throw InvalidArgument("no curve given (use --curve or --config)");
  }
  if (!o.curve.empty()) spec.family = o.curve;
  for (const std::string& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidArgument("parameters are written k=v, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const double v = parse_double(kv.substr(eq + 1), "parameter " + key);
    if (key == "r") spec.params.r = v;
    else if (key == "a") spec.params.a = v;
    else throw InvalidArgument("unknown curve parameter '" + key + "'");
  }
  if (o.exterior) spec.kind = DomainKind::UnboundedExterior;
  if (!o.alpha.empty()) {
    const auto comma = o.alpha.find(',');
    if (comma == std::string::npos) throw InvalidArgument("--alpha takes re,im");
    spec.alpha = complex(parse_double(o.alpha.substr(0, comma), "alpha"),
                         parse_double(o.alpha.substr(comma + 1), "alpha"));
  }
  if (o.perimeter) spec.perimeter_normalize = *o.perimeter;
  return spec;
}

// n and k from the config file unless given on the command line.
void apply_config_sizes(Options& o, const CLI::App& app) {
  if (o.config.empty()) return;
  const io::Json j = io::read_json(o.config);
  if (j.contains("n") && app.count("--n") == 0) o.n = j.at("n").get<std::size_t>();
  if (j.contains("k") && app.count("--k") == 0) o.k = j.at("k").get<std::size_t>();
}

void print_spectrum(const SteklovSpectrum& s, bool scaled) {
  std::printf("%s (%s), n = %zu\n", s.curve.c_str(), to_string(s.kind).c_str(), s.n);
  for (std::size_t i = 0; i < s.lambdas.size(); ++i) {
    const double v = scaled ? s.lambdas_scaled[i] : s.lambdas[i];
    std::printf("%4zu  %s\n", i + 1, io::format_number(v).c_str());
  }
}

int run_solve(Options& o, const CLI::App& app) {
  apply_config_sizes(o, app);
  const CurveSpec spec = curve_spec(o);
  if (o.scaled && spec.kind != DomainKind::BoundedInterior)
    throw InvalidArgument("--scaled applies to bounded domains only");
  const BoundaryCurve curve = make_curve(spec);
  const DtnDiscretization dtn(curve, o.n);
  const SteklovSpectrum s = solve_spectrum(dtn, o.k);
  const fs::path out = o.output;
  io::write_spectrum(out, s, spec);
  if (o.format == "csv") io::write_spectrum_csv(out / "spectrum.csv", s);
  if (o.dump_operators) {
    io::write_matrix_csv(out / "operators" / "K.csv", wittich_matrix(o.n));
    io::write_matrix_csv(out / "operators" / "B.csv", dtn.b());
    io::write_matrix_csv(out / "operators" / "C.csv", dtn.c());
    io::write_matrix_csv(out / "operators" / "E.csv", dtn.e());
  }
  print_spectrum(s, o.scaled);
  return 0;
}

int run_modes(Options& o, const CLI::App& app) {
  CurveSpec spec;
  SteklovSpectrum s;
  const fs::path out = o.output;
  if (!o.spectrum.empty()) {
    io::LoadedSpectrum loaded = io::load_spectrum(o.spectrum);
    spec = loaded.spec;
    s = std::move(loaded.spectrum);
  } else {
    apply_config_sizes(o, app);
    spec = curve_spec(o);
    s = solve_spectrum(make_curve(spec), o.n, o.k);
    io::write_spectrum(out, s, spec);
  }
  const BoundaryCurve curve = make_curve(spec);
  RasterSpec raster;
  raster.nx = o.nx;
  raster.ny = o.ny;
  if (!o.box.empty()) {
    if (o.box.size() != 4) throw InvalidArgument("--box takes xmin,xmax,ymin,ymax");
    raster.box = std::array<double, 4>{o.box[0], o.box[1], o.box[2], o.box[3]};
  }
  std::vector<std::size_t> modes = o.modes;
  if (modes.empty())
    for (std::size_t m = 1; m <= s.lambdas.size(); ++m) modes.push_back(m);
  for (std::size_t m : modes) {
    const FieldSample f = eigenmode_field(curve, s, m, raster);
    const std::string name = "field_mode_" + std::to_string(m) + ".csv";
    io::write_field_csv(out / name, f);
    std::printf("mode %zu  lambda %s  -> %s\n", m, io::format_number(s.lambdas[m - 1]).c_str(),
                name.c_str());
  }
  return 0;
}

int run_converge(Options& o, const CLI::App& app) {
  apply_config_sizes(o, app);
  const CurveSpec spec = curve_spec(o);
  const BoundaryCurve curve = make_curve(spec);
  if (o.n_list.empty()) throw InvalidArgument("--n-list is required");
  std::vector<ConvergenceRecord> rows;
  if (o.exact) {
    if (spec.family != "disk") throw InvalidArgument("--exact is available for the disk only");
    rows = convergence_study(curve, o.n_list, disk_spectrum(o.k, curve.params.a));
  } else {
    rows = convergence_study(curve, o.n_list, o.k, o.n_ref);
  }
  const fs::path out = o.output;
  if (o.format == "csv") io::write_convergence_csv(out / "convergence.csv", rows);
  else io::write_json(out / "convergence.json", io::convergence_to_json(rows));
  for (const auto& r : rows) {
    double worst = 0.0;
    for (double e : r.rel_errors) worst = std::max(worst, e);
    std::printf("n = %5zu  max rel. error %s\n", r.n, io::format_number(worst, 3).c_str());
  }
  return 0;
}

std::optional<NPolicy> policy(const Options& o, const CLI::App& app) {
  if (app.count("--n")) return NPolicy::fixed(o.n);
  return std::nullopt;
}

DomainKind kind_of(const Options& o) {
  return o.exterior ? DomainKind::UnboundedExterior : DomainKind::BoundedInterior;
}

int run_sweep(Options& o, const CLI::App& app) {
  if (o.curve.empty()) throw InvalidArgument("--family is required");
  if (o.r_values.empty()) throw InvalidArgument("--r-values is required");
  const auto rs = parse_values(o.r_values);
  const double length = o.perimeter.value_or(2.0 * std::numbers::pi);
  const auto rows = parameter_sweep(o.curve, kind_of(o), rs, o.k, length, policy(o, app));
  const fs::path out = o.output;
  if (o.format == "csv") io::write_sweep_csv(out / "sweep.csv", rows);
  else io::write_json(out / "sweep.json", io::sweep_to_json(rows));
  for (const auto& r : rows)
    std::printf("r = %s  lambda_1 = %s\n", io::format_number(r.r).c_str(),
                io::format_number(r.lambdas[0]).c_str());
  return 0;
}

int run_crossing(Options& o, const CLI::App& app) {
  if (o.curve.empty()) throw InvalidArgument("--family is required");
  if (o.bracket.size() != 2) throw InvalidArgument("--bracket takes two values");
  const double length = o.perimeter.value_or(2.0 * std::numbers::pi);
  const CrossingResult c = find_crossing(o.curve, kind_of(o), o.k, o.bracket[0], o.bracket[1],
                                         length, o.tol, policy(o, app));
  io::write_json(fs::path(o.output) / "crossing.json", io::crossing_to_json(c));
  std::printf("r* = %s  lambda_%zu = %s  lambda_%zu = %s  gap = %s\n",
              io::format_number(c.r).c_str(), c.k, io::format_number(c.lambda_k).c_str(),
              c.k + 1, io::format_number(c.lambda_k1).c_str(),
              io::format_number(c.gap, 3).c_str());
  return 0;
}

int run_verify(Options& o, const CLI::App& app) {
  const fs::path out = o.output;
  if (o.check == "gaps") {
    apply_config_sizes(o, app);
    const CurveSpec spec = curve_spec(o);
    const std::size_t n = app.count("--n") ? o.n : 1024;
    const SteklovSpectrum s = solve_spectrum(make_curve(spec), n, 2 * o.gaps);
    const auto gaps = asymptotic_gaps(s, o.gaps);
    if (o.format == "csv") io::write_gaps_csv(out / "gaps.csv", gaps);
    else io::write_json(out / "gaps.json", io::gaps_to_json(gaps));
    std::printf("max gap, k in 15..20: %s\n", io::format_number(max_gap(gaps, 15, 20), 6).c_str());
    if (o.gaps >= 50)
      std::printf("max gap, k in 45..50: %s\n",
                  io::format_number(max_gap(gaps, 45, 50), 6).c_str());
    return 0;
  }
  if (o.curve.empty()) throw InvalidArgument("--family is required");
  const auto rs = parse_values(o.r_values.empty() ? "1:0.5:10" : o.r_values);
  const double length = o.perimeter.value_or(2.0 * std::numbers::pi);
  const auto sweep = parameter_sweep(o.curve, kind_of(o), rs, 2, length, policy(o, app));
  const InequalityReport rep = check_inequalities(sweep, kind_of(o));
  if (o.format == "csv") io::write_inequalities_csv(out / "inequalities.csv", rep);
  else io::write_json(out / "inequalities.json", io::inequalities_to_json(rep));
  std::printf("%zu shapes, inequalities %s\n", rep.rows.size(),
              rep.all_hold ? "hold" : "VIOLATED");
  return 0;
}

void report(const std::string& type, const std::string& message, int code,
            const std::string& output) {
  const io::Json j = io::error_json(type, message, code);
  std::cerr << j.dump() << '\n';
  if (output.empty()) return;
  try {
    io::write_json(fs::path(output) / "error.json", j);
  } catch (const std::exception&) {
  }
}

void curve_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--curve,--family", o.curve, "builtin family: disk, ellipse, star2, kite, g1, g2");
  cmd->add_option("--params", o.params, "family parameters, e.g. r=2,a=1")->delimiter(',');
  cmd->add_flag("--exterior", o.exterior, "solve on the unbounded exterior");
  cmd->add_option("--alpha", o.alpha, "interior base point re,im");
  cmd->add_option("--perimeter", o.perimeter, "rescale the curve to this perimeter");
  cmd->add_option("--config", o.config, "JSON curve spec (optionally with n and k)");
}

void output_options(CLI::App* cmd, Options& o, const std::string& format) {
  cmd->add_option("--output", o.output, "output directory")->capture_default_str();
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_str(format);
  cmd->callback([&o, format] {
    if (o.format.empty()) o.format = format;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steklov eigenvalues of smooth planar domains"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "eigenvalues and boundary traces");
  curve_options(solve, o);
  solve->add_option("--n", o.n, "number of boundary nodes")->capture_default_str();
  solve->add_option("--k", o.k, "number of eigenvalues")->capture_default_str();
  solve->add_flag("--scaled", o.scaled, "print lambda * sqrt(area)");
  solve->add_flag("--dump-operators", o.dump_operators, "write K, B, C, E as CSV");
  output_options(solve, o, "json");

  auto* modes = app.add_subcommand("modes", "eigenfunctions sampled on a raster");
  curve_options(modes, o);
  modes->add_option("--n", o.n, "number of boundary nodes")->capture_default_str();
  modes->add_option("--k", o.k, "number of eigenvalues")->capture_default_str();
  modes->add_option("--spectrum", o.spectrum, "reuse a spectrum.json written by solve");
  modes->add_option("--mode", o.modes, "modes to sample (1-based)")->delimiter(',');
  modes->add_option("--nx", o.nx, "raster columns")->capture_default_str();
  modes->add_option("--ny", o.ny, "raster rows")->capture_default_str();
  modes->add_option("--box", o.box, "xmin,xmax,ymin,ymax")->delimiter(',');
  output_options(modes, o, "csv");

  auto* converge = app.add_subcommand("converge", "relative errors against a reference");
  curve_options(converge, o);
  converge->add_option("--n-list", o.n_list, "grid sizes, e.g. 160,200,240")->delimiter(',');
  converge->add_option("--k", o.k, "number of eigenvalues")->capture_default_str();
  converge->add_option("--n-ref", o.n_ref, "reference grid size")->capture_default_str();
  converge->add_flag("--exact", o.exact, "compare with the exact disk spectrum");
  output_options(converge, o, "csv");

  auto* sweep = app.add_subcommand("sweep", "spectra over a perimeter-normalized family");
  sweep->add_option("--family,--curve", o.curve, "ellipse or star2");
  sweep->add_flag("--exterior", o.exterior, "solve on the unbounded exterior");
  sweep->add_option("--r-values", o.r_values, "values, e.g. 1,2,3 or 1:0.5:10");
  sweep->add_option("--k", o.k, "number of eigenvalues")->capture_default_str();
  sweep->add_option("--perimeter", o.perimeter, "perimeter (default 2 pi)");
  sweep->add_option("--n", o.n, "fixed grid size (default: 1024/2048 by r)");
  output_options(sweep, o, "csv");

  auto* crossing = app.add_subcommand("crossing", "locate lambda_k = lambda_k+1 in r");
  crossing->add_option("--family,--curve", o.curve, "ellipse or star2");
  crossing->add_flag("--exterior", o.exterior, "solve on the unbounded exterior");
  crossing->add_option("--k", o.k, "lower eigenvalue index")->required();
  crossing->add_option("--bracket", o.bracket, "search interval lo hi")->expected(2)->required();
  crossing->add_option("--perimeter", o.perimeter, "perimeter (default 2 pi)");
  crossing->add_option("--tol", o.tol, "tolerance in r")->capture_default_str();
  crossing->add_option("--n", o.n, "fixed grid size (default: 1024/2048 by r)");
  output_options(crossing, o, "json");

  auto* verify = app.add_subcommand("verify", "isoperimetric inequalities or asymptotic gaps");
  curve_options(verify, o);
  verify->add_option("--check", o.check, "inequalities or gaps")
      ->check(CLI::IsMember({"inequalities", "gaps"}))
      ->capture_default_str();
  verify->add_option("--r-values", o.r_values, "family values (default 1:0.5:10)");
  verify->add_option("--gaps", o.gaps, "largest k for --check gaps")->capture_default_str();
  verify->add_option("--n", o.n, "grid size");
  output_options(verify, o, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report("ConfigError", e.what(), kConfigError, "");
    return kConfigError;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    const std::string name = cmd->get_name();
    if (name == "solve") return run_solve(o, *cmd);
    if (name == "modes") return run_modes(o, *cmd);
    if (name == "converge") return run_converge(o, *cmd);
    if (name == "sweep") return run_sweep(o, *cmd);
    if (name == "crossing") return run_crossing(o, *cmd);
    return run_verify(o, *cmd);
  } catch (const InvalidArgument& e) {
    report("ConfigError", e.what(), kConfigError, o.output);
    return kConfigError;
  } catch (const nlohmann::json::exception& e) {
    report("ConfigError", e.what(), kConfigError, o.output);
    return kConfigError;
  } catch (const SingularMatrix& e) {
    report("SingularMatrix", e.what(), kSolverError, o.output);
    return kSolverError;
  } catch (const DiscretizationError& e) {
    report("DiscretizationError", e.what(), kSolverError, o.output);
    return kSolverError;
  } catch (const ConvergenceError& e) {
    report("ConvergenceError", e.what(), kSolverError, o.output);
    return kSolverError;
  } catch (const std::exception& e) {
    report("Error", e.what(), kSolverError, o.output);
    return kSolverError;
  }
}
