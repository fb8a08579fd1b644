#include "selfforce/cli.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "selfforce/batch.hpp"
#include "selfforce/format.hpp"
#include "selfforce/kernels.hpp"
#include "selfforce/oracles.hpp"
#include "selfforce/quadrature.hpp"
#include "selfforce/study.hpp"
#include "selfforce/trajectory.hpp"

namespace selfforce::cli {

namespace {

using nlohmann::ordered_json;
using io::format_double;

constexpr int kSchemaVersion = 1;

constexpr int kExitOk = 0;
constexpr int kExitOracleFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerics = 3;
constexpr int kExitStrict = 4;

struct Options {
  std::string config_path;
  double kappa = 1.0;
  double dt_frac = 0.1;
  std::string shape = "smoothstep-cubic";
  double q_over_r = 1e-3;
  double hbar = 1.0;
  double radius = 1.0;
  double rho_c = 1.0;
  double speed_limit_fraction = 0.1;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::string grid;       // "lo:hi:n"
  std::string grid_list;  // "a,b,c"
  int n_steps = 7;
  double tolerance = 0.0;
  bool tolerance_set = false;
  double chi = 0.0;
  bool chi_set = false;
  std::string out;
  std::string format;
  bool strict = false;
  // grid taken verbatim from a config file array
  std::optional<std::vector<double>> config_grid;
};

// Option handles for one subcommand, so config values never override flags.
struct Flags {
  CLI::Option* kappa = nullptr;
  CLI::Option* dt_frac = nullptr;
  CLI::Option* shape = nullptr;
  CLI::Option* q_over_r = nullptr;
  CLI::Option* hbar = nullptr;
  CLI::Option* radius = nullptr;
  CLI::Option* rho_c = nullptr;
  CLI::Option* speed_limit_fraction = nullptr;
  CLI::Option* rel_tol = nullptr;
  CLI::Option* abs_tol = nullptr;
  CLI::Option* grid = nullptr;
  CLI::Option* grid_list = nullptr;
  CLI::Option* n_steps = nullptr;
  CLI::Option* tolerance = nullptr;
  CLI::Option* chi = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* strict = nullptr;
};

Flags add_common_options(CLI::App* cmd, Options& opt) {
  Flags f;
  cmd->add_option("--config", opt.config_path,
                  "JSON config file; explicit flags win over its values");
  f.kappa = cmd->add_option("--kappa", opt.kappa,
                            "window length over body radius, tau/R");
  f.dt_frac = cmd->add_option("--dt-frac", opt.dt_frac,
                              "ramp duration over window length, delta_t/tau");
  f.shape = cmd->add_option("--shape", opt.shape,
                            "ramp shape: linear|smoothstep|cosine");
  f.q_over_r = cmd->add_option("--q-over-r", opt.q_over_r,
                               "plateau displacement over body radius");
  f.hbar = cmd->add_option("--hbar", opt.hbar, "hbar in working units");
  f.radius = cmd->add_option("--radius", opt.radius, "body radius R");
  f.rho_c = cmd->add_option("--rho-c", opt.rho_c, "charge density rho_c");
  f.speed_limit_fraction =
      cmd->add_option("--speed-limit-fraction", opt.speed_limit_fraction,
                      "physicality speed limit as a fraction of c");
  f.rel_tol = cmd->add_option("--rel-tol", opt.rel_tol,
                              "quadrature relative tolerance");
  f.abs_tol = cmd->add_option("--abs-tol", opt.abs_tol,
                              "quadrature absolute tolerance");
  f.out = cmd->add_option("--out", opt.out, "output path (default stdout)");
  f.format = cmd->add_option("--format", opt.format, "output format");
  f.strict = cmd->add_flag("--strict", opt.strict,
                           "exit 4 when physicality checks fail");
  return f;
}

void add_grid_options(CLI::App* cmd, Options& opt, Flags& f) {
  f.grid = cmd->add_option("--grid", opt.grid,
                           "uniform grid as lo:hi:n (inclusive ends)");
  f.grid_list = cmd->add_option("--grid-list", opt.grid_list,
                                "explicit comma-separated grid values");
}

[[noreturn]] void config_error(const std::string& message) {
  throw std::invalid_argument(message);
}

double parse_double(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) config_error(field + ": bad number '" + text + "'");
    return v;
  } catch (const std::invalid_argument&) {
    config_error(field + ": bad number '" + text + "'");
  } catch (const std::out_of_range&) {
    config_error(field + ": number out of range '" + text + "'");
  }
}

std::vector<double> parse_grid_range(const std::string& text) {
  std::vector<std::string> parts;
  std::string piece;
  std::istringstream in(text);
  while (std::getline(in, piece, ':')) parts.push_back(piece);
  if (parts.size() != 3)
    config_error("grid: expected lo:hi:n, got '" + text + "'");
  const double lo = parse_double(parts[0], "grid");
  const double hi = parse_double(parts[1], "grid");
  const double n_raw = parse_double(parts[2], "grid");
  if (!(n_raw >= 1.0) || n_raw != std::floor(n_raw) || n_raw > 10'000'000.0)
    config_error("grid: point count must be a positive integer");
  const auto n = static_cast<std::size_t>(n_raw);
  if (!std::isfinite(lo) || !std::isfinite(hi))
    config_error("grid: endpoints must be finite");
  if (n == 1) {
    if (lo != hi) config_error("grid: n = 1 needs lo == hi");
    return {lo};
  }
  if (!(hi > lo)) config_error("grid: must be sorted ascending (hi > lo)");
  std::vector<double> values(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    values[i] = lo + step * static_cast<double>(i);
  values.back() = hi;
  return values;
}

std::vector<double> parse_grid_list(const std::string& text) {
  std::vector<double> values;
  std::string piece;
  std::istringstream in(text);
  while (std::getline(in, piece, ',')) {
    if (piece.empty()) config_error("grid: empty entry in list");
    values.push_back(parse_double(piece, "grid"));
  }
  if (values.empty()) config_error("grid: empty grid");
  return values;
}

void require_sorted(const std::vector<double>& grid) {
  if (grid.empty()) config_error("grid: empty grid");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (grid[i + 1] < grid[i])
      config_error("grid: must be sorted ascending");
  for (double v : grid)
    if (!std::isfinite(v)) config_error("grid: entries must be finite");
}

// defaults < config file < flags
void apply_config(Options& opt, const Flags& f) {
  if (opt.config_path.empty()) return;
  std::ifstream in(opt.config_path);
  if (!in) config_error("config: cannot open '" + opt.config_path + "'");
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    config_error("config: " + std::string(e.what()));
  }
  if (!doc.is_object()) config_error("config: top level must be an object");

  auto flag_given = [](const CLI::Option* o) { return o && o->count() > 0; };
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "kappa") {
        if (!flag_given(f.kappa)) opt.kappa = value.get<double>();
      } else if (key == "dt_over_tau") {
        if (!flag_given(f.dt_frac)) opt.dt_frac = value.get<double>();
      } else if (key == "shape") {
        if (!flag_given(f.shape)) opt.shape = value.get<std::string>();
      } else if (key == "q_over_r") {
        if (!flag_given(f.q_over_r)) opt.q_over_r = value.get<double>();
      } else if (key == "hbar") {
        if (!flag_given(f.hbar)) opt.hbar = value.get<double>();
      } else if (key == "radius") {
        if (!flag_given(f.radius)) opt.radius = value.get<double>();
      } else if (key == "rho_c") {
        if (!flag_given(f.rho_c)) opt.rho_c = value.get<double>();
      } else if (key == "speed_limit_fraction") {
        if (!flag_given(f.speed_limit_fraction))
          opt.speed_limit_fraction = value.get<double>();
      } else if (key == "rel_tol") {
        if (!flag_given(f.rel_tol)) opt.rel_tol = value.get<double>();
      } else if (key == "abs_tol") {
        if (!flag_given(f.abs_tol)) opt.abs_tol = value.get<double>();
      } else if (key == "grid") {
        if (!flag_given(f.grid) && !flag_given(f.grid_list)) {
          if (value.is_string())
            opt.grid = value.get<std::string>();
          else if (value.is_array())
            opt.config_grid = value.get<std::vector<double>>();
          else
            config_error("config: grid must be a lo:hi:n string or an array");
        }
      } else if (key == "n_steps") {
        if (!flag_given(f.n_steps)) opt.n_steps = value.get<int>();
      } else if (key == "tolerance") {
        if (!flag_given(f.tolerance)) {
          opt.tolerance = value.get<double>();
          opt.tolerance_set = true;
        }
      } else if (key == "chi") {
        if (!flag_given(f.chi)) {
          opt.chi = value.get<double>();
          opt.chi_set = true;
        }
      } else if (key == "out") {
        if (!flag_given(f.out)) opt.out = value.get<std::string>();
      } else if (key == "format") {
        if (!flag_given(f.format)) opt.format = value.get<std::string>();
      } else if (key == "strict") {
        if (!flag_given(f.strict)) opt.strict = value.get<bool>();
      } else {
        config_error("config: unknown field '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    config_error("config: " + std::string(e.what()));
  }
}

std::string pick_format(const Options& opt, const std::string& fallback,
                        std::initializer_list<const char*> allowed) {
  const std::string chosen = opt.format.empty() ? fallback : opt.format;
  for (const char* a : allowed)
    if (chosen == a) return chosen;
  std::string list;
  for (const char* a : allowed) {
    if (!list.empty()) list += "|";
    list += a;
  }
  config_error("format: '" + chosen + "' not supported here (use " + list + ")");
}

std::vector<double> resolve_grid(const Options& opt, const Flags& f,
                                 const std::string& fallback_range) {
  if (f.grid->count() > 0 && f.grid_list->count() > 0)
    config_error("grid: use either --grid or --grid-list, not both");
  std::vector<double> grid;
  if (f.grid_list->count() > 0)
    grid = parse_grid_list(opt.grid_list);
  else if (f.grid->count() > 0)
    grid = parse_grid_range(opt.grid);
  else if (opt.config_grid)
    grid = *opt.config_grid;
  else if (!opt.grid.empty())  // from config as a string
    grid = parse_grid_range(opt.grid);
  else
    grid = parse_grid_range(fallback_range);
  require_sorted(grid);
  return grid;
}

void emit(const Options& opt, const std::string& content) {
  if (opt.out.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(opt.out, std::ios::binary);
  if (!out) config_error("out: cannot open '" + opt.out + "'");
  out << content;
  if (!out) config_error("out: write failed for '" + opt.out + "'");
}

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

quadrature::QuadratureSpec make_spec(const Options& opt) {
  if (!(opt.rel_tol >= 0.0) || !(opt.abs_tol >= 0.0))
    config_error("rel_tol/abs_tol: tolerances must be >= 0");
  quadrature::QuadratureSpec spec;
  spec.rel_tol = opt.rel_tol;
  spec.abs_tol = opt.abs_tol;
  return spec;
}

kernels::TestBody make_body(const Options& opt) {
  if (!(opt.radius > 0.0)) config_error("radius: must be > 0");
  if (!std::isfinite(opt.rho_c)) config_error("rho_c: must be finite");
  return kernels::TestBody::make(opt.radius, opt.rho_c);
}

trajectories::Trajectory make_trajectory(const Options& opt,
                                         const kernels::TestBody& body) {
  if (!(opt.kappa > 0.0) || !std::isfinite(opt.kappa))
    config_error("kappa: must be finite and > 0");
  if (!(opt.dt_frac > 0.0) || !(opt.dt_frac <= 0.5))
    config_error("dt_frac: must be in (0, 0.5]");
  if (!std::isfinite(opt.q_over_r)) config_error("q_over_r: must be finite");
  const double tau = opt.kappa * body.radius;
  try {
    return trajectories::Trajectory::make(
        opt.q_over_r * body.radius, opt.dt_frac * tau, tau,
        trajectories::RampShape::from_name(opt.shape));
  } catch (const std::domain_error& e) {
    config_error(std::string("trajectory: ") + e.what());
  }
}

// ---- kernel ---------------------------------------------------------------

int cmd_kernel(const Options& opt, const Flags& f) {
  const std::string format = pick_format(opt, "csv", {"csv", "json"});
  const std::vector<double> grid = resolve_grid(opt, f, "0:4:81");
  for (double v : grid)
    if (v < 0.0) config_error("grid: kernel arguments must be >= 0");

  const std::size_t n = grid.size();
  std::vector<double> f_hat(n), g_hat(n), a_hat(n), rr_hat(n);
  batch::self_force_kernel(grid, f_hat);
  batch::displacement_force_kernel(grid, g_hat);
  batch::geometric_factor(grid, a_hat);
  batch::radiation_reaction_force_br(grid, rr_hat);
  for (std::size_t i = 0; i < n; ++i) {
    if (grid[i] == 0.0) {  // window-average quantities need kappa > 0
      a_hat[i] = std::numeric_limits<double>::quiet_NaN();
      rr_hat[i] = std::numeric_limits<double>::quiet_NaN();
    }
  }

  if (format == "csv") {
    std::string out = "arg,f_hat,g_hat,A_hat,Frr_hat_BR\n";
    for (std::size_t i = 0; i < n; ++i) {
      out += format_double(grid[i]) + "," + format_double(f_hat[i]) + "," +
             format_double(g_hat[i]) + "," + format_double(a_hat[i]) + "," +
             format_double(rr_hat[i]) + "\n";
    }
    emit(opt, out);
  } else {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "kernel";
    doc["backend"] = std::string(batch::name(batch::active()));
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) {
      ordered_json row;
      row["arg"] = grid[i];
      row["f_hat"] = f_hat[i];
      row["g_hat"] = g_hat[i];
      row["A_hat"] = a_hat[i];
      row["Frr_hat_BR"] = rr_hat[i];
      rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    emit(opt, dump_json(doc));
  }
  return kExitOk;
}

// ---- force ----------------------------------------------------------------

ordered_json violations_json(const std::vector<trajectories::Violation>& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& violation : v) {
    ordered_json item;
    item["constraint"] = violation.constraint;
    item["value"] = violation.value;
    item["limit"] = violation.limit;
    arr.push_back(std::move(item));
  }
  return arr;
}

int cmd_force(const Options& opt, const Flags&) {
  pick_format(opt, "json", {"json"});
  const auto body = make_body(opt);
  const auto traj = make_trajectory(opt, body);
  const auto spec = make_spec(opt);
  const auto report =
      study::decompose(traj, body, spec, opt.speed_limit_fraction);

  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "force";
  doc["kappa"] = report.kappa;
  doc["dt_over_tau"] = report.dt_over_tau;
  doc["shape"] = report.shape;
  doc["q_over_r"] = report.q_over_r;
  doc["F_bar"] = report.F_bar;
  doc["F_bar_BR"] = report.F_bar_BR;
  doc["F_bar_Q"] = report.F_bar_Q;
  doc["F_bar_Q_BR"] = report.F_bar_Q_BR;
  doc["F_bar_RR"] = report.F_bar_RR;
  doc["F_bar_RR_BR"] = report.F_bar_RR_BR;
  doc["delta_F_initial"] = report.delta_F_initial;
  doc["delta_F_final"] = report.delta_F_final;
  doc["bound_initial"] = report.bound_initial;
  doc["F_hat"] = report.F_hat;
  doc["F_hat_BR"] = report.F_hat_BR;
  doc["F_hat_Q"] = report.F_hat_Q;
  doc["F_hat_Q_BR"] = report.F_hat_Q_BR;
  doc["F_hat_RR"] = report.F_hat_RR;
  doc["F_hat_RR_BR"] = report.F_hat_RR_BR;
  doc["delta_F_hat_initial"] = report.delta_F_hat_initial;
  doc["delta_F_hat_final"] = report.delta_F_hat_final;
  doc["bound_initial_hat"] = report.bound_initial_hat;
  doc["bound_ratio"] = report.bound_ratio;
  doc["ratio_F_to_BR"] = report.ratio_F_to_BR;
  doc["ratio_FQ_to_QBR"] = report.ratio_FQ_to_QBR;
  doc["ratio_FRR_to_RRBR"] = report.ratio_FRR_to_RRBR;
  doc["violations"] = violations_json(report.violations);
  emit(opt, dump_json(doc));

  if (opt.strict && !report.violations.empty()) return kExitStrict;
  return kExitOk;
}

// ---- converge ---------------------------------------------------------------

int cmd_converge(const Options& opt, const Flags&) {
  const std::string format = pick_format(opt, "csv", {"csv", "json"});
  if (opt.n_steps < 2) config_error("n_steps: must be >= 2");
  const auto body = make_body(opt);
  const auto base = make_trajectory(opt, body);
  const auto spec = make_spec(opt);

  if (opt.strict) {
    const auto violations = trajectories::validate_physicality(
        base, body, opt.speed_limit_fraction);
    if (!violations.empty()) {
      for (const auto& v : violations)
        std::cerr << "physicality: " << v.constraint << " (value "
                  << format_double(v.value) << ", limit "
                  << format_double(v.limit) << ")\n";
      return kExitStrict;
    }
  }

  const auto cs = study::convergence_study(base, body, opt.n_steps, spec);
  const char* rr_column = cs.rr_reported_as_absolute ? "Frr_abs" : "ratio_FRR";

  if (format == "csv") {
    std::string out =
        std::string("dt_over_tau,ratio_F,ratio_FQ,") + rr_column + ",bound15\n";
    for (const auto& row : cs.rows) {
      out += format_double(row.delta_t_over_tau) + "," +
             format_double(row.ratio_F_to_BR) + "," +
             format_double(row.ratio_FQ_to_QBR) + "," +
             format_double(row.ratio_FRR_to_RRBR) + "," +
             format_double(row.bound_15_value) + "\n";
    }
    emit(opt, out);
  } else {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "converge";
    doc["kappa"] = cs.kappa;
    doc["rr_reported_as_absolute"] = cs.rr_reported_as_absolute;
    ordered_json rows = ordered_json::array();
    for (const auto& row : cs.rows) {
      ordered_json item;
      item["dt_over_tau"] = row.delta_t_over_tau;
      item["ratio_F"] = row.ratio_F_to_BR;
      item["ratio_FQ"] = row.ratio_FQ_to_QBR;
      item[rr_column] = row.ratio_FRR_to_RRBR;
      item["bound15"] = row.bound_15_value;
      rows.push_back(std::move(item));
    }
    doc["rows"] = std::move(rows);
    emit(opt, dump_json(doc));
  }
  return kExitOk;
}

// ---- oracle -----------------------------------------------------------------

int cmd_oracle(const Options& opt, const Flags&) {
  const std::string format = pick_format(opt, "text", {"text", "csv", "json"});
  auto tol_or = [&](double fallback) {
    return opt.tolerance_set ? opt.tolerance : fallback;
  };

  if (opt.chi_set) {
    if (!(opt.chi >= 0.0) || !std::isfinite(opt.chi))
      config_error("chi: must be finite and >= 0");
    const double closed = kernels::self_force_kernel(opt.chi);
    const double oracle = oracles::f_hat_momentum_space(opt.chi);
    const double abs_err = std::abs(oracle - closed);
    const double tol = tol_or(1e-6);
    const bool passed = abs_err <= tol;

    if (format == "text") {
      std::string out;
      out += "f_hat point check at chi=" + format_double(opt.chi) + "\n";
      out += "  closed  " + format_double(closed) + "\n";
      out += "  oracle  " + format_double(oracle) + "\n";
      out += "  abs_err " + format_double(abs_err) + "\n";
      out += "  tol     " + format_double(tol) + "\n";
      out += passed ? "PASS\n" : "FAIL\n";
      emit(opt, out);
    } else if (format == "csv") {
      std::string out = "quantity,arg,closed,oracle,abs_err,tolerance,passed\n";
      out += "f_hat_point," + format_double(opt.chi) + "," +
             format_double(closed) + "," + format_double(oracle) + "," +
             format_double(abs_err) + "," + format_double(tol) + "," +
             (passed ? "true" : "false") + "\n";
      emit(opt, out);
    } else {
      ordered_json doc;
      doc["schema_version"] = kSchemaVersion;
      doc["command"] = "oracle";
      doc["mode"] = "point";
      doc["quantity"] = "f_hat";
      doc["chi"] = opt.chi;
      doc["closed"] = closed;
      doc["oracle"] = oracle;
      doc["abs_err"] = abs_err;
      doc["tolerance"] = tol;
      doc["passed"] = passed;
      emit(opt, dump_json(doc));
    }
    return passed ? kExitOk : kExitOracleFailed;
  }

  const auto spec = make_spec(opt);
  std::vector<oracles::OracleReport> reports;
  reports.push_back(oracles::sweep_self_force_kernel(101, 0.0, 4.0, tol_or(1e-6)));
  reports.push_back(
      oracles::sweep_displacement_kernel(101, 0.0, 4.0, tol_or(1e-6)));
  reports.push_back(
      oracles::sweep_geometric_factor(25, 0.0, 5.0, tol_or(1e-10), spec));
  reports.push_back(oracles::check_bessel_norm(tol_or(1e-8)));
  reports.push_back(oracles::cross_validate_forces(10, tol_or(1e-7), 200'001, spec));

  bool all_passed = true;
  for (const auto& r : reports) all_passed = all_passed && r.passed;

  if (format == "text") {
    std::string out;
    for (const auto& r : reports) {
      out += r.quantity;
      out.append(r.quantity.size() < 12 ? 12 - r.quantity.size() : 1, ' ');
      out += "n=" + std::to_string(r.n_points);
      out += "  max_abs_err=" + format_double(r.max_abs_err);
      out += "  max_rel_err=" + format_double(r.max_rel_err);
      out += "  tol=" + format_double(r.tolerance);
      out += std::string("  compare=") + (r.relative_comparison ? "rel" : "abs");
      out += r.passed ? "  PASS\n" : "  FAIL\n";
    }
    out += all_passed ? "ALL PASS\n" : "SOME FAILED\n";
    emit(opt, out);
  } else if (format == "csv") {
    std::string out =
        "quantity,n_points,max_abs_err,max_rel_err,tolerance,"
        "relative_comparison,passed\n";
    for (const auto& r : reports) {
      out += r.quantity + "," + std::to_string(r.n_points) + "," +
             format_double(r.max_abs_err) + "," + format_double(r.max_rel_err) +
             "," + format_double(r.tolerance) + "," +
             (r.relative_comparison ? "true" : "false") + "," +
             (r.passed ? "true" : "false") + "\n";
    }
    emit(opt, out);
  } else {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "oracle";
    doc["mode"] = "suite";
    doc["passed"] = all_passed;
    ordered_json rows = ordered_json::array();
    for (const auto& r : reports) {
      ordered_json item;
      item["quantity"] = r.quantity;
      item["n_points"] = r.n_points;
      item["max_abs_err"] = r.max_abs_err;
      item["max_rel_err"] = r.max_rel_err;
      item["tolerance"] = r.tolerance;
      item["relative_comparison"] = r.relative_comparison;
      item["passed"] = r.passed;
      rows.push_back(std::move(item));
    }
    doc["reports"] = std::move(rows);
    emit(opt, dump_json(doc));
  }
  return all_passed ? kExitOk : kExitOracleFailed;
}

// ---- uncertainty ------------------------------------------------------------

int cmd_uncertainty(const Options& opt, const Flags& f) {
  const std::string format = pick_format(opt, "csv", {"csv", "json"});
  const std::vector<double> grid = resolve_grid(opt, f, "0.1:5:50");
  if (!(opt.hbar > 0.0)) config_error("hbar: must be > 0");
  if (!(opt.radius > 0.0)) config_error("radius: must be > 0");
  for (double v : grid)
    if (!(v > 0.0)) config_error("grid: kappa entries must be > 0");

  const auto curve = study::uncertainty_curves(grid, opt.radius, opt.hbar);

  if (format == "csv") {
    std::string out = "kappa,dE_full,dE_rr_only\n";
    for (std::size_t i = 0; i < curve.kappa_grid.size(); ++i) {
      out += format_double(curve.kappa_grid[i]) + "," +
             format_double(curve.delta_E_full[i]) + "," +
             format_double(curve.delta_E_rr_only[i]) + "\n";
    }
    emit(opt, out);
  } else {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "uncertainty";
    doc["hbar"] = curve.hbar;
    doc["radius"] = curve.radius;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < curve.kappa_grid.size(); ++i) {
      ordered_json item;
      item["kappa"] = curve.kappa_grid[i];
      item["dE_full"] = curve.delta_E_full[i];
      item["dE_rr_only"] = curve.delta_E_rr_only[i];
      rows.push_back(std::move(item));
    }
    doc["rows"] = std::move(rows);
    emit(opt, dump_json(doc));
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  Options opt;
  CLI::App app{
      "selfforce-lab: averaged self-force kernels, ramp convergence studies "
      "and field-uncertainty curves for a charged spherical test body"};
  app.require_subcommand(1);

  std::map<const CLI::App*, Flags> flags;

  CLI::App* kernel = app.add_subcommand(
      "kernel", "tabulate the closed-form kernels over a grid");
  flags[kernel] = add_common_options(kernel, opt);
  add_grid_options(kernel, opt, flags[kernel]);

  CLI::App* force = app.add_subcommand(
      "force", "decompose the averaged force for one configuration");
  flags[force] = add_common_options(force, opt);

  CLI::App* converge = app.add_subcommand(
      "converge", "ramp-shrinking convergence study toward the step limit");
  flags[converge] = add_common_options(converge, opt);
  flags[converge].n_steps = converge->add_option(
      "--n-steps", opt.n_steps, "sequence length (ramp halves each step)");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "check the closed forms against independent quadrature");
  flags[oracle] = add_common_options(oracle, opt);
  flags[oracle].tolerance = oracle->add_option(
      "--tolerance", opt.tolerance, "override every sweep tolerance");
  flags[oracle].chi = oracle->add_option(
      "--chi", opt.chi, "single-point mode: check f_hat at this argument");

  CLI::App* uncertainty = app.add_subcommand(
      "uncertainty", "minimum field-uncertainty curves against window length");
  flags[uncertainty] = add_common_options(uncertainty, opt);
  add_grid_options(uncertainty, opt, flags[uncertainty]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  CLI::App* active = app.get_subcommands().front();
  Flags& f = flags[active];
  if (f.tolerance && f.tolerance->count() > 0) opt.tolerance_set = true;
  if (f.chi && f.chi->count() > 0) opt.chi_set = true;

  try {
    apply_config(opt, f);
    if (active == kernel) return cmd_kernel(opt, f);
    if (active == force) return cmd_force(opt, f);
    if (active == converge) return cmd_converge(opt, f);
    if (active == oracle) return cmd_oracle(opt, f);
    return cmd_uncertainty(opt, f);
  } catch (const quadrature::NonConvergenceError& e) {
    std::cerr << "numerics: " << e.what() << "\n";
    return kExitNumerics;
  } catch (const std::domain_error& e) {
    std::cerr << "config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace selfforce::cli
