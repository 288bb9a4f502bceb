// Command-line driver for the finite-volume solver library.
//
// Verbs:
//   run       one simulation, snapshot CSV + summary line
//   converge  mesh-refinement study with observed orders
//   sweep     same ladder across several integrators, with extrapolated
//             cost-to-tolerance estimates
//   reference second-order limiter-based reference solve on a fine mesh
//   riemann   exact solution of a single Riemann problem
//   tables    reconstruction and time-integration coefficients for one order
//
// Exit codes: 0 success, 1 configuration error, 2 simulation failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wenodec/config.hpp"
#include "wenodec/driver.hpp"
#include "wenodec/report.hpp"

using namespace wenodec;

namespace {

RunConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  is >> j;
  return j.get<RunConfig>();
}

struct SchemeOpts {
  RunConfig cli;           // values bound to the CLI flags
  std::string config_path; // optional JSON with defaults

  // Resolve precedence: built-in defaults < config file < explicit flags.
  RunConfig resolve(const CLI::App* cmd) const {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config_file(config_path);
    auto take = [&](const char* flag, auto member) {
      const CLI::Option* opt = cmd->get_option_no_throw(flag);
      if (opt != nullptr && opt->count() > 0) cfg.*member = cli.*member;
    };
    take("--problem", &RunConfig::problem);
    take("--order", &RunConfig::order);
    take("--flux", &RunConfig::flux);
    take("--vars", &RunConfig::vars);
    take("--integrator", &RunConfig::integrator);
    take("--cfl", &RunConfig::cfl);
    take("--epsilon-weno", &RunConfig::epsilon_weno);
    take("--cells", &RunConfig::cells);
    take("--refinements", &RunConfig::refinements);
    take("--tf", &RunConfig::t_final);
    take("--out", &RunConfig::out_dir);
    return cfg;
  }
};

void add_scheme_flags(CLI::App* cmd, SchemeOpts& o, bool with_ladder) {
  cmd->add_option("--config", o.config_path,
                  "JSON file with run settings (flags override it)");
  cmd->add_option("--problem", o.cli.problem, "problem id (see --list)");
  cmd->add_option("--order", o.cli.order, "spatial order (odd, 3..13)");
  cmd->add_option("--flux", o.cli.flux, "upwind | rusanov | exact-rs");
  cmd->add_option("--vars", o.cli.vars, "cons | char");
  cmd->add_option("--integrator", o.cli.integrator,
                  "dec | ssprk3 | ssprk4 | mssprk3 | mssprk4");
  cmd->add_option("--cfl", o.cli.cfl, "CFL number in (0, 1]");
  cmd->add_option("--epsilon-weno", o.cli.epsilon_weno,
                  "smoothness regularization epsilon");
  cmd->add_option("--cells", o.cli.cells, "number of cells");
  if (with_ladder) {
    cmd->add_option("--refinements", o.cli.refinements,
                    "explicit list of cell counts for the ladder");
  }
  cmd->add_option("--tf", o.cli.t_final,
                  "final time (<= 0 keeps the problem default)");
  cmd->add_option("--out", o.cli.out_dir, "output directory for CSV files");
}

std::optional<double> tf_override(const RunConfig& cfg) {
  if (cfg.t_final > 0.0) return cfg.t_final;
  return std::nullopt;
}

std::vector<int> ladder_of(const RunConfig& cfg, int levels) {
  if (!cfg.refinements.empty()) return cfg.refinements;
  std::vector<int> cells;
  int n = cfg.cells;
  for (int i = 0; i < levels; ++i) {
    cells.push_back(n);
    n *= 2;
  }
  return cells;
}

std::filesystem::path ensure_outdir(const RunConfig& cfg) {
  std::filesystem::path dir = cfg.out_dir;
  std::filesystem::create_directories(dir);
  return dir;
}

int report_crash(const RunOutcome& run) {
  std::fprintf(stderr, "simulation failed at t=%.6g after %d steps",
               run.final_time, run.steps);
  if (run.crash_cell >= 0) std::fprintf(stderr, " (cell %d)", run.crash_cell);
  std::fprintf(stderr, ": %s\n", run.crash_cause.c_str());
  return 2;
}

int cmd_run(const CLI::App* cmd, const SchemeOpts& opts) {
  const RunConfig cfg = opts.resolve(cmd);
  const ProblemSpec prob = make_problem(cfg.problem);
  const SchemeConfig scheme = make_scheme(cfg, prob.equation);
  const RunOutcome run =
      run_simulation(prob, scheme, cfg.cells, tf_override(cfg));
  if (!run.completed()) return report_crash(run);

  const auto dir = ensure_outdir(cfg);
  const auto csv =
      dir / (cfg.problem + "-order" + std::to_string(cfg.order) + "-n" +
             std::to_string(cfg.cells) + ".csv");
  std::ofstream os(csv);
  snapshot_export(os, run, prob, scheme.quadrature_points());
  std::printf("%s: N=%d order=%d %s/%s/%s  steps=%d  t=%.6g  wall=%.3fs\n",
              cfg.problem.c_str(), cfg.cells, cfg.order, cfg.vars.c_str(),
              cfg.flux.c_str(), cfg.integrator.c_str(), run.steps,
              run.final_time, run.wall_seconds);
  if (prob.has_exact()) {
    const Norms n = error_norms(run, prob, scheme.quadrature_points());
    for (int c = 0; c < run.n_comp; ++c) {
      std::printf("  component %d: L1 %.6e  L2 %.6e  Linf %.6e\n", c,
                  n.l1[c], n.l2[c], n.linf[c]);
    }
  }
  std::printf("snapshot written to %s\n", csv.string().c_str());
  return 0;
}

int cmd_converge(const CLI::App* cmd, const SchemeOpts& opts, int levels) {
  const RunConfig cfg = opts.resolve(cmd);
  const ProblemSpec prob = make_problem(cfg.problem);
  const SchemeConfig scheme = make_scheme(cfg, prob.equation);
  if (!prob.has_exact()) {
    throw ConfigError("problem '" + cfg.problem +
                      "' has no exact solution to converge against");
  }
  const std::vector<int> cells = ladder_of(cfg, levels);
  const ConvergenceStudy study =
      convergence_study(prob, scheme, cells, tf_override(cfg));

  std::printf("%-7s %-13s %-7s %-13s %-7s %-13s %-7s %s\n", "N", "L1", "O1",
              "L2", "O2", "Linf", "Oinf", "cpu_s");
  const auto o1 = study.pair_orders(0, 0);
  const auto o2 = study.pair_orders(0, 1);
  const auto oi = study.pair_orders(0, 2);
  std::size_t pair = 0;
  for (std::size_t i = 0; i < study.rows.size(); ++i) {
    const auto& row = study.rows[i];
    if (!row.completed) {
      std::printf("%-7d crashed: %s\n", row.n_cells, row.crash_cause.c_str());
      continue;
    }
    char ord1[16] = "-", ord2[16] = "-", ordi[16] = "-";
    if (i > 0 && study.rows[i - 1].completed &&
        study.rows[i - 1].n_cells * 2 == row.n_cells && pair < o1.size()) {
      std::snprintf(ord1, sizeof(ord1), "%.3f", o1[pair]);
      std::snprintf(ord2, sizeof(ord2), "%.3f", o2[pair]);
      std::snprintf(ordi, sizeof(ordi), "%.3f", oi[pair]);
      ++pair;
    }
    std::printf("%-7d %-13.6e %-7s %-13.6e %-7s %-13.6e %-7s %.3f\n",
                row.n_cells, row.norms.l1[0], ord1, row.norms.l2[0], ord2,
                row.norms.linf[0], ordi, row.wall_seconds);
  }
  std::printf("average L1 order: %.3f\n", study.average_order(0, 0));

  const auto dir = ensure_outdir(cfg);
  const auto csv = dir / ("converge-" + cfg.problem + "-order" +
                          std::to_string(cfg.order) + ".csv");
  std::ofstream os(csv);
  write_convergence_csv(os, study);
  std::printf("table written to %s\n", csv.string().c_str());
  for (const auto& row : study.rows) {
    if (row.completed) return 0;
  }
  return 2;
}

int cmd_sweep(const CLI::App* cmd, const SchemeOpts& opts, int levels,
              std::vector<std::string>& integrators, double tolerance) {
  const RunConfig base = opts.resolve(cmd);
  const ProblemSpec prob = make_problem(base.problem);
  if (!prob.has_exact()) {
    throw ConfigError("problem '" + base.problem +
                      "' has no exact solution to sweep against");
  }
  const std::vector<int> cells = ladder_of(base, levels);
  std::vector<ConvergenceStudy> curves;
  for (const auto& integ : integrators) {
    RunConfig cfg = base;
    cfg.integrator = integ;
    const SchemeConfig scheme = make_scheme(cfg, prob.equation);
    ConvergenceStudy study =
        convergence_study(prob, scheme, cells, tf_override(cfg));
    study.label = "order" + std::to_string(cfg.order) + "-" + integ;
    std::printf("%s: average L1 order %.3f\n", study.label.c_str(),
                study.average_order(0, 0));
    curves.push_back(std::move(study));
  }
  const auto dir = ensure_outdir(base);
  {
    std::ofstream os(dir / ("sweep-" + base.problem + "-order" +
                            std::to_string(base.order) + ".csv"));
    write_sweep_csv(os, curves);
  }
  {
    std::ofstream os(dir / ("sweep-" + base.problem + "-order" +
                            std::to_string(base.order) + "-times.csv"));
    write_expected_times_csv(os, curves, tolerance);
  }
  std::printf("extrapolated wall time to reach L1 tolerance %.1e:\n",
              tolerance);
  for (const auto& curve : curves) {
    const double t = expected_time_to_tolerance(curve, 0, 0, tolerance);
    std::printf("  %-20s %.3e s\n", curve.label.c_str(), t);
  }
  std::printf("tables written to %s\n", dir.string().c_str());
  return 0;
}

int cmd_reference(const CLI::App* cmd, const SchemeOpts& opts) {
  const RunConfig cfg = opts.resolve(cmd);
  const ProblemSpec prob = make_problem(cfg.problem);
  const RunOutcome run = reference_muscl_run(prob, cfg.cells, 0.5,
                                             tf_override(cfg));
  if (!run.completed()) return report_crash(run);
  const auto dir = ensure_outdir(cfg);
  const auto csv =
      dir / ("reference-" + cfg.problem + "-n" + std::to_string(cfg.cells) +
             ".csv");
  std::ofstream os(csv);
  snapshot_export(os, run, prob, 3);
  std::printf("reference %s: N=%d steps=%d t=%.6g wall=%.3fs -> %s\n",
              cfg.problem.c_str(), cfg.cells, run.steps, run.final_time,
              run.wall_seconds, csv.string().c_str());
  return 0;
}

int cmd_riemann(const std::vector<double>& left,
                const std::vector<double>& right, double gamma,
                double sample_time, int samples, const std::string& out_file) {
  const double wl[3] = {left[0], left[1], left[2]};
  const double wr[3] = {right[0], right[1], right[2]};
  const StarState star = exact_riemann_star(wl, wr, gamma);
  std::printf("star region: p* = %.12g  u* = %.12g\n", star.p, star.u);
  std::printf("densities:   left %.12g  right %.12g\n", star.rho_left,
              star.rho_right);
  double w0[3];
  sample_riemann(star, wl, wr, gamma, 0.0, w0);
  std::printf("state on x/t = 0: rho %.12g  u %.12g  p %.12g\n", w0[0], w0[1],
              w0[2]);
  if (!out_file.empty()) {
    if (!(sample_time > 0.0)) {
      throw ConfigError("--time must be positive to sample a profile");
    }
    std::ofstream os(out_file);
    os << "x,rho,u,p\n";
    for (int i = 0; i < samples; ++i) {
      const double x = -0.5 + (i + 0.5) / samples;
      double w[3];
      sample_riemann(star, wl, wr, gamma, x / sample_time, w);
      char line[160];
      std::snprintf(line, sizeof(line), "%.10g,%.10g,%.10g,%.10g\n", x, w[0],
                    w[1], w[2]);
      os << line;
    }
    std::printf("profile at t=%g written to %s\n", sample_time,
                out_file.c_str());
  }
  return 0;
}

int cmd_tables(int order) {
  SchemeConfig probe;
  probe.order = order;
  probe.validate(LinearAdvection{1.0});
  const int r = probe.radius();
  const WenoTables t = build_weno_tables(r);
  std::printf("order %d: stencil radius %d, %d substencils of %d cells\n",
              order, r, r, r);
  for (int face = 0; face < 2; ++face) {
    std::printf("%s-face linear weights:", face == 0 ? "left" : "right");
    for (int l = 0; l < r; ++l) std::printf(" %.15g", t.d[face][l]);
    std::printf("\n");
  }
  const DeCTableau tab = build_dec_tableau(order);
  std::printf("time integration: %d corrections over %d subintervals\n",
              order, tab.M);
  std::printf("nodes:");
  for (double tau : tab.tau) std::printf(" %.15g", tau);
  std::printf("\nquadrature rows (node x basis):\n");
  for (int m = 1; m <= tab.M; ++m) {
    std::printf("  tau=%.6f:", tab.tau[m]);
    for (int l = 0; l <= tab.M; ++l) std::printf(" % .15g", tab.theta[m][l]);
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-dimensional finite-volume solver with high-order "
               "reconstruction and matching-order time integration"};
  app.require_subcommand(0, 1);

  bool list_problems = false;
  app.add_flag("--list", list_problems, "list problem ids and exit");

  SchemeOpts run_opts, conv_opts, sweep_opts, ref_opts;
  int conv_levels = 5, sweep_levels = 5;
  std::vector<std::string> integrators = {"dec", "ssprk3", "ssprk4"};
  double tolerance = 1e-8;
  std::vector<double> rp_left, rp_right;
  double gamma = 1.4, rp_time = 0.2;
  int rp_samples = 200, tables_order = 5;
  std::string rp_out;

  CLI::App* c_run = app.add_subcommand("run", "run one simulation");
  add_scheme_flags(c_run, run_opts, false);

  CLI::App* c_conv =
      app.add_subcommand("converge", "mesh-refinement convergence study");
  add_scheme_flags(c_conv, conv_opts, true);
  c_conv->add_option("--levels", conv_levels,
                     "ladder length when --refinements is not given");

  CLI::App* c_sweep = app.add_subcommand(
      "sweep", "compare integrators on one ladder, with cost extrapolation");
  add_scheme_flags(c_sweep, sweep_opts, true);
  c_sweep->add_option("--levels", sweep_levels,
                      "ladder length when --refinements is not given");
  c_sweep->add_option("--integrators", integrators,
                      "integrators to compare");
  c_sweep->add_option("--tolerance", tolerance,
                      "target L1 error for the cost extrapolation");

  CLI::App* c_ref = app.add_subcommand(
      "reference", "fine-mesh second-order reference solve");
  add_scheme_flags(c_ref, ref_opts, false);

  CLI::App* c_rp =
      app.add_subcommand("riemann", "solve one Riemann problem exactly");
  c_rp->add_option("--left", rp_left, "left state: rho u p")
      ->expected(3)
      ->required();
  c_rp->add_option("--right", rp_right, "right state: rho u p")
      ->expected(3)
      ->required();
  c_rp->add_option("--gamma", gamma, "ratio of specific heats");
  c_rp->add_option("--time", rp_time, "profile sampling time");
  c_rp->add_option("--samples", rp_samples, "profile sample count");
  c_rp->add_option("--out-file", rp_out, "CSV path for the sampled profile");

  CLI::App* c_tab = app.add_subcommand(
      "tables", "print reconstruction and time-integration coefficients");
  c_tab->add_option("--order", tables_order, "spatial order (odd, 3..13)");

  CLI11_PARSE(app, argc, argv);

  if (list_problems) {
    for (const auto& id : problem_ids()) {
      std::printf("%s\n", id.c_str());
    }
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::fprintf(stderr, "%s", app.help().c_str());
    return 1;
  }

  try {
    if (c_run->parsed()) return cmd_run(c_run, run_opts);
    if (c_conv->parsed()) return cmd_converge(c_conv, conv_opts, conv_levels);
    if (c_sweep->parsed()) {
      return cmd_sweep(c_sweep, sweep_opts, sweep_levels, integrators,
                       tolerance);
    }
    if (c_ref->parsed()) return cmd_reference(c_ref, ref_opts);
    if (c_rp->parsed()) {
      return cmd_riemann(rp_left, rp_right, gamma, rp_time, rp_samples,
                         rp_out);
    }
    if (c_tab->parsed()) return cmd_tables(tables_order);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
