#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "wenodec/equation.hpp"
#include "wenodec/errors.hpp"
#include "wenodec/grid.hpp"
#include "wenodec/problems.hpp"
#include "wenodec/riemann.hpp"
#include "wenodec/time_integration.hpp"
#include "wenodec/weno.hpp"

namespace wenodec {

enum class FluxKind { upwind, rusanov, exact_rs };
enum class IntegratorKind { dec, ssprk3, ssprk4, mssprk3, mssprk4 };

// Full description of one scheme: spatial order (odd, 3..13), reconstruction
// variables, numerical flux, time integrator, CFL number, and the WENO
// regularization epsilon.
struct SchemeConfig {
  int order = 5;
  VariablesMode variables = VariablesMode::conserved;
  FluxKind flux = FluxKind::rusanov;
  IntegratorKind integrator = IntegratorKind::dec;
  double cfl = 0.95;
  double eps_weno = 1e-6;

  int radius() const { return (order + 1) / 2; }

  // Smallest Gauss-Legendre point count whose degree of exactness covers the
  // scheme order; used for initialization and error quadrature alike.
  int quadrature_points() const { return (order + 1) / 2; }

  int time_order() const {
    switch (integrator) {
      case IntegratorKind::dec: return order;
      case IntegratorKind::ssprk3:
      case IntegratorKind::mssprk3: return 3;
      default: return 4;
    }
  }

  bool modified_time_step() const {
    return integrator == IntegratorKind::mssprk3 ||
           integrator == IntegratorKind::mssprk4;
  }

  void validate(const Equation& eq) const {
    if (order < 3 || order > 13 || order % 2 == 0) {
      throw ConfigError("scheme: order must be odd and within 3..13");
    }
    if (!(cfl > 0.0) || cfl > 1.0) {
      throw ConfigError("scheme: cfl must lie in (0, 1]");
    }
    if (!(eps_weno > 0.0)) {
      throw ConfigError("scheme: epsilon must be positive");
    }
    if (variables == VariablesMode::characteristic && !is_euler(eq)) {
      throw ConfigError("scheme: characteristic variables need euler");
    }
    if (flux == FluxKind::upwind && is_euler(eq)) {
      throw ConfigError("scheme: upwind flux is for linear advection only");
    }
    if (modified_time_step() && order <= time_order()) {
      throw ConfigError(
          "scheme: modified step law needs space order above time order");
    }
    if (is_euler(eq)) std::get<EulerParams>(eq).validate();
  }
};

// Result of one simulation. A crash is data, not control flow: the cause and
// location are recorded and `field` holds the last completed step's averages.
struct RunOutcome {
  enum class Status { completed, crashed };

  Status status = Status::completed;
  int steps = 0;
  double final_time = 0.0;
  double wall_seconds = 0.0;
  std::string crash_cause;
  int crash_cell = -1;
  Grid1D grid;
  int n_comp = 1;
  std::vector<double> field;

  bool completed() const { return status == Status::completed; }
};

// Finite-volume right-hand side: ghost fill, WENO reconstruction, one
// numerical flux per face, flux difference per cell. Owns its scratch
// buffers so repeated evaluations do not allocate.
class SemidiscreteSystem {
 public:
  SemidiscreteSystem(const Grid1D& grid, const Equation& eq,
                     const BoundaryCondition& bc, const SchemeConfig& scheme)
      : grid_(grid),
        eq_(eq),
        bc_(bc),
        scheme_(scheme),
        tables_(build_weno_tables(scheme.radius(), scheme.eps_weno)),
        field_(grid.n_cells, n_components(eq), scheme.radius()) {}

  const WenoTables& tables() const { return tables_; }

  void operator()(double, const std::vector<double>& u,
                  std::vector<double>& dudt) {
    const int n = grid_.n_cells;
    const int nc = field_.n_comp;
    field_.load_interior(u.data());
    apply_boundary(field_, bc_);
    reconstruct_field(field_, tables_, scheme_.variables, eq_, faces_);
    flux_.resize(static_cast<std::size_t>(n + 1) * nc);
    for (int f = 0; f <= n; ++f) {
      const double* uL = faces_.left(f);
      const double* uR = faces_.right(f);
      if (!state_is_physical(eq_, uL) || !state_is_physical(eq_, uR)) {
        throw NonPhysicalState(
            "nonphysical reconstructed interface state at face " +
                std::to_string(f),
            f);
      }
      double* out = flux_.data() + static_cast<std::size_t>(f) * nc;
      try {
        numerical_flux(uL, uR, out);
      } catch (NonPhysicalState& e) {
        if (e.cell < 0) e.cell = f;
        e.add_context("flux at face " + std::to_string(f));
        throw;
      } catch (SolverError& e) {
        e.add_context("flux at face " + std::to_string(f));
        throw;
      }
    }
    dudt.resize(static_cast<std::size_t>(n) * nc);
    const double inv_dx = 1.0 / grid_.dx;
    for (int i = 0; i < n; ++i) {
      const double* fl = flux_.data() + static_cast<std::size_t>(i) * nc;
      const double* fr = fl + nc;
      double* d = dudt.data() + static_cast<std::size_t>(i) * nc;
      for (int c = 0; c < nc; ++c) d[c] = -(fr[c] - fl[c]) * inv_dx;
    }
  }

 private:
  void numerical_flux(const double* uL, const double* uR, double* out) {
    switch (scheme_.flux) {
      case FluxKind::rusanov:
        rusanov_flux(eq_, uL, uR, out);
        return;
      case FluxKind::exact_rs:
        if (is_euler(eq_)) {
          exact_riemann_flux_euler(uL, uR, std::get<EulerParams>(eq_).gamma,
                                   out);
          return;
        }
        [[fallthrough]];  // for linear advection upwind IS the exact flux
      case FluxKind::upwind:
        out[0] = upwind_flux_lae(std::get<LinearAdvection>(eq_).speed, uL[0],
                                 uR[0]);
        return;
    }
  }

  Grid1D grid_;
  Equation eq_;
  BoundaryCondition bc_;
  SchemeConfig scheme_;
  WenoTables tables_;
  CellField field_;
  FaceStates faces_;
  std::vector<double> flux_;
};

namespace detail {

inline constexpr int k_max_steps = 20'000'000;

// Largest cell-average signal speed; annotates the offending cell on failure.
inline double max_signal_speed(const Equation& eq, const std::vector<double>& u,
                               int n, int nc) {
  double smax = 0.0;
  for (int i = 0; i < n; ++i) {
    try {
      smax = std::max(smax, max_wave_speed(eq, u.data() + static_cast<std::size_t>(i) * nc));
    } catch (NonPhysicalState& e) {
      if (e.cell < 0) e.cell = i;
      e.add_context("cell averages at step start, cell " + std::to_string(i));
      throw;
    }
  }
  return smax;
}

template <class Stepper>
RunOutcome time_loop(const Grid1D& grid, const Equation& eq,
                     const SchemeConfig& scheme, std::vector<double>& u,
                     double t_end, Stepper&& stepper) {
  RunOutcome out;
  out.grid = grid;
  out.n_comp = n_components(eq);
  const int n = grid.n_cells;
  double t = 0.0;
  int step = 0;
  const auto wall_start = std::chrono::steady_clock::now();
  try {
    while (t < t_end) {
      if (step >= k_max_steps) throw SolverError("step budget exhausted");
      const double smax = max_signal_speed(eq, u, n, out.n_comp);
      double dt = scheme.modified_time_step()
                      ? compute_dt_modified(scheme.cfl, grid.dx, smax,
                                            scheme.order, scheme.time_order())
                      : compute_dt(scheme.cfl, grid.dx, smax);
      bool last = false;
      if (t + dt >= t_end) {  // land on the final time exactly
        dt = t_end - t;
        last = true;
      }
      stepper(u, t, dt);
      ++step;
      t = last ? t_end : t + dt;
    }
    out.status = RunOutcome::Status::completed;
  } catch (SolverError& e) {
    out.status = RunOutcome::Status::crashed;
    out.crash_cause = e.what();
    if (auto* np = dynamic_cast<NonPhysicalState*>(&e)) out.crash_cell = np->cell;
  }
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    wall_start)
          .count();
  out.steps = step;
  out.final_time = t;
  out.field = std::move(u);
  return out;
}

}  // namespace detail

// Runs one problem with one scheme on n_cells cells. Crashes become a
// RunOutcome with status crashed; configuration mistakes still throw.
inline RunOutcome run_simulation(const ProblemSpec& prob,
                                 const SchemeConfig& scheme, int n_cells,
                                 std::optional<double> t_final = {}) {
  scheme.validate(prob.equation);
  const Grid1D grid = make_grid(prob.x_left, prob.x_right, n_cells);
  const int nc = n_components(prob.equation);
  const double t_end = t_final.value_or(prob.t_final);
  if (!(t_end > 0.0)) throw ConfigError("run: final time must be positive");

  CellField init(n_cells, nc, scheme.radius());
  cell_average_init(grid, prob.initial, scheme.quadrature_points(), init);
  std::vector<double> u;
  init.extract_interior(u);

  SemidiscreteSystem rhs(grid, prob.equation, prob.bc, scheme);
  if (scheme.integrator == IntegratorKind::dec) {
    const DeCTableau tab = build_dec_tableau(scheme.order);
    DecWorkspace ws;
    return detail::time_loop(grid, prob.equation, scheme, u, t_end,
                             [&](std::vector<double>& v, double t, double dt) {
                               dec_step(rhs, v, t, dt, tab, scheme.order, ws);
                             });
  }
  const RKTableau tab = scheme.time_order() == 3 ? ssprk33() : ssprk54();
  RKWorkspace ws;
  return detail::time_loop(grid, prob.equation, scheme, u, t_end,
                           [&](std::vector<double>& v, double t, double dt) {
                             rk_step(rhs, v, t, dt, tab, ws);
                           });
}

// Second-order MUSCL reference scheme: minmod-limited slopes on local
// characteristic variables, exact Riemann fluxes, Heun (SSP2) stepping.
// Used to produce reference solutions where no exact profile exists.
class MusclSystem {
 public:
  MusclSystem(const Grid1D& grid, const Equation& eq,
              const BoundaryCondition& bc)
      : grid_(grid), eq_(eq), bc_(bc),
        gamma_(std::get<EulerParams>(eq).gamma),
        field_(grid.n_cells, 3, 2) {
    if (!is_euler(eq)) {
      throw ConfigError("muscl reference: implemented for euler only");
    }
  }

  void operator()(double, const std::vector<double>& u,
                  std::vector<double>& dudt) {
    const int n = grid_.n_cells;
    field_.load_interior(u.data());
    apply_boundary(field_, bc_);
    faces_.resize(n + 1, 3);
    for (int cell = -1; cell <= n; ++cell) {
      const double* um = field_.cell_ptr(cell - 1);
      const double* uc = field_.cell_ptr(cell);
      const double* up = field_.cell_ptr(cell + 1);
      EulerEigensystem eig;
      try {
        eig = euler_eigensystem(uc, gamma_);
      } catch (NonPhysicalState& e) {
        if (e.cell < 0) e.cell = cell;
        e.add_context("muscl slope at cell " + std::to_string(cell));
        throw;
      }
      double slope[3];
      for (int c = 0; c < 3; ++c) {
        double dm = 0.0, dp = 0.0;
        for (int k = 0; k < 3; ++k) {
          dm += eig.L[c][k] * (uc[k] - um[k]);
          dp += eig.L[c][k] * (up[k] - uc[k]);
        }
        slope[c] = minmod(dm, dp);
      }
      for (int k = 0; k < 3; ++k) {
        const double ds = eig.R[k][0] * slope[0] + eig.R[k][1] * slope[1] +
                          eig.R[k][2] * slope[2];
        if (cell + 1 <= n) faces_.left(cell + 1)[k] = uc[k] + 0.5 * ds;
        if (cell >= 0) faces_.right(cell)[k] = uc[k] - 0.5 * ds;
      }
    }
    flux_.resize(static_cast<std::size_t>(n + 1) * 3);
    for (int f = 0; f <= n; ++f) {
      const double* uL = faces_.left(f);
      const double* uR = faces_.right(f);
      if (!euler_state_is_physical(uL, gamma_) ||
          !euler_state_is_physical(uR, gamma_)) {
        throw NonPhysicalState(
            "nonphysical muscl interface state at face " + std::to_string(f),
            f);
      }
      try {
        exact_riemann_flux_euler(uL, uR, gamma_, flux_.data() + f * 3);
      } catch (SolverError& e) {
        e.add_context("muscl flux at face " + std::to_string(f));
        throw;
      }
    }
    dudt.resize(static_cast<std::size_t>(n) * 3);
    const double inv_dx = 1.0 / grid_.dx;
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < 3; ++c) {
        dudt[i * 3 + c] =
            -(flux_[(i + 1) * 3 + c] - flux_[i * 3 + c]) * inv_dx;
      }
    }
  }

 private:
  static double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
  }

  Grid1D grid_;
  Equation eq_;
  BoundaryCondition bc_;
  double gamma_;
  CellField field_;
  FaceStates faces_;
  std::vector<double> flux_;
};

inline RunOutcome reference_muscl_run(const ProblemSpec& prob, int n_cells,
                                      double cfl = 0.5,
                                      std::optional<double> t_final = {}) {
  if (!is_euler(prob.equation)) {
    throw ConfigError("muscl reference: implemented for euler only");
  }
  const Grid1D grid = make_grid(prob.x_left, prob.x_right, n_cells);
  const double t_end = t_final.value_or(prob.t_final);
  CellField init(n_cells, 3, 2);
  cell_average_init(grid, prob.initial, 1, init);
  std::vector<double> u;
  init.extract_interior(u);

  SchemeConfig loop_cfg;  // only cfl and time-step mode feed the loop
  loop_cfg.cfl = cfl;
  loop_cfg.integrator = IntegratorKind::ssprk3;  // standard dt law
  MusclSystem rhs(grid, prob.equation, prob.bc);
  const RKTableau tab = ssprk22();
  RKWorkspace ws;
  return detail::time_loop(grid, prob.equation, loop_cfg, u, t_end,
                           [&](std::vector<double>& v, double t, double dt) {
                             rk_step(rhs, v, t, dt, tab, ws);
                           });
}

}  // namespace wenodec
