#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wenodec/driver.hpp"
#include "wenodec/problems.hpp"
#include "wenodec/quadrature.hpp"

namespace wenodec {

// Cell averages of the problem's exact solution at time t, with the same
// Gauss-Legendre rule used for initialization so errors are consistent.
inline std::vector<double> exact_cell_averages(const ProblemSpec& prob,
                                               const Grid1D& grid, double t,
                                               int n_gauss) {
  if (!prob.has_exact()) {
    throw ConfigError("exact_cell_averages: problem has no exact solution");
  }
  const int nc = n_components(prob.equation);
  const QuadratureRule rule = gauss_legendre(n_gauss);
  std::vector<double> out(static_cast<std::size_t>(grid.n_cells) * nc, 0.0);
  std::vector<double> point(nc);
  for (int i = 0; i < grid.n_cells; ++i) {
    const double mid = grid.center(i);
    const double half = 0.5 * grid.dx;
    double* avg = out.data() + static_cast<std::size_t>(i) * nc;
    for (int q = 0; q < n_gauss; ++q) {
      prob.exact(mid + half * rule.nodes[q], t, point.data());
      for (int c = 0; c < nc; ++c) avg[c] += rule.weights[q] * point[c];
    }
    for (int c = 0; c < nc; ++c) avg[c] *= 0.5;
  }
  return out;
}

// Discrete norms per component: L1 = sum |e| dx, L2 = sqrt(sum e^2 dx),
// Linf = max |e|.
struct Norms {
  std::vector<double> l1, l2, linf;
};

inline Norms norms_against(const std::vector<double>& field,
                           const std::vector<double>& reference, int n_cells,
                           int nc, double dx) {
  Norms n;
  n.l1.assign(nc, 0.0);
  n.l2.assign(nc, 0.0);
  n.linf.assign(nc, 0.0);
  for (int i = 0; i < n_cells; ++i) {
    for (int c = 0; c < nc; ++c) {
      const double e =
          std::abs(field[static_cast<std::size_t>(i) * nc + c] -
                   reference[static_cast<std::size_t>(i) * nc + c]);
      n.l1[c] += e * dx;
      n.l2[c] += e * e * dx;
      n.linf[c] = std::max(n.linf[c], e);
    }
  }
  for (int c = 0; c < nc; ++c) n.l2[c] = std::sqrt(n.l2[c]);
  return n;
}

inline Norms error_norms(const RunOutcome& run, const ProblemSpec& prob,
                         int n_gauss) {
  const std::vector<double> exact =
      exact_cell_averages(prob, run.grid, run.final_time, n_gauss);
  return norms_against(run.field, exact, run.grid.n_cells, run.n_comp,
                       run.grid.dx);
}

// Experimental order of convergence between a mesh and its refinement by 2.
inline double observed_order(double e_coarse, double e_fine) {
  return std::log2(e_coarse / e_fine);
}

struct ConvergenceRow {
  int n_cells = 0;
  bool completed = false;
  Norms norms;
  double wall_seconds = 0.0;
  int steps = 0;
  std::string crash_cause;
};

struct ConvergenceStudy {
  std::string label;
  std::vector<ConvergenceRow> rows;

  // Orders between consecutive completed rows whose cell counts double.
  // which: 0 -> L1, 1 -> L2, 2 -> Linf.
  std::vector<double> pair_orders(int comp, int which) const {
    std::vector<double> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& a = rows[i - 1];
      const auto& b = rows[i];
      if (!a.completed || !b.completed || b.n_cells != 2 * a.n_cells) continue;
      const auto pick = [comp, which](const Norms& n) {
        return which == 0 ? n.l1[comp] : which == 1 ? n.l2[comp] : n.linf[comp];
      };
      out.push_back(observed_order(pick(a.norms), pick(b.norms)));
    }
    return out;
  }

  double average_order(int comp, int which) const {
    const std::vector<double> p = pair_orders(comp, which);
    if (p.empty()) return std::nan("");
    double acc = 0.0;
    for (double v : p) acc += v;
    return acc / p.size();
  }
};

// Runs one scheme across a refinement ladder. Crashed refinements keep their
// row (cause recorded) and drop out of the order computations.
inline ConvergenceStudy convergence_study(const ProblemSpec& prob,
                                          const SchemeConfig& scheme,
                                          const std::vector<int>& cells,
                                          std::optional<double> t_final = {}) {
  ConvergenceStudy study;
  for (int n : cells) {
    const RunOutcome run = run_simulation(prob, scheme, n, t_final);
    ConvergenceRow row;
    row.n_cells = n;
    row.completed = run.completed();
    row.wall_seconds = run.wall_seconds;
    row.steps = run.steps;
    if (run.completed()) {
      row.norms = error_norms(run, prob, scheme.quadrature_points());
    } else {
      row.crash_cause = run.crash_cause;
    }
    study.rows.push_back(std::move(row));
  }
  return study;
}

namespace detail {

inline std::string fmt_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

}  // namespace detail

// CSV columns: N, L1, O1, L2, O2, Linf, Oinf, cpu_seconds. Orders are blank
// on the first row and wherever the preceding row is unusable; crashed rows
// carry nan errors.
inline void write_convergence_csv(std::ostream& os,
                                  const ConvergenceStudy& study,
                                  int comp = 0) {
  os << "N,L1,O1,L2,O2,Linf,Oinf,cpu_seconds\n";
  const ConvergenceRow* prev = nullptr;
  for (const auto& row : study.rows) {
    os << row.n_cells;
    for (int which = 0; which < 3; ++which) {
      const auto pick = [comp, which](const Norms& n) {
        return which == 0 ? n.l1[comp] : which == 1 ? n.l2[comp] : n.linf[comp];
      };
      if (!row.completed) {
        os << ",nan,";
        continue;
      }
      os << ',' << detail::fmt_sci(pick(row.norms)) << ',';
      if (prev != nullptr && prev->completed &&
          row.n_cells == 2 * prev->n_cells) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f",
                      observed_order(pick(prev->norms), pick(row.norms)));
        os << buf;
      }
    }
    os << ',' << detail::fmt_sci(row.wall_seconds) << '\n';
    prev = &row;
  }
}

// Least-squares fit of log10(time) against log10(error) over the last
// `points` completed rows, evaluated at the target error. Mirrors the
// usual efficiency extrapolation toward tighter tolerances.
inline double expected_time_to_tolerance(const ConvergenceStudy& study,
                                         int comp, int which, double tolerance,
                                         int points = 3) {
  std::vector<double> xs, ys;
  for (const auto& row : study.rows) {
    if (!row.completed) continue;
    const double err = which == 0   ? row.norms.l1[comp]
                       : which == 1 ? row.norms.l2[comp]
                                    : row.norms.linf[comp];
    if (!(err > 0.0) || !(row.wall_seconds > 0.0)) continue;
    xs.push_back(std::log10(err));
    ys.push_back(std::log10(row.wall_seconds));
  }
  if (xs.size() < 2) return std::nan("");
  const std::size_t first = xs.size() > static_cast<std::size_t>(points)
                                ? xs.size() - points
                                : 0;
  double mx = 0.0, my = 0.0;
  const std::size_t m = xs.size() - first;
  for (std::size_t i = first; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = first; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  return std::pow(10.0, intercept + slope * std::log10(tolerance));
}

// Sweep CSV: one row per (scheme, N) with errors, runtime, and steps.
inline void write_sweep_csv(std::ostream& os,
                            const std::vector<ConvergenceStudy>& curves,
                            int comp = 0) {
  os << "scheme,N,L1,L2,Linf,cpu_seconds,steps\n";
  for (const auto& curve : curves) {
    for (const auto& row : curve.rows) {
      os << curve.label << ',' << row.n_cells << ',';
      if (row.completed) {
        os << detail::fmt_sci(row.norms.l1[comp]) << ','
           << detail::fmt_sci(row.norms.l2[comp]) << ','
           << detail::fmt_sci(row.norms.linf[comp]) << ',';
      } else {
        os << "nan,nan,nan,";
      }
      os << detail::fmt_sci(row.wall_seconds) << ',' << row.steps << '\n';
    }
  }
}

inline void write_expected_times_csv(
    std::ostream& os, const std::vector<ConvergenceStudy>& curves,
    double tolerance, int comp = 0) {
  os << "scheme,tolerance,expected_seconds_L1,expected_seconds_L2,"
        "expected_seconds_Linf\n";
  for (const auto& curve : curves) {
    os << curve.label << ',' << detail::fmt_sci(tolerance);
    for (int which = 0; which < 3; ++which) {
      os << ','
         << detail::fmt_sci(
                expected_time_to_tolerance(curve, comp, which, tolerance));
    }
    os << '\n';
  }
}

// Final-state snapshot: cell centers, numeric averages (primitive variables
// appended for euler), and exact averages when the problem has them.
inline void snapshot_export(std::ostream& os, const RunOutcome& run,
                            const ProblemSpec& prob, int n_gauss) {
  const int nc = run.n_comp;
  const bool euler = is_euler(prob.equation);
  const bool with_exact = prob.has_exact() && run.completed();
  os << "x";
  if (euler) {
    os << ",rho,mom,energy,velocity,pressure";
    if (with_exact) os << ",rho_exact,mom_exact,energy_exact";
  } else {
    os << ",u";
    if (with_exact) os << ",u_exact";
  }
  os << '\n';
  std::vector<double> exact;
  if (with_exact) {
    exact = exact_cell_averages(prob, run.grid, run.final_time, n_gauss);
  }
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.10e", v);
    os << ',' << buf;
  };
  for (int i = 0; i < run.grid.n_cells; ++i) {
    std::snprintf(buf, sizeof(buf), "%.10e", run.grid.center(i));
    os << buf;
    const double* u = run.field.data() + static_cast<std::size_t>(i) * nc;
    for (int c = 0; c < nc; ++c) put(u[c]);
    if (euler) {
      const double gamma = std::get<EulerParams>(prob.equation).gamma;
      const double v = u[1] / u[0];
      put(v);
      put((gamma - 1.0) * (u[2] - 0.5 * u[0] * v * v));
    }
    if (with_exact) {
      for (int c = 0; c < nc; ++c) {
        put(exact[static_cast<std::size_t>(i) * nc + c]);
      }
    }
    os << '\n';
  }
}

}  // namespace wenodec
