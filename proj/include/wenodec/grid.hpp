#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wenodec/errors.hpp"
#include "wenodec/quadrature.hpp"

namespace wenodec {

// Uniform 1D mesh of n_cells cells covering [x_left, x_right].
// Faces sit at x_left + i*dx, i = 0..n_cells; cell i lies between
// faces i and i+1. Positions are computed, never accumulated, so
// face(n_cells) reproduces x_right to rounding.
struct Grid1D {
  double x_left = 0.0;
  double x_right = 1.0;
  int n_cells = 0;
  double dx = 0.0;

  double face(int i) const { return x_left + i * dx; }
  double center(int i) const { return x_left + (i + 0.5) * dx; }
  double length() const { return x_right - x_left; }
};

inline Grid1D make_grid(double x_left, double x_right, int n_cells) {
  if (!(x_right > x_left)) {
    throw ConfigError("make_grid: domain must have positive length");
  }
  if (n_cells < 1) throw ConfigError("make_grid: need at least one cell");
  Grid1D g;
  g.x_left = x_left;
  g.x_right = x_right;
  g.n_cells = n_cells;
  g.dx = (x_right - x_left) / n_cells;
  return g;
}

// Cell-average storage with ghost layers on both sides. Interior cells are
// indexed 0..n_cells-1; ghosts use negative indices and n_cells..n_cells+g-1.
// Layout is row-major by cell so one cell's components are contiguous.
struct CellField {
  int n_cells = 0;
  int n_comp = 1;
  int ghost = 0;
  std::vector<double> data;

  CellField() = default;
  CellField(int n_cells, int n_comp, int ghost)
      : n_cells(n_cells), n_comp(n_comp), ghost(ghost),
        data(static_cast<std::size_t>(n_cells + 2 * ghost) * n_comp, 0.0) {
    if (n_cells < 1 || n_comp < 1 || ghost < 0) {
      throw ConfigError("CellField: invalid extents");
    }
  }

  double& at(int cell, int comp) {
    assert(cell >= -ghost && cell < n_cells + ghost);
    return data[static_cast<std::size_t>(cell + ghost) * n_comp + comp];
  }
  double at(int cell, int comp) const {
    assert(cell >= -ghost && cell < n_cells + ghost);
    return data[static_cast<std::size_t>(cell + ghost) * n_comp + comp];
  }

  double* cell_ptr(int cell) {
    return data.data() + static_cast<std::size_t>(cell + ghost) * n_comp;
  }
  const double* cell_ptr(int cell) const {
    return data.data() + static_cast<std::size_t>(cell + ghost) * n_comp;
  }

  // Flat interior view used by the time integrators.
  void extract_interior(std::vector<double>& out) const {
    out.resize(static_cast<std::size_t>(n_cells) * n_comp);
    const double* src = cell_ptr(0);
    std::copy(src, src + out.size(), out.begin());
  }
  void load_interior(const double* flat) {
    double* dst = cell_ptr(0);
    std::copy(flat, flat + static_cast<std::size_t>(n_cells) * n_comp, dst);
  }
};

// Boundary treatment, chosen per side. Periodic is only meaningful as a
// pair, so constructing it one-sided is rejected. Inflow pins the ghost
// cells to a fixed conserved state.
struct BoundaryCondition {
  enum class Kind { periodic, transmissive, inflow };

  Kind left = Kind::periodic;
  Kind right = Kind::periodic;
  std::vector<double> left_state;   // conserved, used when left == inflow
  std::vector<double> right_state;  // conserved, used when right == inflow

  static BoundaryCondition periodic() { return {}; }

  static BoundaryCondition transmissive() {
    BoundaryCondition bc;
    bc.left = bc.right = Kind::transmissive;
    return bc;
  }

  static BoundaryCondition inflow_left_transmissive_right(
      std::vector<double> left_state) {
    BoundaryCondition bc;
    bc.left = Kind::inflow;
    bc.right = Kind::transmissive;
    bc.left_state = std::move(left_state);
    return bc;
  }

  void validate(int n_comp) const {
    if ((left == Kind::periodic) != (right == Kind::periodic)) {
      throw ConfigError("boundary: periodic must apply to both sides");
    }
    if (left == Kind::inflow &&
        left_state.size() != static_cast<std::size_t>(n_comp)) {
      throw ConfigError("boundary: left inflow state has wrong size");
    }
    if (right == Kind::inflow &&
        right_state.size() != static_cast<std::size_t>(n_comp)) {
      throw ConfigError("boundary: right inflow state has wrong size");
    }
  }
};

// Fills all ghost cells from the interior according to `bc`.
// Periodic requires ghost <= n_cells so the wrapped windows stay interior.
inline void apply_boundary(CellField& f, const BoundaryCondition& bc) {
  bc.validate(f.n_comp);
  const int n = f.n_cells;
  const int g = f.ghost;
  const int nc = f.n_comp;
  if (bc.left == BoundaryCondition::Kind::periodic && g > n) {
    throw ConfigError("apply_boundary: periodic ghosts exceed interior width");
  }
  auto copy_cell = [&](int dst, int src) {
    const double* s = f.cell_ptr(src);
    double* d = f.cell_ptr(dst);
    std::copy(s, s + nc, d);
  };
  auto set_cell = [&](int dst, const std::vector<double>& w) {
    double* d = f.cell_ptr(dst);
    std::copy(w.begin(), w.end(), d);
  };
  for (int k = 1; k <= g; ++k) {
    switch (bc.left) {
      case BoundaryCondition::Kind::periodic: copy_cell(-k, n - k); break;
      case BoundaryCondition::Kind::transmissive: copy_cell(-k, 0); break;
      case BoundaryCondition::Kind::inflow: set_cell(-k, bc.left_state); break;
    }
    switch (bc.right) {
      case BoundaryCondition::Kind::periodic: copy_cell(n - 1 + k, k - 1); break;
      case BoundaryCondition::Kind::transmissive: copy_cell(n - 1 + k, n - 1); break;
      case BoundaryCondition::Kind::inflow: set_cell(n - 1 + k, bc.right_state); break;
    }
  }
}

// Initializes interior cell averages of a pointwise function by per-cell
// Gauss-Legendre quadrature. `fn(x, out)` writes n_comp values at x.
template <class Fn>
void cell_average_init(const Grid1D& grid, Fn&& fn, int n_gauss, CellField& f) {
  if (f.n_cells != grid.n_cells) {
    throw ConfigError("cell_average_init: field does not match grid");
  }
  const QuadratureRule rule = gauss_legendre(n_gauss);
  std::vector<double> point(f.n_comp);
  for (int i = 0; i < grid.n_cells; ++i) {
    double* avg = f.cell_ptr(i);
    std::fill(avg, avg + f.n_comp, 0.0);
    const double mid = grid.center(i);
    const double half = 0.5 * grid.dx;
    for (int q = 0; q < n_gauss; ++q) {
      fn(mid + half * rule.nodes[q], point.data());
      for (int c = 0; c < f.n_comp; ++c) avg[c] += rule.weights[q] * point[c];
    }
    for (int c = 0; c < f.n_comp; ++c) avg[c] *= 0.5;
  }
}

}  // namespace wenodec
