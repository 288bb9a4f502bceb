#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wenodec/equation.hpp"
#include "wenodec/errors.hpp"
#include "wenodec/grid.hpp"

namespace wenodec {

enum class VariablesMode { conserved, characteristic };

// Which cell face a reconstruction targets, relative to the cell producing it.
enum Face : int { face_left = 0, face_right = 1 };

// Precomputed reconstruction data for one radius r (scheme order 2r-1).
//
// All coefficients refer to the normalized cell C_0 = [-1/2, 1/2] with unit
// spacing; cell averages are invariant under that scaling, so the same tables
// serve every mesh width. Windows are indexed 0..2r-2 and map to cells
// i-(r-1)..i+(r-1); substencil l covers window entries l..l+r-1.
struct WenoTables {
  int r = 0;
  double eps = 1e-6;

  // Coefficients of the full (2r-1)-cell reconstruction at each face.
  std::array<std::vector<double>, 2> c_big;
  // Per-face, per-substencil coefficients, c_small[face][l][m].
  std::array<std::vector<std::vector<double>>, 2> c_small;
  // Linear weights per face; combining substencil values with these
  // reproduces the full-stencil value exactly for smooth data.
  std::array<std::vector<double>, 2> d;
  // Symmetric positive-semidefinite quadratic forms: substencil l's
  // smoothness indicator is a^T beta_form[l] a over its r-entry window.
  // Stored flattened row-major, r*r entries each.
  std::vector<std::vector<double>> beta_form;
};

namespace detail {

using Rat = boost::multiprecision::cpp_rational;
using RatPoly = std::vector<Rat>;  // monomial coefficients, ascending degree

inline RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  RatPoly out(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline RatPoly poly_diff(const RatPoly& a) {
  if (a.size() <= 1) return {Rat(0)};
  RatPoly out(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) out[k - 1] = a[k] * Rat(k);
  return out;
}

inline Rat poly_eval(const RatPoly& a, const Rat& x) {
  Rat v(0);
  for (std::size_t k = a.size(); k-- > 0;) v = v * x + a[k];
  return v;
}

// Exact integral over [-1/2, 1/2].
inline Rat poly_integrate_cell(const RatPoly& a) {
  Rat acc(0);
  const Rat half(1, 2);
  Rat hpow = half;  // (1/2)^{k+1}
  for (std::size_t k = 0; k < a.size(); ++k) {
    // odd powers cancel between the endpoints
    if (k % 2 == 0) acc += a[k] * 2 * hpow / Rat(k + 1);
    hpow /= 2;
  }
  return acc;
}

// Lagrange basis over the given interpolation points.
inline std::vector<RatPoly> lagrange_basis(const std::vector<Rat>& pts) {
  std::vector<RatPoly> out;
  out.reserve(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    RatPoly num{Rat(1)};
    Rat den(1);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == k) continue;
      num = poly_mul(num, RatPoly{-pts[j], Rat(1)});
      den *= pts[k] - pts[j];
    }
    for (auto& c : num) c /= den;
    out.push_back(std::move(num));
  }
  return out;
}

// Polynomials L_m(x) such that the reconstruction over cells s..s+n-1 is
// q_h(x) = sum_m L_m(x) * qbar_{s+m}. Derived by interpolating the primitive
// function at the n+1 cell faces and differentiating: the Lagrange basis
// value at face k multiplies Q_k = sum_{m<k} qbar_{s+m}.
inline std::vector<RatPoly> reconstruction_rows(int s, int n) {
  std::vector<Rat> pts;
  pts.reserve(n + 1);
  for (int k = 0; k <= n; ++k) pts.push_back(Rat(2 * s - 1, 2) + k);
  const std::vector<RatPoly> phi = lagrange_basis(pts);
  std::vector<RatPoly> rows(n);
  for (int m = 0; m < n; ++m) {
    RatPoly acc{Rat(0)};
    for (int k = m + 1; k <= n; ++k) {
      const RatPoly dphi = poly_diff(phi[k]);
      if (acc.size() < dphi.size()) acc.resize(dphi.size(), Rat(0));
      for (std::size_t i = 0; i < dphi.size(); ++i) acc[i] += dphi[i];
    }
    rows[m] = std::move(acc);
  }
  return rows;
}

inline std::vector<Rat> face_coefficients(int s, int n, const Rat& xstar) {
  std::vector<Rat> c(n);
  const auto rows = reconstruction_rows(s, n);
  for (int m = 0; m < n; ++m) c[m] = poly_eval(rows[m], xstar);
  return c;
}

}  // namespace detail

// Builds the tables for radius r in exact rational arithmetic and rounds
// once to double at the end. Valid for r = 2..7 (orders 3..13).
inline WenoTables build_weno_tables(int r, double eps = 1e-6) {
  if (r < 2 || r > 7) {
    throw ConfigError("build_weno_tables: radius must be in 2..7");
  }
  if (!(eps > 0.0)) {
    throw ConfigError("build_weno_tables: epsilon must be positive");
  }
  using detail::Rat;
  WenoTables t;
  t.r = r;
  t.eps = eps;

  const int wide = 2 * r - 1;
  const std::array<Rat, 2> faces = {Rat(-1, 2), Rat(1, 2)};
  for (int face = 0; face < 2; ++face) {
    const std::vector<Rat> big =
        detail::face_coefficients(-(r - 1), wide, faces[face]);
    std::vector<std::vector<Rat>> small(r);
    for (int l = 0; l < r; ++l) {
      small[l] = detail::face_coefficients(-(r - 1) + l, r, faces[face]);
    }
    // Linear weights: substencil l covers window entries l..l+r-1, and only
    // stencils l <= j reach entry j for j < r, so forward substitution
    // determines d exactly; the remaining r-1 equations must then close.
    std::vector<Rat> d(r);
    for (int j = 0; j < r; ++j) {
      Rat acc = big[j];
      for (int l = 0; l < j; ++l) {
        const int m = j - l;
        if (m < r) acc -= d[l] * small[l][m];
      }
      d[j] = acc / small[j][0];
    }
    for (int j = 0; j < wide; ++j) {
      Rat acc(0);
      for (int l = 0; l < r; ++l) {
        const int m = j - l;
        if (m >= 0 && m < r) acc += d[l] * small[l][m];
      }
      if (acc != big[j]) {
        throw ConfigError("build_weno_tables: inconsistent linear weights");
      }
    }
    t.c_big[face].resize(wide);
    for (int j = 0; j < wide; ++j) {
      t.c_big[face][j] = static_cast<double>(big[j]);
    }
    t.c_small[face].assign(r, std::vector<double>(r));
    for (int l = 0; l < r; ++l) {
      for (int m = 0; m < r; ++m) {
        t.c_small[face][l][m] = static_cast<double>(small[l][m]);
      }
    }
    t.d[face].resize(r);
    for (int l = 0; l < r; ++l) t.d[face][l] = static_cast<double>(d[l]);
  }

  // Smoothness quadratic forms: beta_l = sum_{k=1}^{r-1} integral over the
  // center cell of (d^k q_h / dx^k)^2 scaled by dx^{2k-1}. In normalized
  // coordinates the scaling drops out entirely.
  t.beta_form.assign(r, std::vector<double>(r * r));
  for (int l = 0; l < r; ++l) {
    const auto rows = detail::reconstruction_rows(-(r - 1) + l, r);
    std::vector<std::vector<Rat>> B(r, std::vector<Rat>(r, Rat(0)));
    std::vector<detail::RatPoly> deriv(rows.begin(), rows.end());
    for (int k = 1; k <= r - 1; ++k) {
      for (int m = 0; m < r; ++m) deriv[m] = detail::poly_diff(deriv[m]);
      for (int m = 0; m < r; ++m) {
        for (int n = m; n < r; ++n) {
          const Rat v =
              detail::poly_integrate_cell(detail::poly_mul(deriv[m], deriv[n]));
          B[m][n] += v;
          if (n != m) B[n][m] += v;
        }
      }
    }
    for (int m = 0; m < r; ++m) {
      for (int n = 0; n < r; ++n) {
        t.beta_form[l][m * r + n] = static_cast<double>(B[m][n]);
      }
    }
  }
  return t;
}

// beta[l] = a^T B_l a over window entries l..l+r-1. Computed once per cell;
// both faces reuse the result.
inline void smoothness_indicators(const WenoTables& t, const double* window,
                                  double* beta) {
  const int r = t.r;
  for (int l = 0; l < r; ++l) {
    const double* a = window + l;
    const double* B = t.beta_form[l].data();
    double acc = 0.0;
    for (int m = 0; m < r; ++m) {
      double row = 0.0;
      for (int n = 0; n < r; ++n) row += B[m * r + n] * a[n];
      acc += a[m] * row;
    }
    beta[l] = acc;
  }
}

// omega_l = (d_l / (beta_l + eps)^2) / sum_k (d_k / (beta_k + eps)^2).
inline void nonlinear_weights(const double* beta, const double* d, int r,
                              double eps, double* omega) {
  double sum = 0.0;
  for (int l = 0; l < r; ++l) {
    const double denom = beta[l] + eps;
    omega[l] = d[l] / (denom * denom);
    sum += omega[l];
  }
  const double inv = 1.0 / sum;
  for (int l = 0; l < r; ++l) omega[l] *= inv;
}

// Scalar WENO value at one face of the center cell of a (2r-1)-wide window.
inline double reconstruct_interface(const WenoTables& t, const double* window,
                                    int face) {
  const int r = t.r;
  double beta[7], omega[7];
  smoothness_indicators(t, window, beta);
  nonlinear_weights(beta, t.d[face].data(), r, t.eps, omega);
  double value = 0.0;
  for (int l = 0; l < r; ++l) {
    const double* c = t.c_small[face][l].data();
    double v = 0.0;
    for (int m = 0; m < r; ++m) v += c[m] * window[l + m];
    value += omega[l] * v;
  }
  return value;
}

// Both faces of one cell from shared smoothness indicators.
inline void reconstruct_cell(const WenoTables& t, const double* window,
                             double* left_value, double* right_value) {
  const int r = t.r;
  double beta[7], omega[7];
  smoothness_indicators(t, window, beta);
  for (int face = 0; face < 2; ++face) {
    nonlinear_weights(beta, t.d[face].data(), r, t.eps, omega);
    double value = 0.0;
    for (int l = 0; l < r; ++l) {
      const double* c = t.c_small[face][l].data();
      double v = 0.0;
      for (int m = 0; m < r; ++m) v += c[m] * window[l + m];
      value += omega[l] * v;
    }
    *(face == face_left ? left_value : right_value) = value;
  }
}

// One-sided states at the n_cells+1 faces of a grid. uL[f] is the limit from
// the cell left of face f, uR[f] from the right. Buffers are reused across
// RHS evaluations.
struct FaceStates {
  int n_faces = 0;
  int n_comp = 1;
  std::vector<double> uL;
  std::vector<double> uR;

  void resize(int faces, int comp) {
    n_faces = faces;
    n_comp = comp;
    uL.assign(static_cast<std::size_t>(faces) * comp, 0.0);
    uR.assign(static_cast<std::size_t>(faces) * comp, 0.0);
  }
  double* left(int f) { return uL.data() + static_cast<std::size_t>(f) * n_comp; }
  double* right(int f) { return uR.data() + static_cast<std::size_t>(f) * n_comp; }
  const double* left(int f) const {
    return uL.data() + static_cast<std::size_t>(f) * n_comp;
  }
  const double* right(int f) const {
    return uR.data() + static_cast<std::size_t>(f) * n_comp;
  }
};

// Reconstructs one-sided interface states across the whole field (ghosts must
// already be filled). In characteristic mode the full window is projected
// with the left-eigenvector matrix frozen at the producing cell's average,
// reconstructed componentwise, and mapped back with the matching right
// eigenvectors. Requires field.ghost >= r so the outermost ghost cells can
// run the same central-stencil reconstruction for the boundary faces.
inline void reconstruct_field(const CellField& field, const WenoTables& t,
                              VariablesMode mode, const Equation& eq,
                              FaceStates& out) {
  const int r = t.r;
  const int n = field.n_cells;
  const int nc = field.n_comp;
  if (field.ghost < r) {
    throw ConfigError("reconstruct_field: ghost width below stencil need");
  }
  if (mode == VariablesMode::characteristic && !is_euler(eq)) {
    throw ConfigError("reconstruct_field: characteristic mode needs euler");
  }
  out.resize(n + 1, nc);

  double window[3][13];  // component-major copy of one cell's stencil
  double left_val[3], right_val[3];
  const int wide = 2 * r - 1;
  for (int cell = -1; cell <= n; ++cell) {
    if (mode == VariablesMode::conserved) {
      for (int c = 0; c < nc; ++c) {
        for (int j = 0; j < wide; ++j) {
          window[c][j] = field.at(cell - (r - 1) + j, c);
        }
      }
      for (int c = 0; c < nc; ++c) {
        reconstruct_cell(t, window[c], &left_val[c], &right_val[c]);
      }
    } else {
      EulerEigensystem eig;
      try {
        eig = euler_eigensystem(field.cell_ptr(cell),
                                std::get<EulerParams>(eq).gamma);
      } catch (NonPhysicalState& e) {
        e.cell = cell;
        e.add_context("characteristic projection at cell " +
                      std::to_string(cell));
        throw;
      }
      for (int j = 0; j < wide; ++j) {
        const double* u = field.cell_ptr(cell - (r - 1) + j);
        for (int c = 0; c < 3; ++c) {
          window[c][j] = eig.L[c][0] * u[0] + eig.L[c][1] * u[1] +
                         eig.L[c][2] * u[2];
        }
      }
      double wl[3], wr[3];
      for (int c = 0; c < 3; ++c) {
        reconstruct_cell(t, window[c], &wl[c], &wr[c]);
      }
      for (int k = 0; k < 3; ++k) {
        left_val[k] =
            eig.R[k][0] * wl[0] + eig.R[k][1] * wl[1] + eig.R[k][2] * wl[2];
        right_val[k] =
            eig.R[k][0] * wr[0] + eig.R[k][1] * wr[1] + eig.R[k][2] * wr[2];
      }
    }
    // Cell's right-face value feeds face cell+1 from the left; its
    // left-face value feeds face cell from the right.
    if (cell + 1 <= n) {
      double* dst = out.left(cell + 1);
      for (int c = 0; c < nc; ++c) dst[c] = right_val[c];
    }
    if (cell >= 0) {
      double* dst = out.right(cell);
      for (int c = 0; c < nc; ++c) dst[c] = left_val[c];
    }
  }
}

}  // namespace wenodec
