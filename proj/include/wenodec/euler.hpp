#pragma once

#include <array>
#include <cmath>
#include <string>

#include "wenodec/errors.hpp"

namespace wenodec {

// 1D compressible Euler equations for an ideal gas.
// Conserved state u = (rho, rho*v, E), primitive state w = (rho, v, p),
// E = p/(gamma-1) + rho*v^2/2.
struct EulerParams {
  double gamma = 1.4;

  void validate() const {
    if (!(gamma > 1.0)) throw ConfigError("euler: gamma must exceed 1");
  }
};

inline void euler_prim_to_cons(const double* w, double gamma, double* u) {
  const double rho = w[0], v = w[1], p = w[2];
  u[0] = rho;
  u[1] = rho * v;
  u[2] = p / (gamma - 1.0) + 0.5 * rho * v * v;
}

// Throws NonPhysicalState on nonpositive density or pressure. No clipping:
// an invalid state must surface as a failure, not be silently repaired.
inline void euler_cons_to_prim(const double* u, double gamma, double* w) {
  const double rho = u[0];
  if (!(rho > 0.0)) {
    throw NonPhysicalState("nonpositive density " + std::to_string(rho));
  }
  const double v = u[1] / rho;
  const double p = (gamma - 1.0) * (u[2] - 0.5 * rho * v * v);
  if (!(p > 0.0)) {
    throw NonPhysicalState("nonpositive pressure " + std::to_string(p));
  }
  w[0] = rho;
  w[1] = v;
  w[2] = p;
}

inline bool euler_state_is_physical(const double* u, double gamma) {
  if (!(u[0] > 0.0)) return false;
  const double v = u[1] / u[0];
  return (gamma - 1.0) * (u[2] - 0.5 * u[0] * v * v) > 0.0;
}

inline double euler_sound_speed(const double* w, double gamma) {
  return std::sqrt(gamma * w[2] / w[0]);
}

inline void euler_flux_from_prim(const double* w, double gamma, double* f) {
  const double rho = w[0], v = w[1], p = w[2];
  const double E = p / (gamma - 1.0) + 0.5 * rho * v * v;
  f[0] = rho * v;
  f[1] = rho * v * v + p;
  f[2] = v * (E + p);
}

inline void euler_flux(const double* u, double gamma, double* f) {
  double w[3];
  euler_cons_to_prim(u, gamma, w);
  euler_flux_from_prim(w, gamma, f);
}

// |v| + c evaluated from a conserved state.
inline double euler_signal_speed(const double* u, double gamma) {
  double w[3];
  euler_cons_to_prim(u, gamma, w);
  return std::abs(w[1]) + euler_sound_speed(w, gamma);
}

// Eigendecomposition of the flux Jacobian at one conserved state:
// A = R diag(lambda) L with L = R^{-1}. Rows of L / columns of R are
// ordered by wave speed (v-c, v, v+c).
struct EulerEigensystem {
  std::array<double, 3> lambda;
  std::array<std::array<double, 3>, 3> R;  // columns are right eigenvectors
  std::array<std::array<double, 3>, 3> L;  // rows are left eigenvectors
};

inline EulerEigensystem euler_eigensystem(const double* u, double gamma) {
  double w[3];
  euler_cons_to_prim(u, gamma, w);
  const double v = w[1];
  const double c = euler_sound_speed(w, gamma);
  const double H = (u[2] + w[2]) / w[0];  // total specific enthalpy
  EulerEigensystem e;
  e.lambda = {v - c, v, v + c};
  e.R = {{{1.0, 1.0, 1.0},
          {v - c, v, v + c},
          {H - v * c, 0.5 * v * v, H + v * c}}};
  const double b1 = (gamma - 1.0) / (c * c);
  const double b2 = 0.5 * b1 * v * v;
  e.L = {{{0.5 * (b2 + v / c), 0.5 * (-b1 * v - 1.0 / c), 0.5 * b1},
          {1.0 - b2, b1 * v, -b1},
          {0.5 * (b2 - v / c), 0.5 * (-b1 * v + 1.0 / c), 0.5 * b1}}};
  return e;
}

// Analytic flux Jacobian, used to cross-check the eigendecomposition.
inline std::array<std::array<double, 3>, 3> euler_flux_jacobian(
    const double* u, double gamma) {
  double w[3];
  euler_cons_to_prim(u, gamma, w);
  const double v = w[1];
  const double H = (u[2] + w[2]) / u[0];
  const double gm1 = gamma - 1.0;
  return {{{0.0, 1.0, 0.0},
           {0.5 * (gamma - 3.0) * v * v, (3.0 - gamma) * v, gm1},
           {0.5 * gm1 * v * v * v - v * H, H - gm1 * v * v, gamma * v}}};
}

}  // namespace wenodec
