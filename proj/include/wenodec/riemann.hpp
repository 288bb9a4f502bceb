#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "wenodec/equation.hpp"
#include "wenodec/errors.hpp"
#include "wenodec/euler.hpp"

namespace wenodec {

// Upwind flux for scalar linear advection; this is its exact Riemann flux.
inline double upwind_flux_lae(double speed, double uL, double uR) {
  return speed >= 0.0 ? speed * uL : speed * uR;
}

// Local Lax-Friedrichs flux: central average minus dissipation scaled by the
// fastest signal speed of the two one-sided states.
inline void rusanov_flux(const Equation& eq, const double* uL, const double* uR,
                         double* flux) {
  const int nc = n_components(eq);
  double fL[3], fR[3];
  physical_flux(eq, uL, fL);
  physical_flux(eq, uR, fR);
  const double s = std::max(max_wave_speed(eq, uL), max_wave_speed(eq, uR));
  for (int c = 0; c < nc; ++c) {
    flux[c] = 0.5 * (fL[c] + fR[c]) - 0.5 * s * (uR[c] - uL[c]);
  }
}

// Star region of the exact Euler Riemann solution.
struct StarState {
  double p = 0.0;        // star pressure
  double u = 0.0;        // star (contact) velocity
  double rho_left = 0.0;   // density left of the contact
  double rho_right = 0.0;  // density right of the contact
};

namespace detail {

// f_K(p) and f_K'(p) for one side of the pressure equation
// f_L(p) + f_R(p) + (uR - uL) = 0 (shock branch for p > p_K, rarefaction
// otherwise).
inline void pressure_fn(double p, double rho_k, double p_k, double gamma,
                        double& f, double& df) {
  const double c_k = std::sqrt(gamma * p_k / rho_k);
  if (p > p_k) {
    const double A = 2.0 / ((gamma + 1.0) * rho_k);
    const double B = (gamma - 1.0) / (gamma + 1.0) * p_k;
    const double root = std::sqrt(A / (p + B));
    f = (p - p_k) * root;
    df = root * (1.0 - 0.5 * (p - p_k) / (B + p));
  } else {
    const double z = (gamma - 1.0) / (2.0 * gamma);
    f = 2.0 * c_k / (gamma - 1.0) * (std::pow(p / p_k, z) - 1.0);
    df = std::pow(p / p_k, -(gamma + 1.0) / (2.0 * gamma)) / (rho_k * c_k);
  }
}

}  // namespace detail

// Solves the star region from primitive states wL, wR = (rho, u, p).
// Newton iteration on the pressure equation, started from the
// two-rarefaction approximation clipped below at 1e-8 * max(p_L, p_R);
// steps that would drive the pressure nonpositive are halved. Throws
// VacuumGenerated when the data admit vacuum and NoConvergence if 100
// iterations do not reach a 1e-12 relative pressure change.
inline StarState exact_riemann_star(const double* wL, const double* wR,
                                    double gamma) {
  const double rho_l = wL[0], u_l = wL[1], p_l = wL[2];
  const double rho_r = wR[0], u_r = wR[1], p_r = wR[2];
  const double c_l = std::sqrt(gamma * p_l / rho_l);
  const double c_r = std::sqrt(gamma * p_r / rho_r);
  const double du = u_r - u_l;
  if (2.0 * (c_l + c_r) / (gamma - 1.0) <= du) {
    throw VacuumGenerated("riemann data generate vacuum (du = " +
                          std::to_string(du) + ")");
  }

  const double z = (gamma - 1.0) / (2.0 * gamma);
  double p = std::pow(
      (c_l + c_r - 0.5 * (gamma - 1.0) * du) /
          (c_l / std::pow(p_l, z) + c_r / std::pow(p_r, z)),
      1.0 / z);
  p = std::max(p, 1e-8 * std::max(p_l, p_r));

  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    double f_l, df_l, f_r, df_r;
    detail::pressure_fn(p, rho_l, p_l, gamma, f_l, df_l);
    detail::pressure_fn(p, rho_r, p_r, gamma, f_r, df_r);
    double step = (f_l + f_r + du) / (df_l + df_r);
    while (p - step <= 0.0) step *= 0.5;
    const double p_new = p - step;
    const double change = std::abs(p_new - p) / (0.5 * (p_new + p));
    p = p_new;
    if (change < 1e-12) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NoConvergence("riemann pressure iteration did not converge");
  }

  double f_l, df_l, f_r, df_r;
  detail::pressure_fn(p, rho_l, p_l, gamma, f_l, df_l);
  detail::pressure_fn(p, rho_r, p_r, gamma, f_r, df_r);
  StarState s;
  s.p = p;
  s.u = 0.5 * (u_l + u_r) + 0.5 * (f_r - f_l);
  const double g6 = (gamma - 1.0) / (gamma + 1.0);
  s.rho_left = p > p_l
                   ? rho_l * (p / p_l + g6) / (g6 * (p / p_l) + 1.0)
                   : rho_l * std::pow(p / p_l, 1.0 / gamma);
  s.rho_right = p > p_r
                    ? rho_r * (p / p_r + g6) / (g6 * (p / p_r) + 1.0)
                    : rho_r * std::pow(p / p_r, 1.0 / gamma);
  return s;
}

// Samples the self-similar solution at speed xi = x/t, writing a primitive
// state. Ties at a wave speed resolve to the state right of the wave (the
// comparisons below are arranged so equality picks that side).
inline void sample_riemann(const StarState& s, const double* wL,
                           const double* wR, double gamma, double xi,
                           double* w_out) {
  const double g6 = (gamma - 1.0) / (gamma + 1.0);
  if (xi < s.u) {
    // Left of the contact.
    const double rho_k = wL[0], u_k = wL[1], p_k = wL[2];
    const double c_k = std::sqrt(gamma * p_k / rho_k);
    if (s.p > p_k) {
      const double S = u_k - c_k * std::sqrt((gamma + 1.0) / (2.0 * gamma) *
                                                 (s.p / p_k) +
                                             (gamma - 1.0) / (2.0 * gamma));
      if (xi < S) {
        w_out[0] = rho_k; w_out[1] = u_k; w_out[2] = p_k;
      } else {
        w_out[0] = s.rho_left; w_out[1] = s.u; w_out[2] = s.p;
      }
    } else {
      const double c_star = c_k * std::pow(s.p / p_k, (gamma - 1.0) / (2.0 * gamma));
      const double head = u_k - c_k;
      const double tail = s.u - c_star;
      if (xi < head) {
        w_out[0] = rho_k; w_out[1] = u_k; w_out[2] = p_k;
      } else if (xi >= tail) {
        w_out[0] = s.rho_left; w_out[1] = s.u; w_out[2] = s.p;
      } else {
        const double factor =
            2.0 / (gamma + 1.0) + g6 / c_k * (u_k - xi);
        w_out[0] = rho_k * std::pow(factor, 2.0 / (gamma - 1.0));
        w_out[1] = 2.0 / (gamma + 1.0) * (c_k + 0.5 * (gamma - 1.0) * u_k + xi);
        w_out[2] = p_k * std::pow(factor, 2.0 * gamma / (gamma - 1.0));
      }
    }
  } else {
    // Right of the contact (equality lands here).
    const double rho_k = wR[0], u_k = wR[1], p_k = wR[2];
    const double c_k = std::sqrt(gamma * p_k / rho_k);
    if (s.p > p_k) {
      const double S = u_k + c_k * std::sqrt((gamma + 1.0) / (2.0 * gamma) *
                                                 (s.p / p_k) +
                                             (gamma - 1.0) / (2.0 * gamma));
      if (xi >= S) {
        w_out[0] = rho_k; w_out[1] = u_k; w_out[2] = p_k;
      } else {
        w_out[0] = s.rho_right; w_out[1] = s.u; w_out[2] = s.p;
      }
    } else {
      const double c_star = c_k * std::pow(s.p / p_k, (gamma - 1.0) / (2.0 * gamma));
      const double head = u_k + c_k;
      const double tail = s.u + c_star;
      if (xi >= head) {
        w_out[0] = rho_k; w_out[1] = u_k; w_out[2] = p_k;
      } else if (xi < tail) {
        w_out[0] = s.rho_right; w_out[1] = s.u; w_out[2] = s.p;
      } else {
        const double factor =
            2.0 / (gamma + 1.0) - g6 / c_k * (u_k - xi);
        w_out[0] = rho_k * std::pow(factor, 2.0 / (gamma - 1.0));
        w_out[1] = 2.0 / (gamma + 1.0) * (-c_k + 0.5 * (gamma - 1.0) * u_k + xi);
        w_out[2] = p_k * std::pow(factor, 2.0 * gamma / (gamma - 1.0));
      }
    }
  }
}

// Godunov flux from the exact Riemann solution sampled on the interface
// (xi = 0). Takes conserved one-sided states.
inline void exact_riemann_flux_euler(const double* uL, const double* uR,
                                     double gamma, double* flux) {
  double wL[3], wR[3], w_face[3];
  euler_cons_to_prim(uL, gamma, wL);
  euler_cons_to_prim(uR, gamma, wR);
  const StarState s = exact_riemann_star(wL, wR, gamma);
  sample_riemann(s, wL, wR, gamma, 0.0, w_face);
  euler_flux_from_prim(w_face, gamma, flux);
}

}  // namespace wenodec
