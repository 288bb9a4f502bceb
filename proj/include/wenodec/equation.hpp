#pragma once

#include <cmath>
#include <variant>

#include "wenodec/errors.hpp"
#include "wenodec/euler.hpp"

namespace wenodec {

// Scalar linear advection u_t + a u_x = 0.
struct LinearAdvection {
  double speed = 1.0;
};

// The two conservation laws the solver handles. Everything downstream
// (fluxes, wave speeds, reconstruction modes) dispatches on this.
using Equation = std::variant<LinearAdvection, EulerParams>;

inline bool is_euler(const Equation& eq) {
  return std::holds_alternative<EulerParams>(eq);
}

inline int n_components(const Equation& eq) {
  return is_euler(eq) ? 3 : 1;
}

inline void physical_flux(const Equation& eq, const double* u, double* f) {
  if (const auto* lae = std::get_if<LinearAdvection>(&eq)) {
    f[0] = lae->speed * u[0];
  } else {
    euler_flux(u, std::get<EulerParams>(eq).gamma, f);
  }
}

// Largest characteristic speed of one state; throws NonPhysicalState for
// invalid Euler states.
inline double max_wave_speed(const Equation& eq, const double* u) {
  if (const auto* lae = std::get_if<LinearAdvection>(&eq)) {
    return std::abs(lae->speed);
  }
  return euler_signal_speed(u, std::get<EulerParams>(eq).gamma);
}

inline bool state_is_physical(const Equation& eq, const double* u) {
  if (std::holds_alternative<LinearAdvection>(eq)) return std::isfinite(u[0]);
  return euler_state_is_physical(u, std::get<EulerParams>(eq).gamma);
}

}  // namespace wenodec
