#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "wenodec/errors.hpp"
#include "wenodec/quadrature.hpp"

namespace wenodec {

// Deferred-correction data for one accuracy order P: M+1 Gauss-Lobatto
// subtimenodes tau_0 = 0 < ... < tau_M = 1 on the unit step and the
// quadrature matrix theta, where theta[m][l] integrates the l-th Lagrange
// basis polynomial from 0 to tau_m. Row 0 is all zeros (tau_0 = 0).
// The update with P fixed-point sweeps reaches accuracy min(P, 2M).
struct DeCTableau {
  int M = 0;
  std::vector<double> tau;                 // M+1 nodes on [0, 1]
  std::vector<std::vector<double>> theta;  // (M+1) x (M+1)
};

// Explicit Runge-Kutta Butcher data (strictly lower-triangular a).
struct RKTableau {
  int stages = 0;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c;
};

// M = ceil(P/2) keeps the Gauss-Lobatto quadrature accuracy 2M at or above
// the requested order with the fewest nodes.
inline DeCTableau build_dec_tableau(int P) {
  if (P < 1 || P > 13) {
    throw ConfigError("build_dec_tableau: order must be in 1..13");
  }
  const int M = (P + 1) / 2;
  DeCTableau tab;
  tab.M = M;
  const QuadratureRule lobatto = gauss_lobatto(M + 1);
  tab.tau.resize(M + 1);
  for (int l = 0; l <= M; ++l) tab.tau[l] = 0.5 * (lobatto.nodes[l] + 1.0);
  tab.tau[0] = 0.0;
  tab.tau[M] = 1.0;

  // Integrate each Lagrange basis polynomial (degree M, evaluated in product
  // form) over [0, tau_m] with a Gauss-Legendre rule that is exact for that
  // degree.
  const QuadratureRule gl = gauss_legendre(M + 1);
  auto lagrange = [&](int l, double x) {
    double v = 1.0;
    for (int k = 0; k <= M; ++k) {
      if (k == l) continue;
      v *= (x - tab.tau[k]) / (tab.tau[l] - tab.tau[k]);
    }
    return v;
  };
  tab.theta.assign(M + 1, std::vector<double>(M + 1, 0.0));
  for (int m = 1; m <= M; ++m) {
    const double half = 0.5 * tab.tau[m];
    for (int l = 0; l <= M; ++l) {
      double acc = 0.0;
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        acc += gl.weights[q] * lagrange(l, half * (gl.nodes[q] + 1.0));
      }
      tab.theta[m][l] = half * acc;
    }
  }
  return tab;
}

inline RKTableau ssprk33() {
  RKTableau t;
  t.stages = 3;
  t.a = {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.25, 0.25, 0.0}};
  t.b = {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0};
  t.c = {0.0, 1.0, 0.5};
  return t;
}

// Five-stage fourth-order strong-stability-preserving tableau
// (Spiteri-Ruuth coefficients, 30 significant digits).
inline RKTableau ssprk54() {
  RKTableau t;
  t.stages = 5;
  t.a = {
      {0.0, 0.0, 0.0, 0.0, 0.0},
      {0.391752226869253785640632115627, 0.0, 0.0, 0.0, 0.0},
      {0.217669096357834985920253802915, 0.368410592709066783214662112772,
       0.0, 0.0, 0.0},
      {0.0826920866830935842609242437786, 0.139958502107426395108400626025,
       0.251891774371960822884363746140, 0.0, 0.0},
      {0.0679662835740483884329695316049, 0.115034698453668419467815057942,
       0.207034898772936576352392025561, 0.544974750295139481064416383368,
       0.0}};
  t.b = {0.146811876157875933686947006683, 0.248482909391317264243714136087,
         0.104258830279481225354037031167, 0.274438901048480694917546480567,
         0.226007483122844881797755345495};
  t.c = {0.0, 0.391752226869253785640632115627,
         0.586079689066901769134915915687, 0.4745423631624808022536886159436,
         0.9350106310957928653175929984759};
  return t;
}

// Heun's two-stage second-order SSP method (used by the MUSCL reference).
inline RKTableau ssprk22() {
  RKTableau t;
  t.stages = 2;
  t.a = {{0.0, 0.0}, {1.0, 0.0}};
  t.b = {0.5, 0.5};
  t.c = {0.0, 1.0};
  return t;
}

struct DecWorkspace {
  std::vector<std::vector<double>> state;  // iterate at nodes 1..M
  std::vector<std::vector<double>> g;      // rhs at nodes 0..M
};

// One deferred-correction step. The rhs callable has signature
// rhs(t, const std::vector<double>& u, std::vector<double>& dudt).
// Per sweep the rhs is evaluated once per subtimenode; node 0 sits at the
// known state u_n, so its evaluation is shared by every sweep. The sweep
// count equals the requested accuracy order.
template <class Rhs>
void dec_step(Rhs&& rhs, std::vector<double>& u, double t, double dt,
              const DeCTableau& tab, int iterations, DecWorkspace& ws) {
  const int M = tab.M;
  const std::size_t n = u.size();
  ws.state.resize(M + 1);
  ws.g.resize(M + 1);
  for (int m = 0; m <= M; ++m) {
    ws.state[m].resize(n);
    ws.g[m].resize(n);
  }
  for (int m = 1; m <= M; ++m) ws.state[m] = u;
  rhs(t, u, ws.g[0]);
  for (int p = 1; p <= iterations; ++p) {
    for (int l = 1; l <= M; ++l) {
      try {
        rhs(t + tab.tau[l] * dt, ws.state[l], ws.g[l]);
      } catch (SolverError& e) {
        e.add_context("dec sweep " + std::to_string(p) + ", subtimenode " +
                      std::to_string(l));
        throw;
      }
    }
    for (int m = 1; m <= M; ++m) {
      const std::vector<double>& th = tab.theta[m];
      std::vector<double>& um = ws.state[m];
      for (std::size_t i = 0; i < n; ++i) {
        double acc = th[0] * ws.g[0][i];
        for (int l = 1; l <= M; ++l) acc += th[l] * ws.g[l][i];
        um[i] = u[i] + dt * acc;
      }
    }
  }
  u = ws.state[M];
}

struct RKWorkspace {
  std::vector<std::vector<double>> k;
  std::vector<double> stage_state;
};

template <class Rhs>
void rk_step(Rhs&& rhs, std::vector<double>& u, double t, double dt,
             const RKTableau& tab, RKWorkspace& ws) {
  const int s = tab.stages;
  const std::size_t n = u.size();
  ws.k.resize(s);
  for (auto& ki : ws.k) ki.resize(n);
  ws.stage_state.resize(n);
  for (int i = 0; i < s; ++i) {
    std::vector<double>& us = ws.stage_state;
    us = u;
    for (int j = 0; j < i; ++j) {
      const double a = tab.a[i][j];
      if (a == 0.0) continue;
      const std::vector<double>& kj = ws.k[j];
      for (std::size_t m = 0; m < n; ++m) us[m] += dt * a * kj[m];
    }
    try {
      rhs(t + tab.c[i] * dt, us, ws.k[i]);
    } catch (SolverError& e) {
      e.add_context("rk stage " + std::to_string(i));
      throw;
    }
  }
  for (int i = 0; i < s; ++i) {
    const double b = tab.b[i];
    const std::vector<double>& ki = ws.k[i];
    for (std::size_t m = 0; m < n; ++m) u[m] += dt * b * ki[m];
  }
}

// CFL time step from the largest cell-average signal speed at t_n.
inline double compute_dt(double cfl, double dx, double smax) {
  if (!(smax > 0.0)) throw ConfigError("compute_dt: nonpositive signal speed");
  return cfl * dx / smax;
}

// Modified step law dt = cfl * (dx/smax)^(P/R): matches the time
// integrator's order R to a higher space order P at the cost of smaller
// steps on finer meshes.
inline double compute_dt_modified(double cfl, double dx, double smax,
                                  int space_order, int time_order) {
  if (!(smax > 0.0)) throw ConfigError("compute_dt: nonpositive signal speed");
  const double ratio = static_cast<double>(space_order) / time_order;
  return cfl * std::pow(dx / smax, ratio);
}

}  // namespace wenodec
