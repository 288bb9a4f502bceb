#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "wenodec/equation.hpp"
#include "wenodec/errors.hpp"
#include "wenodec/grid.hpp"
#include "wenodec/riemann.hpp"

namespace wenodec {

// A benchmark problem: equation, domain, boundary treatment, final time,
// pointwise initial data in conserved variables, and (when one is known)
// the pointwise exact conserved solution.
struct ProblemSpec {
  std::string id;
  std::string description;
  Equation equation;
  double x_left = 0.0;
  double x_right = 1.0;
  double t_final = 1.0;
  BoundaryCondition bc;
  std::function<void(double, double*)> initial;
  // Exact conserved solution u(x, t); empty when unavailable.
  std::function<void(double, double, double*)> exact;

  bool has_exact() const { return static_cast<bool>(exact); }
};

namespace detail {

// Maps y into [x_left, x_left + length) by periodicity.
inline double wrap_periodic(double y, double x_left, double length) {
  double z = std::fmod(y - x_left, length);
  if (z < 0.0) z += length;
  return x_left + z;
}

inline double smooth_bump(double x) {
  const double s = std::sin(M_PI * x);
  const double s2 = s * s;
  return s2 * s2;
}

// Piecewise profile combining a smoothed Gaussian triple, a square wave,
// a triangle, and a smoothed half-ellipse.
inline double composite_wave(double x) {
  const double delta = 0.005;
  const double z = -0.7;
  const double a = 0.5;
  const double alpha = 10.0;
  const double beta = std::log(2.0) / (36.0 * delta * delta);
  auto G = [&](double center) {
    return std::exp(-beta * (x - center) * (x - center));
  };
  auto F = [&](double center) {
    const double v = 1.0 - alpha * alpha * (x - center) * (x - center);
    return std::sqrt(std::max(v, 0.0));
  };
  if (x >= -0.8 && x <= -0.6) {
    return (G(z - delta) + 4.0 * G(z) + G(z + delta)) / 6.0;
  }
  if (x >= -0.4 && x <= -0.2) return 1.0;
  if (x >= 0.0 && x <= 0.2) return 1.0 - std::abs(10.0 * (x - 0.1));
  if (x >= 0.4 && x <= 0.6) {
    return (F(a - delta) + 4.0 * F(a) + F(a + delta)) / 6.0;
  }
  return 0.0;
}

inline ProblemSpec lae_problem(std::string id, std::string description,
                               double speed, double t_final,
                               std::function<double(double)> profile) {
  ProblemSpec p;
  p.id = std::move(id);
  p.description = std::move(description);
  p.equation = LinearAdvection{speed};
  p.x_left = -1.0;
  p.x_right = 1.0;
  p.t_final = t_final;
  p.bc = BoundaryCondition::periodic();
  p.initial = [profile](double x, double* u) { u[0] = profile(x); };
  p.exact = [profile, speed](double x, double t, double* u) {
    u[0] = profile(wrap_periodic(x - speed * t, -1.0, 2.0));
  };
  return p;
}

inline ProblemSpec riemann_problem(std::string id, std::string description,
                                   std::array<double, 3> wl,
                                   std::array<double, 3> wr, double x_disc,
                                   double t_final) {
  const double gamma = 1.4;
  ProblemSpec p;
  p.id = std::move(id);
  p.description = std::move(description);
  p.equation = EulerParams{gamma};
  p.x_left = 0.0;
  p.x_right = 1.0;
  p.t_final = t_final;
  p.bc = BoundaryCondition::transmissive();
  p.initial = [wl, wr, x_disc, gamma](double x, double* u) {
    euler_prim_to_cons(x < x_disc ? wl.data() : wr.data(), gamma, u);
  };
  const StarState star = exact_riemann_star(wl.data(), wr.data(), gamma);
  p.exact = [wl, wr, x_disc, gamma, star](double x, double t, double* u) {
    double w[3];
    if (t <= 0.0) {
      const auto& side = x < x_disc ? wl : wr;
      w[0] = side[0]; w[1] = side[1]; w[2] = side[2];
    } else {
      sample_riemann(star, wl.data(), wr.data(), gamma, (x - x_disc) / t, w);
    }
    euler_prim_to_cons(w, gamma, u);
  };
  return p;
}

}  // namespace detail

inline std::vector<std::string> problem_ids() {
  return {"lae-test1",        "lae-test2",
          "euler-smooth-advection",
          "euler-rp1",        "euler-rp2",
          "euler-rp2-relaxed", "euler-rp3",
          "euler-rp4",        "euler-rp5",
          "euler-shock-turbulence"};
}

inline ProblemSpec make_problem(const std::string& id) {
  if (id == "lae-test1") {
    return detail::lae_problem(
        "lae-test1", "linear advection of sin^4(pi x), periodic", 1.0, 1.0,
        [](double x) { return detail::smooth_bump(x); });
  }
  if (id == "lae-test2") {
    return detail::lae_problem(
        "lae-test2", "long-time linear advection of a composite wave", 1.0,
        2000.0, [](double x) { return detail::composite_wave(x); });
  }
  if (id == "euler-smooth-advection") {
    const double gamma = 1.4;
    ProblemSpec p;
    p.id = id;
    p.description = "advection of a smooth density bump, velocity and "
                    "pressure constant";
    p.equation = EulerParams{gamma};
    p.x_left = -1.0;
    p.x_right = 1.0;
    p.t_final = 2.0;
    p.bc = BoundaryCondition::periodic();
    auto prim = [](double x, double t, double* w) {
      w[0] = 2.0 + detail::smooth_bump(
                       detail::wrap_periodic(x - t, -1.0, 2.0));
      w[1] = 1.0;
      w[2] = 1.0;
    };
    p.initial = [prim, gamma](double x, double* u) {
      double w[3];
      prim(x, 0.0, w);
      euler_prim_to_cons(w, gamma, u);
    };
    p.exact = [prim, gamma](double x, double t, double* u) {
      double w[3];
      prim(x, t, w);
      euler_prim_to_cons(w, gamma, u);
    };
    return p;
  }
  if (id == "euler-rp1") {
    return detail::riemann_problem(id, "right-moving shock tube",
                                   {1.0, 0.75, 1.0}, {0.125, 0.0, 0.1}, 0.3,
                                   0.2);
  }
  if (id == "euler-rp2") {
    return detail::riemann_problem(id, "double rarefaction, near-vacuum",
                                   {1.0, -2.0, 0.4}, {1.0, 2.0, 0.4}, 0.5,
                                   0.15);
  }
  if (id == "euler-rp2-relaxed") {
    return detail::riemann_problem(id, "double rarefaction, milder pull",
                                   {1.0, -1.0, 0.4}, {1.0, 1.0, 0.4}, 0.5,
                                   0.15);
  }
  if (id == "euler-rp3") {
    return detail::riemann_problem(id, "strong left blast wave",
                                   {1.0, 0.0, 1000.0}, {1.0, 0.0, 0.01}, 0.5,
                                   0.012);
  }
  if (id == "euler-rp4") {
    return detail::riemann_problem(id, "colliding shocks",
                                   {5.99924, 19.5975, 460.894},
                                   {5.99242, -6.19633, 46.0950}, 0.4, 0.035);
  }
  if (id == "euler-rp5") {
    return detail::riemann_problem(id, "slowly moving contact under a strong "
                                       "pressure jump",
                                   {1.0, -19.59745, 1000.0},
                                   {1.0, -19.59745, 0.01}, 0.8, 0.012);
  }
  if (id == "euler-shock-turbulence") {
    const double gamma = 1.4;
    ProblemSpec p;
    p.id = id;
    p.description = "shock running into a sinusoidal density field";
    p.equation = EulerParams{gamma};
    p.x_left = -5.0;
    p.x_right = 5.0;
    p.t_final = 5.0;
    const std::array<double, 3> w_in = {1.515695, 0.523346, 1.80500};
    std::vector<double> u_in(3);
    euler_prim_to_cons(w_in.data(), gamma, u_in.data());
    p.bc = BoundaryCondition::inflow_left_transmissive_right(u_in);
    p.initial = [w_in, gamma](double x, double* u) {
      double w[3];
      if (x < -4.5) {
        w[0] = w_in[0]; w[1] = w_in[1]; w[2] = w_in[2];
      } else {
        w[0] = 1.0 + 0.1 * std::sin(20.0 * M_PI * x);
        w[1] = 0.0;
        w[2] = 1.0;
      }
      euler_prim_to_cons(w, gamma, u);
    };
    return p;
  }
  throw ConfigError("unknown problem id: " + id);
}

}  // namespace wenodec
