#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wenodec/driver.hpp"
#include "wenodec/errors.hpp"

namespace wenodec {

// Serializable run description used by the command-line tools. String fields
// keep the on-disk form stable; make_scheme() translates and validates.
struct RunConfig {
  std::string problem = "lae-test1";
  int order = 5;
  std::string flux = "rusanov";      // upwind | rusanov | exact-rs
  std::string vars = "cons";         // cons | char
  std::string integrator = "dec";    // dec | ssprk3 | ssprk4 | mssprk3 | mssprk4
  double cfl = 0.95;
  double epsilon_weno = 1e-6;
  int cells = 100;
  std::vector<int> refinements;      // used by convergence/sweep verbs
  double t_final = -1.0;             // <= 0 selects the problem default
  std::string out_dir = "out";

  bool operator==(const RunConfig&) const = default;
};

inline void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json{{"problem", c.problem},
                     {"order", c.order},
                     {"flux", c.flux},
                     {"vars", c.vars},
                     {"integrator", c.integrator},
                     {"cfl", c.cfl},
                     {"epsilon_weno", c.epsilon_weno},
                     {"cells", c.cells},
                     {"refinements", c.refinements},
                     {"t_final", c.t_final},
                     {"out_dir", c.out_dir}};
}

inline void from_json(const nlohmann::json& j, RunConfig& c) {
  const RunConfig defaults;
  c.problem = j.value("problem", defaults.problem);
  c.order = j.value("order", defaults.order);
  c.flux = j.value("flux", defaults.flux);
  c.vars = j.value("vars", defaults.vars);
  c.integrator = j.value("integrator", defaults.integrator);
  c.cfl = j.value("cfl", defaults.cfl);
  c.epsilon_weno = j.value("epsilon_weno", defaults.epsilon_weno);
  c.cells = j.value("cells", defaults.cells);
  c.refinements = j.value("refinements", defaults.refinements);
  c.t_final = j.value("t_final", defaults.t_final);
  c.out_dir = j.value("out_dir", defaults.out_dir);
}

inline FluxKind parse_flux(const std::string& s) {
  if (s == "upwind") return FluxKind::upwind;
  if (s == "rusanov") return FluxKind::rusanov;
  if (s == "exact-rs") return FluxKind::exact_rs;
  throw ConfigError("unknown flux '" + s +
                    "' (expected upwind, rusanov, or exact-rs)");
}

inline VariablesMode parse_vars(const std::string& s) {
  if (s == "cons") return VariablesMode::conserved;
  if (s == "char") return VariablesMode::characteristic;
  throw ConfigError("unknown variables mode '" + s +
                    "' (expected cons or char)");
}

inline IntegratorKind parse_integrator(const std::string& s) {
  if (s == "dec") return IntegratorKind::dec;
  if (s == "ssprk3") return IntegratorKind::ssprk3;
  if (s == "ssprk4") return IntegratorKind::ssprk4;
  if (s == "mssprk3") return IntegratorKind::mssprk3;
  if (s == "mssprk4") return IntegratorKind::mssprk4;
  throw ConfigError("unknown integrator '" + s + "'");
}

inline SchemeConfig make_scheme(const RunConfig& c, const Equation& eq) {
  SchemeConfig s;
  s.order = c.order;
  s.flux = parse_flux(c.flux);
  s.variables = parse_vars(c.vars);
  s.integrator = parse_integrator(c.integrator);
  s.cfl = c.cfl;
  s.eps_weno = c.epsilon_weno;
  s.validate(eq);
  return s;
}

}  // namespace wenodec
