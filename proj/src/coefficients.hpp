// Region-wise transport coefficients with a C^1 mollified blend across the
// two interfaces, and the penalty schedules that realize the four singular
// regimes as functions of a single dial epsilon.
//
// Every coefficient is a triple (fluid, interior-solid, exterior-solid)
// blended radially:  X(p) = X_int + (X_F - X_int) q_in(p) + (X_ext - X_F) q_out(p)
// where q_in/q_out are smoothstep ramps across the inner/outer interface of
// full width w. Fields are evaluated pointwise at each staggering location.
#pragma once

#include <string>

#include "grid.hpp"

namespace penmhd {

enum class Scenario { None, Isolator, Pmc, Pec, IsolatorType };

Scenario parse_scenario(const std::string& name); // throws on unknown name
std::string scenario_name(Scenario s);

struct CoefficientTriple {
  double fluid = 0.0;
  double interior = 0.0;
  double exterior = 0.0;
};

struct CoefficientSet {
  CoefficientTriple beta;   // momentum friction
  CoefficientTriple nu;     // shear viscosity
  CoefficientTriple lambda; // bulk viscosity
  CoefficientTriple mu;     // magnetic permeability
  CoefficientTriple eta;    // resistivity
};

struct FluidCoefficients {
  double nu_F = 0.01;
  double lambda_F = 0.0;
  double mu_F = 1.0;
  double mu_int = 2.0;
  double eta_F = 0.01;
  double eta_int = 0.02;
};

// Penalty schedule. Friction is 1/eps in both solids; the full viscosity
// tensor is penalized through nu in 3-D and through lambda in 2-D; (mu, eta)
// in the exterior select the regime:
//   Isolator      mu_ext = mu_F    eta_ext = 1/eps
//   Pmc           mu_ext = 1/eps   eta_ext = eta_F
//   Pec           mu_ext = eps     eta_ext = eps
//   IsolatorType  mu_ext = eps     eta_ext = 1/eps
//   None          no penalty anywhere; every coefficient keeps its fluid value
CoefficientSet schedule(Scenario s, double eps, int dim, const FluidCoefficients& fc);

// Pointwise blended value at position p.
double coefficient_at(const std::array<double, 3>& p, const CoefficientTriple& t,
                      const RegionMap& rm, int dim);

// Blended coefficients sampled at every staggering location the solver needs.
struct CoefficientField {
  // cell centers
  CellField nu_c, lambda_c, mu_c, eta_c, beta_c;
  // faces
  FaceField beta_f, mu_f;
  // 2-D corners (dim==2) or 3-D edges (dim==3): where shear stress and EMF live
  CornerField nu_x, eta_x; // dim==2
  EdgeField nu_e, eta_e;   // dim==3
};

CoefficientField build_coefficient_field(const Grid& g, const RegionMap& rm,
                                         const CoefficientSet& set);

} // namespace penmhd
