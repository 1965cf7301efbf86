// Time integrator for the penalized barotropic MHD system on the periodic
// staggered grid. One step is an operator split:
//
//   1. Heun (two-stage explicit) pass for transport, pressure, the magnetic
//      force curl H x (mu H), and the ideal constrained-transport induction
//      update; convective fluxes are Rusanov with central-slope reconstruction.
//   2. pointwise implicit friction  m <- m / (1 + dt beta / rho)
//   3. implicit viscous solve       (rho I - dt div S(.)) u = m   (CG)
//   4. implicit resistive solve     (mu I + dt curl(eta curl .)) H = mu H (CG),
//      applied as an exact discrete curl update of mu H.
//
// mu H is only ever changed by discrete curls of edge/corner EMFs, so
// div(mu_f H) is conserved to round-off; the projection only runs on initial
// data. Each dissipative substep is unconditionally stable and dissipates at
// least the quadrature reported in StepStats, which is what makes the global
// energy budget certifiable.
#pragma once

#include <functional>
#include <vector>

#include "coefficients.hpp"
#include "eos.hpp"
#include "grid.hpp"
#include "linsolve.hpp"

namespace penmhd {

struct State {
  double t = 0.0;
  CellField rho;
  FaceField m;
  FaceField H;
};

struct SolverParams {
  double cfl = 0.4;
  double dt_min = 1e-9;
  double dt_max = 0.05;
  double cg_tol = 1e-8;
  int cg_maxit = 50000;
  double proj_tol = 1e-13; // on max |div(mu H)| relative to ||mu H||_inf / h
  int proj_maxit = 200000;
};

struct Problem {
  Grid grid;
  RegionMap regions;
  CoefficientSet set;
  CoefficientField coef;
  EosParams eos;
  Scenario scenario = Scenario::None;
  double epsilon = 1.0;
  SolverParams sp;
};

// Optional source terms (used by the manufactured-solution harness). The EMF
// source enters the induction update through the corner/edge EMF so forced
// runs keep div(mu H) exact as well.
struct Forcing {
  virtual ~Forcing() = default;
  virtual void continuity(const Grid&, double, CellField&) const {}
  virtual void momentum(const Grid&, double, FaceField&) const {}
  virtual void emf2(const Grid&, double, CornerField&) const {} // 2-D
  virtual void emf3(const Grid&, double, EdgeField&) const {}   // 3-D
};

struct StepStats {
  double dt = 0.0;
  double max_signal = 0.0;   // max |u| + c + c_A seen by the CFL bound
  double d_visc = 0.0;       // dissipation increments of this step
  double d_res = 0.0;
  double d_fric = 0.0;
  int cg_visc_iters = 0;
  int cg_res_iters = 0;
};

Problem build_problem(int dim, double L, int n, double R_inner, double R_outer,
                      double transition_cells, Scenario sc, double eps,
                      const FluidCoefficients& fc, const EosParams& eos,
                      const SolverParams& sp, double plateau_margin_factor = 2.0);

// Largest stable time step: cfl * h / max(|u| + c + c_A), clamped to
// [dt_min, dt_max]; throws numeric_error if the bound collapses below dt_min.
double cfl_dt(const Problem& pb, const State& s);

// Make div(mu_f H) vanish (to max |div| <= proj_tol * ||mu H||_inf / h) by a
// mu-weighted gradient correction H <- H - grad phi; curl H is unchanged.
struct ProjectionInfo {
  int iters = 0;
  double div_before = 0.0; // max-norm, relative to ||mu H||_inf / h
  double div_after = 0.0;
};
ProjectionInfo project_div_muH(const Problem& pb, FaceField& H);

// Initial data builders. Velocity is a stream-function (vector-potential)
// curl supported strictly inside the fluid annulus; the magnetic field is a
// curl supported in the inner-solid-plus-fluid ball, then projected so
// div(mu H) = 0 for the actual mu of the scenario.
enum class InitMode { Annulus, Zero, UniformH };
struct InitParams {
  InitMode mode = InitMode::Annulus;
  double rho0 = 1.0;
  double velocity_amplitude = 0.1;
  double field_amplitude = 0.1;
};
State make_initial_state(const Problem& pb, const InitParams& ip);

// Advance one step of size dt. Throws numeric_error on negative density or a
// failed implicit solve.
StepStats step(const Problem& pb, State& s, double dt, const Forcing* forcing = nullptr);

// Run until time T. The observer sees the state after every step together
// with that step's stats; recording cadence is the caller's business.
using StepObserver = std::function<void(const State&, const StepStats&)>;
void run(const Problem& pb, State& s, double T, const Forcing* forcing = nullptr,
         const StepObserver& observer = {});

// Dissipation quadratures (also used by the energy certifier): evaluated with
// the post-solve fields, they underestimate the true discrete energy drop of
// the corresponding implicit substep, so budget accounting stays one-sided.
double viscous_dissipation(const Problem& pb, const FaceField& u);
double resistive_dissipation(const Problem& pb, const FaceField& H);

namespace detail {
// Internals shared by the 2-D/3-D step kernels (solver_step2d/3d.cpp).
struct StageDeriv {
  CellField drho;
  FaceField dm;
  FaceField dB;
};
void explicit_rhs_2d(const Problem& pb, const CellField& rho, const FaceField& m,
                     const FaceField& B, double t, const Forcing* forcing, StageDeriv& out,
                     double* max_signal);
void explicit_rhs_3d(const Problem& pb, const CellField& rho, const FaceField& m,
                     const FaceField& B, double t, const Forcing* forcing, StageDeriv& out,
                     double* max_signal);
void implicit_viscous_2d(const Problem& pb, const CellField& rho, FaceField& m, double dt,
                         StepStats& st);
void implicit_viscous_3d(const Problem& pb, const CellField& rho, FaceField& m, double dt,
                         StepStats& st);
void implicit_resistive_2d(const Problem& pb, FaceField& B, FaceField& H, double dt,
                           StepStats& st);
void implicit_resistive_3d(const Problem& pb, FaceField& B, FaceField& H, double dt,
                           StepStats& st);
} // namespace detail

} // namespace penmhd
