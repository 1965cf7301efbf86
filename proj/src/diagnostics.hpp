// Run diagnostics: energy/mass bookkeeping, boundary-trace norms on the outer
// interface, plateau-masked region norms, divergence monitor, Gaffney ratio,
// and the time-integrated quantities the sweep harness tabulates.
//
// Region norms deliberately exclude the mollifier transition bands (plateau
// masks): they stand in for norms on compact subsets of the open regions,
// which is where the singular-limit statements live.
#pragma once

#include <utility>
#include <vector>

#include "solver.hpp"

namespace penmhd {

// u = m / rho averaged to faces, floored away from vacuum.
FaceField face_velocity_of(const Problem& pb, const State& s);

// max |div(mu H)| relative to ||mu H||_inf / h (the constrained-transport
// invariant; also meaningful right after projection).
double rel_div_muH(const Problem& pb, const FaceField& H);

struct TraceNorms {
  double Hxn = 0.0;     // || H x n ||_{L2 of outer interface}
  double Hn = 0.0;      // || H . n ||
  double curlHxn = 0.0; // || curl H x n ||
  double curlHn = 0.0;  // || curl H . n ||  (identically 0 in 2-D)
};
TraceNorms trace_norms(const Problem& pb, const FaceField& H, const BoundarySamples& bs);

struct RegionNorms {
  double u_solid = 0.0;     // || u ||_{L2 of solid plateaus}
  double divu_solid = 0.0;  // || div u ||_{L2 of solid plateaus}
  double H_ext = 0.0;       // || H ||_{L2 of exterior plateau}
  double curlH_ext = 0.0;   // || curl H ||_{L2 of exterior plateau}
  double rho_drift_solid = 0.0; // || rho - rho0 ||_{L1 of solid plateaus}
};
RegionNorms region_norms(const Problem& pb, const State& s, const CellField& rho0);

struct DiagnosticsRecord {
  double time = 0.0;
  double dt = 0.0;
  long step = 0;
  double energy = 0.0;
  double mass = 0.0;
  double d_visc_acc = 0.0; // accumulated dissipation integrals up to this time
  double d_res_acc = 0.0;
  double d_fric_acc = 0.0;
  TraceNorms trace;
  RegionNorms region;
  double div_muH_rel = 0.0;
  double gaffney = 0.0;
};

// Quantities integrated in time over the whole run (every step, rectangle
// rule at the post-step state; deterministic fixed-order accumulation).
struct TimeIntegrals {
  double d_visc = 0.0;
  double d_res = 0.0;
  double d_fric = 0.0;
  double u2_solid = 0.0;   // integral of || u ||^2 over the solid plateaus
  double curlH2_ext = 0.0; // integral of || curl H ||^2 over the exterior plateau
  double Hn2_trace = 0.0;  // integral of || H . n ||^2 over the outer interface
};

// Observes a run step by step; call observe() after every step and record()
// whenever a CSV row is wanted (record(initial) gives the t = 0 row).
class DiagnosticsCollector {
public:
  DiagnosticsCollector(const Problem& pb, const State& initial);

  void observe(const State& s, const StepStats& st);
  void record(const State& s);

  const std::vector<DiagnosticsRecord>& records() const { return recs_; }
  const TimeIntegrals& integrals() const { return ints_; }
  const BoundarySamples& samples() const { return samples_; }

private:
  const Problem& pb_;
  BoundarySamples samples_;
  CellField rho0_;
  KahanSum d_visc_, d_res_, d_fric_, u2_solid_, curlH2_ext_, Hn2_trace_;
  TimeIntegrals ints_;
  std::vector<DiagnosticsRecord> recs_;
  long steps_ = 0;
  double last_dt_ = 0.0;
};

// max over records of [E(t) + D(t) - E(0)] / E(0); <= tol certifies the
// discrete energy inequality for the whole trajectory.
double energy_budget_residual(const std::vector<DiagnosticsRecord>& recs);

// Least-squares slope of log(value) against log(eps). Requires >= 3 pairs
// and strictly positive entries.
double estimate_rate(const std::vector<std::pair<double, double>>& pairs);

// Max Gaffney ratio over `count` random band-limited fields (curl part from a
// random low-mode potential plus a gradient part); deterministic in the seed.
struct GaffneyStats {
  double max_ratio = 0.0;
  int evaluated = 0;
};
GaffneyStats gaffney_over_random_fields(const Grid& g, int count, unsigned seed);

} // namespace penmhd
