// Weak-form residual certifier (2-D).
//
// A run is sampled into equispaced snapshots; each integral identity of the
// model (continuity, renormalized continuity, momentum, induction) and each
// singular-limit induction identity is then evaluated by midpoint quadrature
// in space and trapezoid quadrature in time, for every member of the
// matching analytic test-function family and at every stored snapshot time
// (the identities hold for all intermediate times, and checking only the
// final one would let accidental cancellations at a single endpoint mask or
// exaggerate the true residual). The reported number per identity is the
// worst member-and-time residual, normalized by the identity's largest
// realized term; for the singular-limit identities the scale is additionally
// guarded below by the Cauchy-Schwarz size of the state-test pairing, so the
// structurally cancelling members of their constrained families stay
// meaningful.
//
// The limit identities use the sharp region-wise limit coefficients (not the
// mollified penalized ones) and the constrained families:
//   isolator        whole torus, test curl vanishing on the exterior
//   PMC             ball only, compact-support (fluid bump) tests
//   PEC             ball only, unconstrained smooth tests
//   isolator-type   ball only, compact-support tests
#pragma once

#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "solver.hpp"
#include "testfuncs.hpp"

namespace penmhd {

struct Snapshot {
  double t = 0.0;
  CellField rho;
  FaceField m;
  FaceField H;
};

struct SnapshotSeries {
  std::vector<Snapshot> snaps;
};

// Advance `s` to time T, storing `intervals`+1 equispaced snapshots
// (including the initial and final states). The observer, if given, sees
// every step (use it to feed a DiagnosticsCollector).
SnapshotSeries collect_snapshots(const Problem& pb, State& s, double T, int intervals,
                                 const Forcing* forcing = nullptr,
                                 const StepObserver& observer = {});

struct MemberResidual {
  std::string name;
  double residual = 0.0; // normalized
};

struct ResidualReport {
  std::string identity;
  double max_residual = 0.0;
  std::vector<MemberResidual> members;
};

// Primitive-system identities; `forcing` must be the same source terms the
// run used (nullptr for unforced runs).
ResidualReport weak_residual_continuity(const Problem& pb, const SnapshotSeries& ss,
                                        const Forcing* forcing);
ResidualReport weak_residual_renormalized(const Problem& pb, const SnapshotSeries& ss,
                                          const Forcing* forcing);
ResidualReport weak_residual_momentum(const Problem& pb, const SnapshotSeries& ss,
                                      const Forcing* forcing);
ResidualReport weak_residual_induction(const Problem& pb, const SnapshotSeries& ss,
                                       const Forcing* forcing);

enum class LimitForm { Isolator, Pmc, Pec, IsolatorType };
LimitForm limit_form_for(Scenario sc); // throws for the unpenalized scenario

ResidualReport limit_residual(const Problem& pb, const SnapshotSeries& ss, LimitForm form);

// All four primitive identities (order: continuity, renormalized, momentum,
// induction).
std::vector<ResidualReport> certify_primitive(const Problem& pb, const SnapshotSeries& ss,
                                              const Forcing* forcing);

} // namespace penmhd
