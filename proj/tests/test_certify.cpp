#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "certify.hpp"
#include "errors.hpp"
#include "mms.hpp"
#include "operators.hpp"

using namespace penmhd;

namespace {

Problem default_problem(Scenario sc, double eps, int n) {
  FluidCoefficients fc;
  EosParams eos{1.4, 1.0};
  SolverParams sp;
  return build_problem(2, 1.0, n, 0.3, 0.7, 4.0, sc, eps, fc, eos, sp);
}

SnapshotSeries static_series(const State& s, double T, int k) {
  SnapshotSeries ss;
  for (int j = 0; j <= k; ++j) ss.snaps.push_back({T * j / k, s.rho, s.m, s.H});
  return ss;
}

State zero_state(const Grid& g) {
  State s;
  s.rho.assign(g.count(), 0.0);
  s.m = g.make_vec();
  s.H = g.make_vec();
  return s;
}

double fd_partial(const std::function<double(const Point&)>& f, Point p, int d) {
  const double del = 1e-6;
  Point a = p, b = p;
  a[d] += del;
  b[d] -= del;
  return (f(a) - f(b)) / (2 * del);
}

// points with radii well inside (0.42, 0.58), clear of the bump window joins
const std::vector<Point> kInsidePts = {{0.30, 0.35, 0.0},
                                       {-0.36, 0.28, 0.0},
                                       {0.10, -0.50, 0.0},
                                       {-0.40, -0.30, 0.0},
                                       {0.52, 0.05, 0.0}};
const std::vector<Point> kOutsidePts = {{0.10, 0.10, 0.0}, {0.60, 0.50, 0.0}};

void check_vector_derivatives(const VectorTest& v, const std::vector<Point>& pts) {
  for (const Point& p : pts) {
    const auto G = v.grad(p);
    for (int i = 0; i < 2; ++i)
      for (int d = 0; d < 2; ++d) {
        const double fd = fd_partial([&](const Point& q) { return v.phi(q)[i]; }, p, d);
        CHECK(std::fabs(G[i][d] - fd) < 1e-5 * (1.0 + std::fabs(fd)));
      }
    const double fd_curl = fd_partial([&](const Point& q) { return v.phi(q)[1]; }, p, 0) -
                           fd_partial([&](const Point& q) { return v.phi(q)[0]; }, p, 1);
    CHECK(std::fabs(v.curl(p)[2] - fd_curl) < 1e-5 * (1.0 + std::fabs(fd_curl)));
  }
}

struct MmsSeries {
  Problem pb;
  SnapshotSeries ss;
};

MmsSeries run_mms_series(int n, double T) {
  FluidCoefficients fc;
  EosParams eos{1.4, 1.0};
  SolverParams sp;
  const double h = 2.0 / n;
  sp.dt_max = 2.0 * h * h;
  Problem pb = build_problem(2, 1.0, n, 0.3, 0.7, 4.0, Scenario::None, 1.0, fc, eos, sp);
  const Grid& g = pb.grid;

  State s;
  s.rho.assign(g.count(), 0.0);
  s.m = g.make_vec();
  CornerField psi(g.count());
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      const std::size_t q = g.idx(i, j);
      const auto c = g.cell_center(i, j);
      s.rho[q] = mms::rho_exact(c[0], c[1], 0.0);
      const auto px = g.face_pos(0, i, j);
      const auto py = g.face_pos(1, i, j);
      s.m[0][q] = mms::rho_exact(px[0], px[1], 0.0) * mms::ux_exact(px[0], px[1], 0.0);
      s.m[1][q] = mms::rho_exact(py[0], py[1], 0.0) * mms::uy_exact(py[0], py[1], 0.0);
      const auto pc = g.corner_pos(i, j);
      psi[q] = mms::psi_exact(pc[0], pc[1], 0.0);
    }
  s.H = curl2_scal(g, psi);

  MmsForcing forcing(eos, fc);
  SnapshotSeries ss = collect_snapshots(pb, s, T, n / 4, &forcing);
  return {std::move(pb), std::move(ss)};
}

} // namespace

TEST_CASE("identically zero data satisfies every identity exactly") {
  // n = 64 is the coarsest grid whose fluid plateau can host the compactly
  // supported test functions with the default geometry
  Problem pb = default_problem(Scenario::Pec, 0.01, 64);
  const SnapshotSeries ss = static_series(zero_state(pb.grid), 0.5, 4);
  for (const auto& rep : certify_primitive(pb, ss, nullptr)) {
    CHECK(rep.max_residual == 0.0);
    CHECK(!rep.members.empty());
  }
  for (LimitForm f : {LimitForm::Isolator, LimitForm::Pmc, LimitForm::Pec,
                      LimitForm::IsolatorType})
    CHECK(limit_residual(pb, ss, f).max_residual == 0.0);
}

TEST_CASE("snapshot collection hits the requested times") {
  Problem pb = default_problem(Scenario::Pec, 0.05, 64);
  InitParams ip;
  State s = make_initial_state(pb, ip);
  const CellField rho0 = s.rho;
  const SnapshotSeries ss = collect_snapshots(pb, s, 0.02, 2);
  REQUIRE(ss.snaps.size() == 3);
  CHECK(ss.snaps[0].t == 0.0);
  CHECK(std::fabs(ss.snaps[1].t - 0.01) < 1e-12);
  CHECK(std::fabs(ss.snaps[2].t - 0.02) < 1e-12);
  CHECK(ss.snaps[0].rho == rho0); // the initial state itself, bitwise

  // the constant test function reduces the continuity identity to exact mass
  // conservation of the finite-volume update
  const ResidualReport rep = weak_residual_continuity(pb, ss, nullptr);
  bool found = false;
  for (const auto& m : rep.members)
    if (m.name == "one") {
      found = true;
      CHECK(m.residual < 1e-12);
    }
  CHECK(found);
}

TEST_CASE("analytic gradients and curls of every family agree with finite differences") {
  for (const auto& st : scalar_trig_family(1.0))
    for (const Point& p : kInsidePts) {
      const Point gphi = st.grad(p);
      for (int d = 0; d < 2; ++d) {
        const double fd = fd_partial(st.phi, p, d);
        CHECK(std::fabs(gphi[d] - fd) < 1e-5 * (1.0 + std::fabs(fd)));
      }
    }
  for (VectorFamily f : {VectorFamily::TorusTrig, VectorFamily::FluidBump,
                         VectorFamily::CurlFreeExt, VectorFamily::Closure})
    for (const auto& v : vector_family(f, 1.0, 0.4, 0.6)) {
      CAPTURE(v.name);
      check_vector_derivatives(v, kInsidePts);
    }
}

TEST_CASE("fluid bumps vanish with their derivatives outside the support annulus") {
  for (const auto& v : vector_family(VectorFamily::FluidBump, 1.0, 0.4, 0.6))
    for (const Point& p : kOutsidePts) {
      CAPTURE(v.name);
      const Point val = v.phi(p);
      CHECK(val[0] == 0.0);
      CHECK(val[1] == 0.0);
      const auto G = v.grad(p);
      for (int i = 0; i < 2; ++i)
        for (int d = 0; d < 2; ++d) CHECK(G[i][d] == 0.0);
      CHECK(v.curl(p)[2] == 0.0);
    }
}

TEST_CASE("the exterior-constrained family is curl-free on exterior cell centers") {
  Problem pb = default_problem(Scenario::Isolator, 0.01, 64);
  const Grid& g = pb.grid;
  const double w = pb.regions.band_width;
  const double r_lo = pb.regions.R_inner + 0.5 * w + 2 * g.h;
  const double r_hi = pb.regions.R_outer - 0.5 * w - 2 * g.h;
  for (const auto& v : vector_family(VectorFamily::CurlFreeExt, g.L, r_lo, r_hi)) {
    CAPTURE(v.name);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        if (pb.regions.label[g.idx(i, j)] != Region::Exterior) continue;
        worst = std::max(worst, std::fabs(v.curl(g.cell_center(i, j))[2]));
      }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("weak residuals of the forced manufactured run decay at second order") {
  const double T = 0.08;
  const MmsSeries coarse = run_mms_series(64, T);
  const MmsSeries fine = run_mms_series(128, T);
  FluidCoefficients fc;
  EosParams eos{1.4, 1.0};
  const MmsForcing forcing(eos, fc);

  const auto rc = certify_primitive(coarse.pb, coarse.ss, &forcing);
  const auto rf = certify_primitive(fine.pb, fine.ss, &forcing);
  REQUIRE(rc.size() == 4);
  REQUIRE(rf.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CAPTURE(rc[i].identity);
    REQUIRE(rf[i].max_residual > 0.0);
    CHECK(rc[i].max_residual < 0.5);
    const double order = std::log2(rc[i].max_residual / rf[i].max_residual);
    CHECK(order > 1.8);
  }
}

TEST_CASE("limit-identity residuals evaluate finitely on a penalized run") {
  CHECK(limit_form_for(Scenario::Isolator) == LimitForm::Isolator);
  CHECK(limit_form_for(Scenario::Pmc) == LimitForm::Pmc);
  CHECK(limit_form_for(Scenario::Pec) == LimitForm::Pec);
  CHECK(limit_form_for(Scenario::IsolatorType) == LimitForm::IsolatorType);
  CHECK_THROWS_AS(limit_form_for(Scenario::None), config_error);

  Problem pb = default_problem(Scenario::Pec, 0.01, 64);
  InitParams ip;
  State s = make_initial_state(pb, ip);
  const SnapshotSeries ss = collect_snapshots(pb, s, 0.03, 4);
  for (LimitForm f : {LimitForm::Isolator, LimitForm::Pmc, LimitForm::Pec,
                      LimitForm::IsolatorType}) {
    const ResidualReport rep = limit_residual(pb, ss, f);
    CHECK(!rep.members.empty());
    CHECK(std::isfinite(rep.max_residual));
    CHECK(rep.max_residual >= 0.0);
  }
}
