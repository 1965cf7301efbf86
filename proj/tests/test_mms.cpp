#include <doctest.h>

#include <cmath>

#include "mms.hpp"
#include "operators.hpp"

using namespace penmhd;

TEST_CASE("forcing balances the semi-discrete residual of the exact solution") {
  // independent check of the generated source terms: with negligible nu and
  // eta (whose operators live in the implicit substeps, not in the explicit
  // RHS) the explicit RHS evaluated at the exact fields plus forcing must
  // equal the analytic time derivative of the exact fields up to O(h^2).
  EosParams eos{1.4, 1.0};
  FluidCoefficients fc;
  fc.nu_F = 1e-10;
  fc.eta_F = 1e-10;
  fc.lambda_F = 0.0;
  SolverParams sp;
  Problem pb = build_problem(2, 1.0, 192, 0.3, 0.7, 4.0, Scenario::None, 1.0, fc, eos, sp);
  const Grid& g = pb.grid;
  const double t = 0.37;

  CellField rho(g.count());
  FaceField m = g.make_vec(), B = g.make_vec();
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      const std::size_t q = g.idx(i, j);
      const auto c = g.cell_center(i, j);
      rho[q] = mms::rho_exact(c[0], c[1], t);
      const auto px = g.face_pos(0, i, j);
      const auto py = g.face_pos(1, i, j);
      m[0][q] = mms::rho_exact(px[0], px[1], t) * mms::ux_exact(px[0], px[1], t);
      m[1][q] = mms::rho_exact(py[0], py[1], t) * mms::uy_exact(py[0], py[1], t);
      B[0][q] = mms::Hx_exact(px[0], px[1], t); // mu = 1, so B = H
      B[1][q] = mms::Hy_exact(py[0], py[1], t);
    }

  MmsForcing forcing(eos, fc);
  detail::StageDeriv k;
  double sig = 0.0;
  detail::explicit_rhs_2d(pb, rho, m, B, t, &forcing, k, &sig);

  // analytic time derivatives via a centered difference in t (step 1e-6 makes
  // its own error ~1e-13, far below the O(h^2) spatial residual under test)
  const double dtau = 1e-6;
  double err_rho = 0.0, err_m = 0.0, err_B = 0.0;
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      const std::size_t q = g.idx(i, j);
      const auto c = g.cell_center(i, j);
      const double drho_dt = (mms::rho_exact(c[0], c[1], t + dtau) -
                              mms::rho_exact(c[0], c[1], t - dtau)) /
                             (2 * dtau);
      err_rho = std::max(err_rho, std::fabs(k.drho[q] - drho_dt));
      const auto px = g.face_pos(0, i, j);
      const auto py = g.face_pos(1, i, j);
      auto mx = [&](double tau) {
        return mms::rho_exact(px[0], px[1], tau) * mms::ux_exact(px[0], px[1], tau);
      };
      auto my = [&](double tau) {
        return mms::rho_exact(py[0], py[1], tau) * mms::uy_exact(py[0], py[1], tau);
      };
      err_m = std::max(err_m, std::fabs(k.dm[0][q] - (mx(t + dtau) - mx(t - dtau)) / (2 * dtau)));
      err_m = std::max(err_m, std::fabs(k.dm[1][q] - (my(t + dtau) - my(t - dtau)) / (2 * dtau)));
      auto bx = [&](double tau) { return mms::Hx_exact(px[0], px[1], tau); };
      auto by = [&](double tau) { return mms::Hy_exact(py[0], py[1], tau); };
      err_B = std::max(err_B, std::fabs(k.dB[0][q] - (bx(t + dtau) - bx(t - dtau)) / (2 * dtau)));
      err_B = std::max(err_B, std::fabs(k.dB[1][q] - (by(t + dtau) - by(t - dtau)) / (2 * dtau)));
    }
  CHECK(err_rho < 1e-3);
  CHECK(err_m < 5e-3);
  CHECK(err_B < 5e-3);
}

TEST_CASE("manufactured solution converges at second order") {
  EosParams eos{1.4, 1.0};
  FluidCoefficients fc;
  MmsOrders o = mms_convergence(32, 0.2, eos, fc);
  CHECK(o.order_rho > 1.8);
  CHECK(o.order_m > 1.8);
  CHECK(o.order_H > 1.8);
  // errors at the coarse level are small in absolute terms too
  CHECK(o.coarse.rho < 1e-2);
  CHECK(o.coarse.m < 1e-2);
  CHECK(o.coarse.H < 1e-2);
}
