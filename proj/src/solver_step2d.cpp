// 2-D step kernels: explicit transport/pressure/Lorentz/ideal-CT right-hand
// side, implicit viscous solve, implicit resistive solve. Index arithmetic is
// hoisted (periodic neighbor tables) because the implicit matvecs run inside
// CG iterations.
#include <cmath>
#include <vector>

#include "errors.hpp"
#include "operators.hpp"
#include "solver.hpp"

namespace penmhd::detail {

namespace {

struct Wrap {
  std::vector<int> prv, nxt;
  explicit Wrap(int n) : prv(n), nxt(n) {
    for (int i = 0; i < n; ++i) {
      prv[i] = (i + n - 1) % n;
      nxt[i] = (i + 1) % n;
    }
  }
};

inline double minmod_free_slope(double qm, double qp) { return 0.5 * (qp - qm); }

} // namespace

void explicit_rhs_2d(const Problem& pb, const CellField& rho, const FaceField& m,
                     const FaceField& B, double t, const Forcing* forcing, StageDeriv& out,
                     double* max_signal) {
  const Grid& g = pb.grid;
  const int n = g.n;
  const double ih = 1.0 / g.h;
  const Wrap w(n);

  out.drho.assign(g.count(), 0.0);
  out.dm = g.make_vec();
  out.dB = g.make_vec();

  // face densities, velocities, H, cell speeds, pressure
  static thread_local std::vector<double> rf0, rf1, u0, u1, h0, h1, p, cw, jz;
  const std::size_t N = g.count();
  rf0.assign(N, 0.0);
  rf1.assign(N, 0.0);
  u0.assign(N, 0.0);
  u1.assign(N, 0.0);
  h0.assign(N, 0.0);
  h1.assign(N, 0.0);
  p.assign(N, 0.0);
  cw.assign(N, 0.0);
  jz.assign(N, 0.0);

  for (int j = 0; j < n; ++j) {
    const int row = j * n, rjm = w.prv[j] * n;
    for (int i = 0; i < n; ++i) {
      const int q = row + i, qim = row + w.prv[i], qjm = rjm + i;
      rf0[q] = 0.5 * (rho[qim] + rho[q]);
      rf1[q] = 0.5 * (rho[qjm] + rho[q]);
      if (rho[q] < 0.0) throw numeric_error("negative density entering the transport stage");
    }
  }
  for (std::size_t q = 0; q < N; ++q) {
    if (rf0[q] <= 1e-14) {
      if (std::fabs(m[0][q]) > 0.0) throw numeric_error("momentum on a vacuum x-face");
    } else
      u0[q] = m[0][q] / rf0[q];
    if (rf1[q] <= 1e-14) {
      if (std::fabs(m[1][q]) > 0.0) throw numeric_error("momentum on a vacuum y-face");
    } else
      u1[q] = m[1][q] / rf1[q];
    h0[q] = B[0][q] / pb.coef.mu_f[0][q];
    h1[q] = B[1][q] / pb.coef.mu_f[1][q];
  }
  // cell signal speed c + c_A and pressure
  for (int j = 0; j < n; ++j) {
    const int row = j * n, rjp = w.nxt[j] * n;
    for (int i = 0; i < n; ++i) {
      const int q = row + i, qip = row + w.nxt[i], qjp = rjp + i;
      p[q] = pressure(rho[q], pb.eos);
      const double hx = 0.5 * (h0[q] + h0[qip]);
      const double hy = 0.5 * (h1[q] + h1[qjp]);
      const double rho_safe = std::max(rho[q], 1e-10);
      cw[q] = sound_speed(rho[q], pb.eos) +
              std::sqrt(pb.coef.mu_c[q] * (hx * hx + hy * hy) / rho_safe);
    }
  }
  // corner current of H (not B): j = dHy/dx - dHx/dy
  for (int j = 0; j < n; ++j) {
    const int row = j * n, rjm = w.prv[j] * n;
    for (int i = 0; i < n; ++i) {
      const int q = row + i, qim = row + w.prv[i], qjm = rjm + i;
      jz[q] = (h1[q] - h1[qim]) * ih - (h0[q] - h0[qjm]) * ih;
    }
  }

  // slopes (unlimited central): density and both momentum components, both directions
  static thread_local std::vector<double> srx, sry, sxx, sxy, syx, syy;
  srx.assign(N, 0.0);
  sry.assign(N, 0.0);
  sxx.assign(N, 0.0);
  sxy.assign(N, 0.0);
  syx.assign(N, 0.0);
  syy.assign(N, 0.0);
  for (int j = 0; j < n; ++j) {
    const int row = j * n, rjm = w.prv[j] * n, rjp = w.nxt[j] * n;
    for (int i = 0; i < n; ++i) {
      const int q = row + i, qim = row + w.prv[i], qip = row + w.nxt[i];
      const int qjm = rjm + i, qjp = rjp + i;
      srx[q] = minmod_free_slope(rho[qim], rho[qip]);
      sry[q] = minmod_free_slope(rho[qjm], rho[qjp]);
      sxx[q] = minmod_free_slope(m[0][qim], m[0][qip]);
      sxy[q] = minmod_free_slope(m[0][qjm], m[0][qjp]);
      syx[q] = minmod_free_slope(m[1][qim], m[1][qip]);
      syy[q] = minmod_free_slope(m[1][qjm], m[1][qjp]);
    }
  }

  // Rusanov fluxes with reconstructed states
  static thread_local std::vector<double> frx, fry, fxx, gxy, fyy, gyx, emf;
  frx.assign(N, 0.0);
  fry.assign(N, 0.0);
  fxx.assign(N, 0.0);
  gxy.assign(N, 0.0);
  fyy.assign(N, 0.0);
  gyx.assign(N, 0.0);
  emf.assign(N, 0.0);

  double sig = 0.0;
  for (int j = 0; j < n; ++j) {
    const int row = j * n, rjm = w.prv[j] * n, rjp = w.nxt[j] * n;
    for (int i = 0; i < n; ++i) {
      const int q = row + i;
      const int qim = row + w.prv[i], qip = row + w.nxt[i];
      const int qjm = rjm + i, qjp = rjp + i;
      const int qimjm = rjm + w.prv[i];

      // mass flux through the two faces indexed by q
      {
        const double uf = u0[q];
        const double qL = rho[qim] + 0.5 * srx[qim], qR = rho[q] - 0.5 * srx[q];
        const double al = std::fabs(uf) + std::max(cw[qim], cw[q]);
        frx[q] = uf * 0.5 * (qL + qR) - 0.5 * al * (qR - qL);
        sig = std::max(sig, al);
      }
      {
        const double vf = u1[q];
        const double qL = rho[qjm] + 0.5 * sry[qjm], qR = rho[q] - 0.5 * sry[q];
        const double al = std::fabs(vf) + std::max(cw[qjm], cw[q]);
        fry[q] = vf * 0.5 * (qL + qR) - 0.5 * al * (qR - qL);
      }
      // x-momentum: x-flux at cell q, y-flux at corner q
      {
        const double ub = 0.5 * (u0[q] + u0[qip]);
        const double qL = m[0][q] + 0.5 * sxx[q], qR = m[0][qip] - 0.5 * sxx[qip];
        const double al = std::fabs(ub) + cw[q];
        fxx[q] = ub * 0.5 * (qL + qR) - 0.5 * al * (qR - qL);
      }
      {
        const double vb = 0.5 * (u1[qim] + u1[q]);
        const double qL = m[0][qjm] + 0.5 * sxy[qjm], qR = m[0][q] - 0.5 * sxy[q];
        const double al = std::fabs(vb) +
                          std::max(std::max(cw[qimjm], cw[qjm]), std::max(cw[qim], cw[q]));
        gxy[q] = vb * 0.5 * (qL + qR) - 0.5 * al * (qR - qL);
      }
      // y-momentum: y-flux at cell q, x-flux at corner q
      {
        const double vb = 0.5 * (u1[q] + u1[qjp]);
        const double qL = m[1][q] + 0.5 * syy[q], qR = m[1][qjp] - 0.5 * syy[qjp];
        const double al = std::fabs(vb) + cw[q];
        fyy[q] = vb * 0.5 * (qL + qR) - 0.5 * al * (qR - qL);
      }
      {
        const double ub = 0.5 * (u0[qjm] + u0[q]);
        const double qL = m[1][qim] + 0.5 * syx[qim], qR = m[1][q] - 0.5 * syx[q];
        const double al = std::fabs(ub) +
                          std::max(std::max(cw[qimjm], cw[qjm]), std::max(cw[qim], cw[q]));
        gyx[q] = ub * 0.5 * (qL + qR) - 0.5 * al * (qR - qL);
      }
      // ideal EMF at corner q: -(u x B)_z from face averages
      {
        const double ux = 0.5 * (u0[qjm] + u0[q]);
        const double bx = 0.5 * (B[0][qjm] + B[0][q]);
        const double uy = 0.5 * (u1[qim] + u1[q]);
        const double by = 0.5 * (B[1][qim] + B[1][q]);
        emf[q] = uy * bx - ux * by;
      }
    }
  }
  if (max_signal) *max_signal = sig;

  // optional manufactured sources
  static thread_local CellField f_rho;
  static thread_local FaceField f_m;
  static thread_local CornerField f_emf;
  const bool forced = forcing != nullptr;
  if (forced) {
    f_rho.assign(N, 0.0);
    f_m = g.make_vec();
    f_emf.assign(N, 0.0);
    forcing->continuity(g, t, f_rho);
    forcing->momentum(g, t, f_m);
    forcing->emf2(g, t, f_emf);
    for (std::size_t q = 0; q < N; ++q) emf[q] -= f_emf[q];
  }

  // assemble derivatives
  for (int j = 0; j < n; ++j) {
    const int row = j * n, rjm = w.prv[j] * n, rjp = w.nxt[j] * n;
    for (int i = 0; i < n; ++i) {
      const int q = row + i;
      const int qim = row + w.prv[i], qip = row + w.nxt[i];
      const int qjm = rjm + i, qjp = rjp + i;

      out.drho[q] = -((frx[qip] - frx[q]) + (fry[qjp] - fry[q])) * ih;

      // magnetic force curl H x (mu H) averaged to faces
      const double jbar_x = 0.5 * (jz[q] + jz[qjp]);
      const double by4 = 0.25 * (B[1][qim] + B[1][q] + B[1][rjp + w.prv[i]] + B[1][qjp]);
      const double jbar_y = 0.5 * (jz[q] + jz[qip]);
      const double bx4 = 0.25 * (B[0][qjm] + B[0][rjm + w.nxt[i]] + B[0][q] + B[0][qip]);

      out.dm[0][q] = -((fxx[q] - fxx[qim]) + (gxy[qjp] - gxy[q])) * ih - (p[q] - p[qim]) * ih -
                     jbar_x * by4;
      out.dm[1][q] = -((fyy[q] - fyy[qjm]) + (gyx[qip] - gyx[q])) * ih - (p[q] - p[qjm]) * ih +
                     jbar_y * bx4;

      // dB = -curl(e): exact discrete curl keeps div(mu H) frozen
      out.dB[0][q] = -(emf[qjp] - emf[q]) * ih;
      out.dB[1][q] = (emf[qip] - emf[q]) * ih;

      if (forced) {
        out.drho[q] += f_rho[q];
        out.dm[0][q] += f_m[0][q];
        out.dm[1][q] += f_m[1][q];
      }
    }
  }
}

void implicit_viscous_2d(const Problem& pb, const CellField& rho, FaceField& m, double dt,
                         StepStats& st) {
  const Grid& g = pb.grid;
  const int n = g.n;
  const double ih = 1.0 / g.h, ih2 = ih * ih;
  const Wrap w(n);
  const std::size_t N = g.count();

  FaceField rho_f = cell_to_faces(g, rho);
  // initial guess: current velocity
  FaceField u = g.make_vec();
  for (int d = 0; d < 2; ++d)
    for (std::size_t q = 0; q < N; ++q) {
      if (rho_f[d][q] <= 1e-14) {
        if (std::fabs(m[d][q]) > 0.0) throw numeric_error("momentum on a vacuum face");
        u[d][q] = 0.0;
      } else
        u[d][q] = m[d][q] / rho_f[d][q];
    }

  // cell-wise stress coefficients: S11 = cd D11 + cl D22, S22 = cl D11 + cd D22
  std::vector<double> cd(N), cl(N);
  for (std::size_t q = 0; q < N; ++q) {
    cl[q] = pb.coef.lambda_c[q] - pb.coef.nu_c[q]; // lambda - 2 nu / d, d = 2
    cd[q] = 2.0 * pb.coef.nu_c[q] + cl[q];
  }

  std::vector<double> s11(N), s22(N), s12(N);
  auto apply = [&](FaceField& out, const FaceField& v) {
    for (int j = 0; j < n; ++j) {
      const int row = j * n, rjm = w.prv[j] * n, rjp = w.nxt[j] * n;
      for (int i = 0; i < n; ++i) {
        const int q = row + i, qim = row + w.prv[i], qip = row + w.nxt[i];
        const int qjm = rjm + i;
        const double d11 = (v[0][qip] - v[0][q]) * ih;
        const double d22 = (v[1][rjp + i] - v[1][q]) * ih;
        s11[q] = cd[q] * d11 + cl[q] * d22;
        s22[q] = cl[q] * d11 + cd[q] * d22;
        const double d12 = 0.5 * ((v[0][q] - v[0][qjm]) * ih + (v[1][q] - v[1][qim]) * ih);
        s12[q] = 2.0 * pb.coef.nu_x[q] * d12;
      }
    }
    for (int j = 0; j < n; ++j) {
      const int row = j * n, rjm = w.prv[j] * n, rjp = w.nxt[j] * n;
      for (int i = 0; i < n; ++i) {
        const int q = row + i, qim = row + w.prv[i], qip = row + w.nxt[i];
        const int qjm = rjm + i, qjp = rjp + i;
        out[0][q] = rho_f[0][q] * v[0][q] -
                    dt * ((s11[q] - s11[qim]) * ih + (s12[qjp] - s12[q]) * ih);
        out[1][q] = rho_f[1][q] * v[1][q] -
                    dt * ((s22[q] - s22[qjm]) * ih + (s12[qip] - s12[q]) * ih);
      }
    }
  };

  FaceField diag = g.make_vec();
  for (int j = 0; j < n; ++j) {
    const int row = j * n, rjm = w.prv[j] * n, rjp = w.nxt[j] * n;
    for (int i = 0; i < n; ++i) {
      const int q = row + i, qim = row + w.prv[i], qip = row + w.nxt[i];
      const int qjm = rjm + i, qjp = rjp + i;
      diag[0][q] = rho_f[0][q] +
                   dt * ih2 * (cd[q] + cd[qim] + pb.coef.nu_x[q] + pb.coef.nu_x[qjp]);
      diag[1][q] = rho_f[1][q] +
                   dt * ih2 * (cd[q] + cd[qjm] + pb.coef.nu_x[q] + pb.coef.nu_x[qip]);
    }
  }

  CgResult cg = pcg<FaceField>(2, apply, m, u, diag, pb.sp.cg_tol, pb.sp.cg_maxit, "viscous solve");
  st.cg_visc_iters = cg.iters;

  for (int d = 0; d < 2; ++d)
    for (std::size_t q = 0; q < N; ++q) m[d][q] = rho_f[d][q] * u[d][q];
  st.d_visc = dt * viscous_dissipation(pb, u);
}

void implicit_resistive_2d(const Problem& pb, FaceField& B, FaceField& H, double dt,
                           StepStats& st) {
  const Grid& g = pb.grid;
  const int n = g.n;
  const double ih = 1.0 / g.h, ih2 = ih * ih;
  const Wrap w(n);
  const std::size_t N = g.count();

  // current H consistent with the post-transport B
  for (std::size_t q = 0; q < N; ++q) {
    H[0][q] = B[0][q] / pb.coef.mu_f[0][q];
    H[1][q] = B[1][q] / pb.coef.mu_f[1][q];
  }

  std::vector<double> jc(N);
  auto apply = [&](FaceField& out, const FaceField& v) {
    for (int j = 0; j < n; ++j) {
      const int row = j * n, rjm = w.prv[j] * n;
      for (int i = 0; i < n; ++i) {
        const int q = row + i, qim = row + w.prv[i], qjm = rjm + i;
        jc[q] = pb.coef.eta_x[q] * ((v[1][q] - v[1][qim]) * ih - (v[0][q] - v[0][qjm]) * ih);
      }
    }
    for (int j = 0; j < n; ++j) {
      const int row = j * n, rjp = w.nxt[j] * n;
      for (int i = 0; i < n; ++i) {
        const int q = row + i, qip = row + w.nxt[i], qjp = rjp + i;
        out[0][q] = pb.coef.mu_f[0][q] * v[0][q] + dt * (jc[qjp] - jc[q]) * ih;
        out[1][q] = pb.coef.mu_f[1][q] * v[1][q] - dt * (jc[qip] - jc[q]) * ih;
      }
    }
  };

  FaceField diag = g.make_vec();
  for (int j = 0; j < n; ++j) {
    const int row = j * n, rjp = w.nxt[j] * n;
    for (int i = 0; i < n; ++i) {
      const int q = row + i, qip = row + w.nxt[i], qjp = rjp + i;
      diag[0][q] = pb.coef.mu_f[0][q] + dt * ih2 * (pb.coef.eta_x[q] + pb.coef.eta_x[qjp]);
      diag[1][q] = pb.coef.mu_f[1][q] + dt * ih2 * (pb.coef.eta_x[q] + pb.coef.eta_x[qip]);
    }
  }

  FaceField sol = H; // warm start
  CgResult cg = pcg<FaceField>(2, apply, B, sol, diag, pb.sp.cg_tol, pb.sp.cg_maxit,
                               "resistive solve");
  st.cg_res_iters = cg.iters;

  // apply as an exact curl of the resistive EMF; div(mu H) untouched
  const double vol = g.h * g.h;
  KahanSum diss;
  for (int j = 0; j < n; ++j) {
    const int row = j * n, rjm = w.prv[j] * n;
    for (int i = 0; i < n; ++i) {
      const int q = row + i, qim = row + w.prv[i], qjm = rjm + i;
      const double cur = (sol[1][q] - sol[1][qim]) * ih - (sol[0][q] - sol[0][qjm]) * ih;
      jc[q] = pb.coef.eta_x[q] * cur;
      diss.add(jc[q] * cur);
    }
  }
  st.d_res = dt * diss.value() * vol;
  for (int j = 0; j < n; ++j) {
    const int row = j * n, rjp = w.nxt[j] * n;
    for (int i = 0; i < n; ++i) {
      const int q = row + i, qip = row + w.nxt[i], qjp = rjp + i;
      B[0][q] -= dt * (jc[qjp] - jc[q]) * ih;
      B[1][q] += dt * (jc[qip] - jc[q]) * ih;
    }
  }
  for (std::size_t q = 0; q < N; ++q) {
    H[0][q] = B[0][q] / pb.coef.mu_f[0][q];
    H[1][q] = B[1][q] / pb.coef.mu_f[1][q];
  }
}

} // namespace penmhd::detail
