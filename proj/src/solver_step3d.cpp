// 3-D step kernels, same splitting as the 2-D ones: momentum control volumes
// put cross-fluxes on edges, the EMF lives on edges (Yee), viscous off-diagonal
// stresses live on edges. 3-D runs stay at modest resolutions, so these use
// the plain Grid::idx indexing.
#include <cmath>
#include <vector>

#include "errors.hpp"
#include "operators.hpp"
#include "solver.hpp"

namespace penmhd::detail {

namespace {

inline double slope(double qm, double qp) { return 0.5 * (qp - qm); }

inline double rusanov(double vel, double qL, double qR, double alpha) {
  return vel * 0.5 * (qL + qR) - 0.5 * alpha * (qR - qL);
}

} // namespace

void explicit_rhs_3d(const Problem& pb, const CellField& rho, const FaceField& m,
                     const FaceField& B, double t, const Forcing* forcing, StageDeriv& out,
                     double* max_signal) {
  const Grid& g = pb.grid;
  const int n = g.n;
  const double ih = 1.0 / g.h;
  const std::size_t N = g.count();

  out.drho.assign(N, 0.0);
  out.dm = g.make_vec();
  out.dB = g.make_vec();

  FaceField rho_f = cell_to_faces(g, rho);
  FaceField u = g.make_vec(), H = g.make_vec();
  for (int d = 0; d < 3; ++d)
    for (std::size_t q = 0; q < N; ++q) {
      if (rho_f[d][q] <= 1e-14) {
        if (std::fabs(m[d][q]) > 0.0) throw numeric_error("momentum on a vacuum face");
      } else
        u[d][q] = m[d][q] / rho_f[d][q];
      H[d][q] = B[d][q] / pb.coef.mu_f[d][q];
    }

  CellField p(N), cw(N);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        if (rho[q] < 0.0) throw numeric_error("negative density entering the transport stage");
        p[q] = pressure(rho[q], pb.eos);
        double h2 = 0.0;
        h2 += 0.25 * std::pow(H[0][q] + H[0][g.idx(i + 1, j, k)], 2);
        h2 += 0.25 * std::pow(H[1][q] + H[1][g.idx(i, j + 1, k)], 2);
        h2 += 0.25 * std::pow(H[2][q] + H[2][g.idx(i, j, k + 1)], 2);
        const double rho_safe = std::max(rho[q], 1e-10);
        cw[q] = sound_speed(rho[q], pb.eos) + std::sqrt(pb.coef.mu_c[q] * h2 / rho_safe);
      }

  const EdgeField j_e = curl3_face_to_edge(g, H);

  double sig = 0.0;
  // mass fluxes on faces
  FaceField fr = g.make_vec();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        const std::size_t qm[3] = {g.idx(i - 1, j, k), g.idx(i, j - 1, k), g.idx(i, j, k - 1)};
        for (int d = 0; d < 3; ++d) {
          // central slope of rho along d in the two neighbor cells
          std::size_t qmm, qp;
          if (d == 0) { qmm = g.idx(i - 2, j, k); qp = g.idx(i + 1, j, k); }
          else if (d == 1) { qmm = g.idx(i, j - 2, k); qp = g.idx(i, j + 1, k); }
          else { qmm = g.idx(i, j, k - 2); qp = g.idx(i, j, k + 1); }
          const double sL = slope(rho[qmm], rho[q]);
          const double sR = slope(rho[qm[d]], rho[qp]);
          const double qL = rho[qm[d]] + 0.5 * sL, qR = rho[q] - 0.5 * sR;
          const double al = std::fabs(u[d][q]) + std::max(cw[qm[d]], cw[q]);
          fr[d][q] = rusanov(u[d][q], qL, qR, al);
          sig = std::max(sig, al);
        }
      }

  // momentum fluxes: along its own direction at cells, cross-fluxes on edges.
  // flux_self[d] at cells advances m[d]; cross[d][e] holds the e-direction
  // flux of m[d], stored on the edge along the remaining axis.
  std::array<CellField, 3> flux_self;
  // cross flux of component d in direction e (d != e), on edges along 3-d-e
  std::array<std::array<std::vector<double>, 3>, 3> cross;
  for (int d = 0; d < 3; ++d) {
    flux_self[d].assign(N, 0.0);
    for (int e = 0; e < 3; ++e)
      if (e != d) cross[d][e].assign(N, 0.0);
  }

  auto shift = [&](int i, int j, int k, int axis, int by) {
    int ii = i, jj = j, kk = k;
    if (axis == 0) ii += by;
    if (axis == 1) jj += by;
    if (axis == 2) kk += by;
    return g.idx(ii, jj, kk);
  };

  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        for (int d = 0; d < 3; ++d) {
          // self flux at cell q: between faces q and q+e_d
          {
            const std::size_t qp = shift(i, j, k, d, 1);
            const double ub = 0.5 * (u[d][q] + u[d][qp]);
            const double sL = slope(m[d][shift(i, j, k, d, -1)], m[d][qp]);
            const double sR = slope(m[d][q], m[d][shift(i, j, k, d, 2)]);
            const double qL = m[d][q] + 0.5 * sL, qR = m[d][qp] - 0.5 * sR;
            flux_self[d][q] = rusanov(ub, qL, qR, std::fabs(ub) + cw[q]);
          }
          // cross fluxes in directions e != d, stored on the shared edge
          for (int e = 0; e < 3; ++e) {
            if (e == d) continue;
            // edge point: integer in d and e, centered along the third axis;
            // advecting velocity: average of u[e] faces straddling in d
            const std::size_t qe_md = shift(i, j, k, d, -1);
            const double vb = 0.5 * (u[e][qe_md] + u[e][q]);
            const std::size_t q_me = shift(i, j, k, e, -1);
            const double sL = slope(m[d][shift(i, j, k, e, -2)], m[d][q]);
            const double sR = slope(m[d][q_me], m[d][shift(i, j, k, e, 1)]);
            const double qL = m[d][q_me] + 0.5 * sL, qR = m[d][q] - 0.5 * sR;
            const std::size_t c_both = g.idx(i - (d == 0 || e == 0 ? 1 : 0),
                                             j - (d == 1 || e == 1 ? 1 : 0),
                                             k - (d == 2 || e == 2 ? 1 : 0));
            const double al =
                std::fabs(vb) + std::max(std::max(cw[q], cw[qe_md]),
                                         std::max(cw[q_me], cw[c_both]));
            cross[d][e][q] = rusanov(vb, qL, qR, al);
          }
        }
      }

  // ideal EMF on edges: e = -(u x B) with two-face averages
  EdgeField emf = g.make_vec();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        const std::size_t qjm = g.idx(i, j - 1, k), qkm = g.idx(i, j, k - 1),
                          qim = g.idx(i - 1, j, k);
        // x-edge: uy,By averaged over z; uz,Bz averaged over y
        {
          const double uy = 0.5 * (u[1][qkm] + u[1][q]), by = 0.5 * (B[1][qkm] + B[1][q]);
          const double uz = 0.5 * (u[2][qjm] + u[2][q]), bz = 0.5 * (B[2][qjm] + B[2][q]);
          emf[0][q] = -(uy * bz - uz * by);
        }
        // y-edge: uz,Bz averaged over x; ux,Bx averaged over z
        {
          const double uz = 0.5 * (u[2][qim] + u[2][q]), bz = 0.5 * (B[2][qim] + B[2][q]);
          const double ux = 0.5 * (u[0][qkm] + u[0][q]), bx = 0.5 * (B[0][qkm] + B[0][q]);
          emf[1][q] = -(uz * bx - ux * bz);
        }
        // z-edge: ux,Bx averaged over y; uy,By averaged over x
        {
          const double ux = 0.5 * (u[0][qjm] + u[0][q]), bx = 0.5 * (B[0][qjm] + B[0][q]);
          const double uy = 0.5 * (u[1][qim] + u[1][q]), by = 0.5 * (B[1][qim] + B[1][q]);
          emf[2][q] = -(ux * by - uy * bx);
        }
      }

  if (forcing) {
    EdgeField f_emf = g.make_vec();
    forcing->emf3(g, t, f_emf);
    for (int d = 0; d < 3; ++d)
      for (std::size_t q = 0; q < N; ++q) emf[d][q] -= f_emf[d][q];
  }

  const FaceField curl_e = curl3_edge_to_face(g, emf);

  CellField f_rho;
  FaceField f_m;
  if (forcing) {
    f_rho.assign(N, 0.0);
    f_m = g.make_vec();
    forcing->continuity(g, t, f_rho);
    forcing->momentum(g, t, f_m);
  }

  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        out.drho[q] = -((fr[0][g.idx(i + 1, j, k)] - fr[0][q]) +
                        (fr[1][g.idx(i, j + 1, k)] - fr[1][q]) +
                        (fr[2][g.idx(i, j, k + 1)] - fr[2][q])) * ih;
        if (forcing) out.drho[q] += f_rho[q];

        for (int d = 0; d < 3; ++d) {
          const std::size_t q_md = shift(i, j, k, d, -1);
          double dm = -(flux_self[d][q] - flux_self[d][q_md]) * ih - (p[q] - p[q_md]) * ih;
          for (int e = 0; e < 3; ++e) {
            if (e == d) continue;
            dm -= (cross[d][e][shift(i, j, k, e, 1)] - cross[d][e][q]) * ih;
          }
          out.dm[d][q] = dm;
          out.dB[d][q] = -curl_e[d][q];
          if (forcing) out.dm[d][q] += f_m[d][q];
        }

        // magnetic force j x B at faces
        {
          const std::size_t qkp = g.idx(i, j, k + 1), qjp = g.idx(i, j + 1, k),
                            qip = g.idx(i + 1, j, k);
          const std::size_t qim = g.idx(i - 1, j, k), qjm = g.idx(i, j - 1, k),
                            qkm = g.idx(i, j, k - 1);
          // x-face
          {
            const double jy = 0.5 * (j_e[1][q] + j_e[1][qkp]);
            const double bz = 0.25 * (B[2][qim] + B[2][q] + B[2][g.idx(i - 1, j, k + 1)] + B[2][qkp]);
            const double jz = 0.5 * (j_e[2][q] + j_e[2][qjp]);
            const double by = 0.25 * (B[1][qim] + B[1][q] + B[1][g.idx(i - 1, j + 1, k)] + B[1][qjp]);
            out.dm[0][q] += jy * bz - jz * by;
          }
          // y-face
          {
            const double jz = 0.5 * (j_e[2][q] + j_e[2][qip]);
            const double bx = 0.25 * (B[0][qjm] + B[0][g.idx(i + 1, j - 1, k)] + B[0][q] + B[0][qip]);
            const double jx = 0.5 * (j_e[0][q] + j_e[0][qkp]);
            const double bz = 0.25 * (B[2][qjm] + B[2][q] + B[2][g.idx(i, j - 1, k + 1)] + B[2][qkp]);
            out.dm[1][q] += jz * bx - jx * bz;
          }
          // z-face
          {
            const double jx = 0.5 * (j_e[0][q] + j_e[0][qjp]);
            const double by = 0.25 * (B[1][qkm] + B[1][g.idx(i, j + 1, k - 1)] + B[1][q] + B[1][qjp]);
            const double jy = 0.5 * (j_e[1][q] + j_e[1][qip]);
            const double bx = 0.25 * (B[0][qkm] + B[0][g.idx(i + 1, j, k - 1)] + B[0][q] + B[0][qip]);
            out.dm[2][q] += jx * by - jy * bx;
          }
        }
      }
  if (max_signal) *max_signal = sig;
}

void implicit_viscous_3d(const Problem& pb, const CellField& rho, FaceField& m, double dt,
                         StepStats& st) {
  const Grid& g = pb.grid;
  const int n = g.n;
  const double ih = 1.0 / g.h, ih2 = ih * ih;
  const std::size_t N = g.count();

  FaceField rho_f = cell_to_faces(g, rho);
  FaceField u = g.make_vec();
  for (int d = 0; d < 3; ++d)
    for (std::size_t q = 0; q < N; ++q) {
      if (rho_f[d][q] <= 1e-14) {
        if (std::fabs(m[d][q]) > 0.0) throw numeric_error("momentum on a vacuum face");
      } else
        u[d][q] = m[d][q] / rho_f[d][q];
    }

  std::vector<double> cd(N), cl(N);
  for (std::size_t q = 0; q < N; ++q) {
    cl[q] = pb.coef.lambda_c[q] - 2.0 * pb.coef.nu_c[q] / 3.0;
    cd[q] = 2.0 * pb.coef.nu_c[q] + cl[q];
  }

  auto apply = [&](FaceField& out, const FaceField& v) {
    SymGradField D = sym_grad(g, v);
    CellField s11(N), s22(N), s33(N);
    EdgeField soff = g.make_vec();
    for (std::size_t q = 0; q < N; ++q) {
      const double tr = D.d11[q] + D.d22[q] + D.d33[q];
      s11[q] = 2.0 * pb.coef.nu_c[q] * D.d11[q] + cl[q] * tr;
      s22[q] = 2.0 * pb.coef.nu_c[q] * D.d22[q] + cl[q] * tr;
      s33[q] = 2.0 * pb.coef.nu_c[q] * D.d33[q] + cl[q] * tr;
      for (int d = 0; d < 3; ++d) soff[d][q] = 2.0 * pb.coef.nu_e[d][q] * D.off3[d][q];
    }
    const FaceField dv = div_stress(g, s11, s22, s33, CornerField(), soff);
    for (int d = 0; d < 3; ++d)
      for (std::size_t q = 0; q < N; ++q) out[d][q] = rho_f[d][q] * v[d][q] - dt * dv[d][q];
  };

  FaceField diag = g.make_vec();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        diag[0][q] = rho_f[0][q] + dt * ih2 * (cd[q] + cd[g.idx(i - 1, j, k)] +
                                               pb.coef.nu_e[2][q] + pb.coef.nu_e[2][g.idx(i, j + 1, k)] +
                                               pb.coef.nu_e[1][q] + pb.coef.nu_e[1][g.idx(i, j, k + 1)]);
        diag[1][q] = rho_f[1][q] + dt * ih2 * (cd[q] + cd[g.idx(i, j - 1, k)] +
                                               pb.coef.nu_e[2][q] + pb.coef.nu_e[2][g.idx(i + 1, j, k)] +
                                               pb.coef.nu_e[0][q] + pb.coef.nu_e[0][g.idx(i, j, k + 1)]);
        diag[2][q] = rho_f[2][q] + dt * ih2 * (cd[q] + cd[g.idx(i, j, k - 1)] +
                                               pb.coef.nu_e[1][q] + pb.coef.nu_e[1][g.idx(i + 1, j, k)] +
                                               pb.coef.nu_e[0][q] + pb.coef.nu_e[0][g.idx(i, j + 1, k)]);
      }

  CgResult cg = pcg<FaceField>(3, apply, m, u, diag, pb.sp.cg_tol, pb.sp.cg_maxit, "viscous solve");
  st.cg_visc_iters = cg.iters;
  for (int d = 0; d < 3; ++d)
    for (std::size_t q = 0; q < N; ++q) m[d][q] = rho_f[d][q] * u[d][q];
  st.d_visc = dt * viscous_dissipation(pb, u);
}

void implicit_resistive_3d(const Problem& pb, FaceField& B, FaceField& H, double dt,
                           StepStats& st) {
  const Grid& g = pb.grid;
  const int n = g.n;
  const double ih2 = 1.0 / (g.h * g.h);
  const std::size_t N = g.count();

  for (int d = 0; d < 3; ++d)
    for (std::size_t q = 0; q < N; ++q) H[d][q] = B[d][q] / pb.coef.mu_f[d][q];

  auto apply = [&](FaceField& out, const FaceField& v) {
    EdgeField j = curl3_face_to_edge(g, v);
    for (int d = 0; d < 3; ++d)
      for (std::size_t q = 0; q < N; ++q) j[d][q] *= pb.coef.eta_e[d][q];
    const FaceField c = curl3_edge_to_face(g, j);
    for (int d = 0; d < 3; ++d)
      for (std::size_t q = 0; q < N; ++q)
        out[d][q] = pb.coef.mu_f[d][q] * v[d][q] + dt * c[d][q];
  };

  FaceField diag = g.make_vec();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        diag[0][q] = pb.coef.mu_f[0][q] +
                     dt * ih2 * (pb.coef.eta_e[2][q] + pb.coef.eta_e[2][g.idx(i, j + 1, k)] +
                                 pb.coef.eta_e[1][q] + pb.coef.eta_e[1][g.idx(i, j, k + 1)]);
        diag[1][q] = pb.coef.mu_f[1][q] +
                     dt * ih2 * (pb.coef.eta_e[2][q] + pb.coef.eta_e[2][g.idx(i + 1, j, k)] +
                                 pb.coef.eta_e[0][q] + pb.coef.eta_e[0][g.idx(i, j, k + 1)]);
        diag[2][q] = pb.coef.mu_f[2][q] +
                     dt * ih2 * (pb.coef.eta_e[1][q] + pb.coef.eta_e[1][g.idx(i + 1, j, k)] +
                                 pb.coef.eta_e[0][q] + pb.coef.eta_e[0][g.idx(i, j + 1, k)]);
      }

  FaceField sol = H;
  CgResult cg = pcg<FaceField>(3, apply, B, sol, diag, pb.sp.cg_tol, pb.sp.cg_maxit,
                               "resistive solve");
  st.cg_res_iters = cg.iters;

  EdgeField j = curl3_face_to_edge(g, sol);
  const double vol = std::pow(g.h, 3);
  KahanSum diss;
  for (int d = 0; d < 3; ++d)
    for (std::size_t q = 0; q < N; ++q) {
      const double cur = j[d][q];
      j[d][q] *= pb.coef.eta_e[d][q];
      diss.add(j[d][q] * cur);
    }
  st.d_res = dt * diss.value() * vol;
  const FaceField c = curl3_edge_to_face(g, j);
  for (int d = 0; d < 3; ++d)
    for (std::size_t q = 0; q < N; ++q) {
      B[d][q] -= dt * c[d][q];
      H[d][q] = B[d][q] / pb.coef.mu_f[d][q];
    }
}

} // namespace penmhd::detail
