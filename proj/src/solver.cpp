#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "operators.hpp"

namespace penmhd {

Problem build_problem(int dim, double L, int n, double R_inner, double R_outer,
                      double transition_cells, Scenario sc, double eps,
                      const FluidCoefficients& fc, const EosParams& eos,
                      const SolverParams& sp, double plateau_margin_factor) {
  if (!(eos.gamma > 0.5 * dim))
    throw config_error("gamma must exceed dim/2 for the energy estimates to close");
  if (!(eos.a > 0.0)) throw config_error("pressure constant a must be positive");
  if (!(sp.cfl > 0.0 && sp.cfl < 1.0)) throw config_error("cfl must lie in (0,1)");
  if (transition_cells < 2.0) throw config_error("transition band must span at least 2 cells");

  Problem pb;
  pb.grid = build_grid(dim, L, n);
  const double w = transition_cells * pb.grid.h;
  pb.regions = classify_regions(pb.grid, R_inner, R_outer, w, plateau_margin_factor * w);
  pb.scenario = sc;
  pb.epsilon = eps;
  pb.set = schedule(sc, eps, dim, fc);
  pb.coef = build_coefficient_field(pb.grid, pb.regions, pb.set);
  pb.eos = eos;
  pb.sp = sp;
  return pb;
}

namespace {

void check_density(const CellField& rho) {
  for (double r : rho)
    if (r < 0.0)
      throw numeric_error("negative density produced by the transport stage; reduce cfl or dt_max");
}

double max_signal_speed(const Problem& pb, const State& s) {
  const Grid& g = pb.grid;
  double smax = 0.0;
  const int nz = g.dim == 3 ? g.n : 1;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        double u2 = 0.0, h2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
          const std::size_t qp = d == 0 ? g.idx(i + 1, j, k)
                                        : (d == 1 ? g.idx(i, j + 1, k) : g.idx(i, j, k + 1));
          const double mc = 0.5 * (s.m[d][q] + s.m[d][qp]);
          const double hc = 0.5 * (s.H[d][q] + s.H[d][qp]);
          u2 += mc * mc;
          h2 += hc * hc;
        }
        const double rho_safe = std::max(s.rho[q], 1e-10);
        const double uu = std::sqrt(u2) / rho_safe;
        const double c = sound_speed(s.rho[q], pb.eos);
        const double ca = std::sqrt(pb.coef.mu_c[q] * h2 / rho_safe);
        smax = std::max(smax, uu + c + ca);
      }
  return smax;
}

} // namespace

double cfl_dt(const Problem& pb, const State& s) {
  const double smax = max_signal_speed(pb, s);
  double dt = pb.sp.dt_max;
  if (smax > 0.0) dt = std::min(dt, pb.sp.cfl * pb.grid.h / smax);
  if (dt < pb.sp.dt_min)
    throw numeric_error("stable time step fell below dt_min (signal speed " +
                        std::to_string(smax) + ")");
  return dt;
}

ProjectionInfo project_div_muH(const Problem& pb, FaceField& H) {
  const Grid& g = pb.grid;
  FaceField B = g.make_vec();
  for (int d = 0; d < g.dim; ++d)
    for (std::size_t q = 0; q < B[d].size(); ++q) B[d][q] = pb.coef.mu_f[d][q] * H[d][q];

  const double scale = std::max(vec_max_abs(B, g.dim), 1e-300) / g.h;
  CellField dv = div(g, B);

  ProjectionInfo info;
  info.div_before = max_abs(dv) / scale;
  const double target_abs = pb.sp.proj_tol * scale;
  if (max_abs(dv) <= target_abs) {
    info.div_after = info.div_before;
    return info;
  }

  // Solve -div(mu grad phi) = -div(mu H) on mean-free data, correct
  // H <- H - grad phi. The CG residual *is* the remaining divergence.
  CellField b(g.count());
  const double mean = ksum(dv) / static_cast<double>(g.count());
  for (std::size_t q = 0; q < b.size(); ++q) b[q] = -(dv[q] - mean);

  auto apply = [&](CellField& out, const CellField& phi) {
    FaceField gp = grad(g, phi);
    for (int d = 0; d < g.dim; ++d)
      for (std::size_t q = 0; q < gp[d].size(); ++q) gp[d][q] *= pb.coef.mu_f[d][q];
    out = div(g, gp);
    for (auto& v : out) v = -v;
  };

  CellField diag(g.count());
  {
    const double ih2 = 1.0 / (g.h * g.h);
    const int nz = g.dim == 3 ? g.n : 1;
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
          const std::size_t q = g.idx(i, j, k);
          double dsum = pb.coef.mu_f[0][q] + pb.coef.mu_f[0][g.idx(i + 1, j, k)] +
                        pb.coef.mu_f[1][q] + pb.coef.mu_f[1][g.idx(i, j + 1, k)];
          if (g.dim == 3) dsum += pb.coef.mu_f[2][q] + pb.coef.mu_f[2][g.idx(i, j, k + 1)];
          diag[q] = dsum * ih2;
        }
  }

  CellField phi(g.count(), 0.0);
  const double bnorm = std::sqrt(ksum_sq(b));
  const double rel_tol = target_abs / std::max(bnorm, 1e-300);
  CgResult cg = pcg<CellField>(1, apply, b, phi, diag,
                               std::min(rel_tol, 0.1), pb.sp.proj_maxit, "projection");
  info.iters = cg.iters;

  const FaceField gp = grad(g, phi);
  for (int d = 0; d < g.dim; ++d)
    for (std::size_t q = 0; q < H[d].size(); ++q) {
      H[d][q] -= gp[d][q];
      B[d][q] = pb.coef.mu_f[d][q] * H[d][q];
    }
  info.div_after = max_abs(div(g, B)) / scale;
  if (info.div_after > pb.sp.proj_tol * 10.0)
    throw numeric_error("projection finished but div(mu H) is still " +
                        std::to_string(info.div_after) + " relative");
  return info;
}

namespace {

// C^1 window: sin^2 ramp over [a,b], zero outside.
double annulus_window(double r, double a, double b, double amp) {
  if (r <= a || r >= b) return 0.0;
  const double s = std::sin(std::numbers::pi * (r - a) / (b - a));
  return amp * s * s;
}

// C^1 bump on [0, r1]: 1 at the center, 0 with zero slope at r1.
double ball_window(double r, double r1) {
  if (r >= r1) return 0.0;
  const double c = std::cos(0.5 * std::numbers::pi * r / r1);
  return c * c;
}

} // namespace

State make_initial_state(const Problem& pb, const InitParams& ip) {
  const Grid& g = pb.grid;
  if (!(ip.rho0 > 0.0)) throw config_error("initial density must be positive");
  State s;
  s.rho.assign(g.count(), ip.rho0);
  s.m = g.make_vec();
  s.H = g.make_vec();
  if (ip.mode == InitMode::Zero) return s;

  if (ip.mode == InitMode::UniformH) {
    for (auto& v : s.H[0]) v = ip.field_amplitude;
    for (auto& v : s.H[1]) v = -0.5 * ip.field_amplitude;
    if (g.dim == 3)
      for (auto& v : s.H[2]) v = 0.25 * ip.field_amplitude;
    project_div_muH(pb, s.H);
    return s;
  }

  const double w = pb.regions.band_width;
  const double a_u = pb.regions.R_inner > 0.0 ? pb.regions.R_inner + 0.5 * w + 2 * g.h : 0.0;
  const double b_u = pb.regions.R_outer - 0.5 * w - 2 * g.h;
  if (!(b_u > a_u + 4 * g.h))
    throw config_error("fluid annulus too thin to host the initial velocity bump");
  const double r_h = pb.regions.R_outer - 0.5 * w - 2 * g.h;

  auto radius = [&](const std::array<double, 3>& p) {
    double r2 = p[0] * p[0] + p[1] * p[1];
    if (g.dim == 3) r2 += p[2] * p[2];
    return std::sqrt(r2);
  };
  auto modulation = [&](const std::array<double, 3>& p) {
    const double k = std::numbers::pi / g.L;
    return 1.0 + 0.5 * std::sin(k * p[0]) * std::sin(k * p[1]);
  };

  if (g.dim == 2) {
    CornerField chi = g.make_corner();
    CornerField psi = g.make_corner();
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const auto p = g.corner_pos(i, j);
        const std::size_t q = g.idx(i, j);
        chi[q] = annulus_window(radius(p), a_u, b_u, ip.velocity_amplitude);
        psi[q] = ip.field_amplitude * ball_window(radius(p), r_h) * modulation(p);
      }
    const FaceField uc = curl2_scal(g, chi);
    s.H = curl2_scal(g, psi);
    for (int d = 0; d < 2; ++d)
      for (std::size_t q = 0; q < uc[d].size(); ++q) s.m[d][q] = ip.rho0 * uc[d][q];
  } else {
    EdgeField az = g.make_vec();
    EdgeField pz = g.make_vec();
    for (int k = 0; k < g.n; ++k)
      for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
          const auto p = g.edge_pos(2, i, j, k);
          const std::size_t q = g.idx(i, j, k);
          az[2][q] = annulus_window(radius(p), a_u, b_u, ip.velocity_amplitude);
          pz[2][q] = ip.field_amplitude * ball_window(radius(p), r_h) * modulation(p);
        }
    const FaceField uc = curl3_edge_to_face(g, az);
    s.H = curl3_edge_to_face(g, pz);
    for (int d = 0; d < 3; ++d)
      for (std::size_t q = 0; q < uc[d].size(); ++q) s.m[d][q] = ip.rho0 * uc[d][q];
  }
  project_div_muH(pb, s.H);
  return s;
}

StepStats step(const Problem& pb, State& s, double dt, const Forcing* forcing) {
  const Grid& g = pb.grid;
  StepStats st;
  st.dt = dt;

  FaceField B = g.make_vec();
  for (int d = 0; d < g.dim; ++d)
    for (std::size_t q = 0; q < B[d].size(); ++q) B[d][q] = pb.coef.mu_f[d][q] * s.H[d][q];

  // --- explicit Heun pass over transport + pressure + magnetic force + ideal CT
  detail::StageDeriv k1, k2;
  double sig1 = 0.0, sig2 = 0.0;
  if (g.dim == 2)
    detail::explicit_rhs_2d(pb, s.rho, s.m, B, s.t, forcing, k1, &sig1);
  else
    detail::explicit_rhs_3d(pb, s.rho, s.m, B, s.t, forcing, k1, &sig1);

  CellField rho1 = s.rho;
  FaceField m1 = s.m, B1 = B;
  for (std::size_t q = 0; q < rho1.size(); ++q) rho1[q] += dt * k1.drho[q];
  vec_axpy(m1, dt, k1.dm, g.dim);
  vec_axpy(B1, dt, k1.dB, g.dim);
  check_density(rho1);

  if (g.dim == 2)
    detail::explicit_rhs_2d(pb, rho1, m1, B1, s.t + dt, forcing, k2, &sig2);
  else
    detail::explicit_rhs_3d(pb, rho1, m1, B1, s.t + dt, forcing, k2, &sig2);
  st.max_signal = std::max(sig1, sig2);

  for (std::size_t q = 0; q < s.rho.size(); ++q)
    s.rho[q] = 0.5 * (s.rho[q] + rho1[q] + dt * k2.drho[q]);
  for (int d = 0; d < g.dim; ++d)
    for (std::size_t q = 0; q < s.m[d].size(); ++q) {
      s.m[d][q] = 0.5 * (s.m[d][q] + m1[d][q] + dt * k2.dm[d][q]);
      B[d][q] = 0.5 * (B[d][q] + B1[d][q] + dt * k2.dB[d][q]);
    }
  check_density(s.rho);

  // --- pointwise implicit friction
  {
    const FaceField rho_f = cell_to_faces(g, s.rho);
    const double vol = std::pow(g.h, g.dim);
    KahanSum fr;
    for (int d = 0; d < g.dim; ++d)
      for (std::size_t q = 0; q < s.m[d].size(); ++q) {
        const double beta = pb.coef.beta_f[d][q];
        if (beta == 0.0) continue;
        const double rf = std::max(rho_f[d][q], 1e-14);
        s.m[d][q] /= 1.0 + dt * beta / rf;
        const double u = s.m[d][q] / rf;
        fr.add(beta * u * u);
      }
    st.d_fric = dt * fr.value() * vol;
  }

  // --- implicit viscous and resistive solves
  if (g.dim == 2) {
    detail::implicit_viscous_2d(pb, s.rho, s.m, dt, st);
    detail::implicit_resistive_2d(pb, B, s.H, dt, st);
  } else {
    detail::implicit_viscous_3d(pb, s.rho, s.m, dt, st);
    detail::implicit_resistive_3d(pb, B, s.H, dt, st);
  }

  s.t += dt;
  return st;
}

void run(const Problem& pb, State& s, double T, const Forcing* forcing,
         const StepObserver& observer) {
  if (!(T > s.t)) return;
  const double tend = T;
  long steps = 0;
  while (s.t < tend - 1e-12 * std::max(1.0, tend)) {
    double dt = cfl_dt(pb, s);
    if (s.t + dt > tend) dt = tend - s.t;
    StepStats st = step(pb, s, dt, forcing);
    if (observer) observer(s, st);
    if (++steps > 100000000L) throw numeric_error("run: step count exploded");
  }
}

double viscous_dissipation(const Problem& pb, const FaceField& u) {
  const Grid& g = pb.grid;
  const SymGradField D = sym_grad(g, u);
  const double vol = std::pow(g.h, g.dim);
  KahanSum acc;
  for (std::size_t q = 0; q < D.d11.size(); ++q) {
    const double tr = D.d11[q] + D.d22[q] + (g.dim == 3 ? D.d33[q] : 0.0);
    double dd = D.d11[q] * D.d11[q] + D.d22[q] * D.d22[q];
    if (g.dim == 3) dd += D.d33[q] * D.d33[q];
    acc.add(2.0 * pb.coef.nu_c[q] * dd +
            (pb.coef.lambda_c[q] - 2.0 * pb.coef.nu_c[q] / g.dim) * tr * tr);
  }
  if (g.dim == 2) {
    for (std::size_t q = 0; q < D.off2.size(); ++q)
      acc.add(4.0 * pb.coef.nu_x[q] * D.off2[q] * D.off2[q]);
  } else {
    for (int d = 0; d < 3; ++d)
      for (std::size_t q = 0; q < D.off3[d].size(); ++q)
        acc.add(4.0 * pb.coef.nu_e[d][q] * D.off3[d][q] * D.off3[d][q]);
  }
  return acc.value() * vol;
}

double resistive_dissipation(const Problem& pb, const FaceField& H) {
  const Grid& g = pb.grid;
  const double vol = std::pow(g.h, g.dim);
  KahanSum acc;
  if (g.dim == 2) {
    const CornerField j = curl2_vec(g, H);
    for (std::size_t q = 0; q < j.size(); ++q) acc.add(pb.coef.eta_x[q] * j[q] * j[q]);
  } else {
    const EdgeField j = curl3_face_to_edge(g, H);
    for (int d = 0; d < 3; ++d)
      for (std::size_t q = 0; q < j[d].size(); ++q) acc.add(pb.coef.eta_e[d][q] * j[d][q] * j[d][q]);
  }
  return acc.value() * vol;
}

} // namespace penmhd
