#include "diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "errors.hpp"
#include "operators.hpp"

namespace penmhd {

FaceField face_velocity_of(const Problem& pb, const State& s) {
  const Grid& g = pb.grid;
  FaceField rho_f = cell_to_faces(g, s.rho);
  FaceField u = g.make_vec();
  for (int d = 0; d < g.dim; ++d)
    for (std::size_t q = 0; q < u[d].size(); ++q)
      u[d][q] = s.m[d][q] / std::max(rho_f[d][q], 1e-14);
  return u;
}

double rel_div_muH(const Problem& pb, const FaceField& H) {
  const Grid& g = pb.grid;
  FaceField B = g.make_vec();
  for (int d = 0; d < g.dim; ++d)
    for (std::size_t q = 0; q < B[d].size(); ++q) B[d][q] = pb.coef.mu_f[d][q] * H[d][q];
  const double bmax = vec_max_abs(B, g.dim);
  if (bmax == 0.0) return 0.0;
  return max_abs(div(g, B)) / (bmax / g.h);
}

namespace {

// Interpolated H and curl H at one boundary sample.
struct SampledField {
  std::array<double, 3> H{0.0, 0.0, 0.0};
  std::array<double, 3> J{0.0, 0.0, 0.0}; // curl H
};

SampledField sample_fields_2d(const Grid& g, const FaceField& H, const CornerField& jz,
                              const std::array<double, 3>& p) {
  SampledField s;
  s.H[0] = interp_at(g, H[0], face_offsets(0, 2), p);
  s.H[1] = interp_at(g, H[1], face_offsets(1, 2), p);
  s.J[2] = interp_at(g, jz, corner_offsets(), p);
  return s;
}

SampledField sample_fields_3d(const Grid& g, const FaceField& H, const EdgeField& J,
                              const std::array<double, 3>& p) {
  SampledField s;
  for (int d = 0; d < 3; ++d) {
    s.H[d] = interp_at(g, H[d], face_offsets(d, 3), p);
    s.J[d] = interp_at(g, J[d], edge_offsets(d), p);
  }
  return s;
}

std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm2sq(const std::array<double, 3>& a) { return dot3(a, a); }

} // namespace

TraceNorms trace_norms(const Problem& pb, const FaceField& H, const BoundarySamples& bs) {
  const Grid& g = pb.grid;
  TraceNorms tn;
  KahanSum hxn, hn, jxn, jn;
  if (g.dim == 2) {
    const CornerField jz = curl2_vec(g, H);
    for (std::size_t k = 0; k < bs.pos.size(); ++k) {
      const SampledField s = sample_fields_2d(g, H, jz, bs.pos[k]);
      const auto& n = bs.normal[k];
      const double tang = s.H[0] * n[1] - s.H[1] * n[0]; // (H x n)_z
      hxn.add(tang * tang);
      const double nor = s.H[0] * n[0] + s.H[1] * n[1];
      hn.add(nor * nor);
      // curl H = j e_z is orthogonal to the in-plane normal: curlH . n = 0,
      // and |curlH x n| = |j|.
      jxn.add(s.J[2] * s.J[2]);
    }
  } else {
    const EdgeField J = curl3_face_to_edge(g, H);
    for (std::size_t k = 0; k < bs.pos.size(); ++k) {
      const SampledField s = sample_fields_3d(g, H, J, bs.pos[k]);
      const auto& n = bs.normal[k];
      hxn.add(norm2sq(cross(s.H, n)));
      const double nor = dot3(s.H, n);
      hn.add(nor * nor);
      jxn.add(norm2sq(cross(s.J, n)));
      const double jnor = dot3(s.J, n);
      jn.add(jnor * jnor);
    }
  }
  tn.Hxn = std::sqrt(hxn.value() * bs.weight);
  tn.Hn = std::sqrt(hn.value() * bs.weight);
  tn.curlHxn = std::sqrt(jxn.value() * bs.weight);
  tn.curlHn = std::sqrt(jn.value() * bs.weight);
  return tn;
}

RegionNorms region_norms(const Problem& pb, const State& s, const CellField& rho0) {
  const Grid& g = pb.grid;
  RegionNorms rn;
  const FaceField u = face_velocity_of(pb, s);
  const CellField divu = div(g, u);

  // cell-centered |u|^2, |H|^2 by face averaging
  KahanSum u2, du2, h2, j2, drift;
  const double vol = std::pow(g.h, g.dim);

  // curl H averaged to cells
  CellField j2_cell(g.count(), 0.0);
  if (g.dim == 2) {
    const CornerField jz = curl2_vec(g, s.H);
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const double v = 0.25 * (jz[g.idx(i, j)] + jz[g.idx(i + 1, j)] + jz[g.idx(i, j + 1)] +
                                 jz[g.idx(i + 1, j + 1)]);
        j2_cell[g.idx(i, j)] = v * v;
      }
  } else {
    const EdgeField J = curl3_face_to_edge(g, s.H);
    for (int k = 0; k < g.n; ++k)
      for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
          const std::size_t q = g.idx(i, j, k);
          // edge component d is cell-centered along d, integer in the others:
          // average the four parallel edges bounding the cell.
          const double jx = 0.25 * (J[0][q] + J[0][g.idx(i, j + 1, k)] + J[0][g.idx(i, j, k + 1)] +
                                    J[0][g.idx(i, j + 1, k + 1)]);
          const double jy = 0.25 * (J[1][q] + J[1][g.idx(i + 1, j, k)] + J[1][g.idx(i, j, k + 1)] +
                                    J[1][g.idx(i + 1, j, k + 1)]);
          const double jz = 0.25 * (J[2][q] + J[2][g.idx(i + 1, j, k)] + J[2][g.idx(i, j + 1, k)] +
                                    J[2][g.idx(i + 1, j + 1, k)]);
          j2_cell[q] = jx * jx + jy * jy + jz * jz;
        }
  }

  const int nk = g.dim == 3 ? g.n : 1;
  for (int k = 0; k < nk; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        double uc2 = 0.0, hc2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
          const std::size_t qn = g.idx(i + (d == 0), j + (d == 1), k + (d == 2));
          const double uc = 0.5 * (u[d][q] + u[d][qn]);
          const double hc = 0.5 * (s.H[d][q] + s.H[d][qn]);
          uc2 += uc * uc;
          hc2 += hc * hc;
        }
        if (pb.regions.plateau_solid[q]) {
          u2.add(uc2);
          du2.add(divu[q] * divu[q]);
          drift.add(std::fabs(s.rho[q] - rho0[q]));
        }
        if (pb.regions.plateau_exterior[q]) {
          h2.add(hc2);
          j2.add(j2_cell[q]);
        }
      }
  rn.u_solid = std::sqrt(u2.value() * vol);
  rn.divu_solid = std::sqrt(du2.value() * vol);
  rn.H_ext = std::sqrt(h2.value() * vol);
  rn.curlH_ext = std::sqrt(j2.value() * vol);
  rn.rho_drift_solid = drift.value() * vol;
  return rn;
}

DiagnosticsCollector::DiagnosticsCollector(const Problem& pb, const State& initial)
    : pb_(pb), samples_(sample_interface(pb.grid, pb.regions.R_outer, pb.grid.h)),
      rho0_(initial.rho) {}

void DiagnosticsCollector::observe(const State& s, const StepStats& st) {
  ++steps_;
  last_dt_ = st.dt;
  d_visc_.add(st.d_visc);
  d_res_.add(st.d_res);
  d_fric_.add(st.d_fric);

  const RegionNorms rn = region_norms(pb_, s, rho0_);
  u2_solid_.add(st.dt * rn.u_solid * rn.u_solid);
  curlH2_ext_.add(st.dt * rn.curlH_ext * rn.curlH_ext);
  const TraceNorms tn = trace_norms(pb_, s.H, samples_);
  Hn2_trace_.add(st.dt * tn.Hn * tn.Hn);

  ints_.d_visc = d_visc_.value();
  ints_.d_res = d_res_.value();
  ints_.d_fric = d_fric_.value();
  ints_.u2_solid = u2_solid_.value();
  ints_.curlH2_ext = curlH2_ext_.value();
  ints_.Hn2_trace = Hn2_trace_.value();
}

void DiagnosticsCollector::record(const State& s) {
  DiagnosticsRecord r;
  r.time = s.t;
  r.dt = last_dt_;
  r.step = steps_;
  r.energy = total_energy(pb_.grid, s.rho, s.m, s.H, pb_.coef.mu_c, pb_.eos);
  r.mass = ksum(s.rho) * std::pow(pb_.grid.h, pb_.grid.dim);
  r.d_visc_acc = d_visc_.value();
  r.d_res_acc = d_res_.value();
  r.d_fric_acc = d_fric_.value();
  r.trace = trace_norms(pb_, s.H, samples_);
  r.region = region_norms(pb_, s, rho0_);
  r.div_muH_rel = rel_div_muH(pb_, s.H);
  r.gaffney = gaffney_ratio(pb_.grid, s.H).value_or(0.0);
  recs_.push_back(r);
}

double energy_budget_residual(const std::vector<DiagnosticsRecord>& recs) {
  if (recs.empty()) throw config_error("energy budget needs at least one record");
  const double e0 = recs.front().energy;
  if (!(e0 > 0.0)) throw numeric_error("energy budget needs positive initial energy");
  double worst = -1e300;
  for (const auto& r : recs) {
    const double d = r.d_visc_acc + r.d_res_acc + r.d_fric_acc;
    worst = std::max(worst, (r.energy + d - e0) / e0);
  }
  return worst;
}

double estimate_rate(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 3) throw config_error("rate estimate needs at least 3 points");
  KahanSum sx, sy;
  for (const auto& [e, v] : pairs) {
    if (!(e > 0.0) || !(v > 0.0))
      throw numeric_error("rate estimate needs strictly positive values");
    sx.add(std::log(e));
    sy.add(std::log(v));
  }
  const double mx = sx.value() / pairs.size();
  const double my = sy.value() / pairs.size();
  KahanSum sxx, sxy;
  for (const auto& [e, v] : pairs) {
    const double dx = std::log(e) - mx;
    sxx.add(dx * dx);
    sxy.add(dx * (std::log(v) - my));
  }
  if (sxx.value() == 0.0) throw config_error("rate estimate needs distinct abscissae");
  return sxy.value() / sxx.value();
}

GaffneyStats gaffney_over_random_fields(const Grid& g, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  const int kmax = 4;
  const double kappa = std::numbers::pi / g.L;
  GaffneyStats stats;

  for (int trial = 0; trial < count; ++trial) {
    // low-mode random potential (corner/edge) + random gradient part
    std::vector<std::array<double, 5>> modes; // kx, ky, a_ss, a_cc, gradient coef
    for (int kx = 0; kx <= kmax; ++kx)
      for (int ky = 0; ky <= kmax; ++ky) {
        if (kx == 0 && ky == 0) continue;
        modes.push_back({static_cast<double>(kx), static_cast<double>(ky), amp(rng), amp(rng),
                         amp(rng)});
      }
    auto scal = [&](const std::array<double, 3>& p, int which) {
      double v = 0.0;
      for (const auto& mo : modes) {
        const double cx = mo[0] * kappa, cy = mo[1] * kappa;
        const double a = which == 0 ? mo[2] : mo[4];
        const double b = which == 0 ? mo[3] : -mo[4];
        v += a * std::sin(cx * p[0]) * std::sin(cy * p[1]) +
             b * std::cos(cx * p[0]) * std::cos(cy * p[1]);
      }
      return v;
    };

    FaceField H;
    if (g.dim == 2) {
      CornerField psi(g.count());
      CellField chi(g.count());
      for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
          psi[g.idx(i, j)] = scal(g.corner_pos(i, j), 0);
          chi[g.idx(i, j)] = scal(g.cell_center(i, j), 1);
        }
      H = curl2_scal(g, psi);
      vec_axpy(H, 1.0, grad(g, chi), 2);
    } else {
      EdgeField A = g.make_vec();
      CellField chi(g.count());
      for (int k = 0; k < g.n; ++k)
        for (int j = 0; j < g.n; ++j)
          for (int i = 0; i < g.n; ++i) {
            const std::size_t q = g.idx(i, j, k);
            for (int d = 0; d < 3; ++d) A[d][q] = scal(g.edge_pos(d, i, j, k), 0);
            chi[q] = scal(g.cell_center(i, j, k), 1);
          }
      H = curl3_edge_to_face(g, A);
      vec_axpy(H, 1.0, grad(g, chi), 3);
    }
    const auto ratio = gaffney_ratio(g, H);
    if (!ratio.has_value() || !std::isfinite(*ratio))
      throw numeric_error("Gaffney ratio not finite on a random band-limited field");
    stats.max_ratio = std::max(stats.max_ratio, *ratio);
    ++stats.evaluated;
  }
  return stats;
}

} // namespace penmhd
