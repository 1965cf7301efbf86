#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fields.hpp"
#include "operators.hpp"

namespace penmhd {

namespace {

CellField random_cell(const Grid& g, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CellField f(g.count());
  for (auto& v : f) v = u(rng);
  return f;
}

FaceField random_face(const Grid& g, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FaceField f = g.make_vec();
  for (int d = 0; d < g.dim; ++d)
    for (auto& v : f[d]) v = u(rng);
  return f;
}

double rel(double err, double scale) { return err / std::max(scale, 1e-300); }

// max error of grad/div/curl against analytic derivatives of trig fields
std::array<double, 3> truncation_errors(int n) {
  const double k = std::numbers::pi;
  Grid g = build_grid(2, 1.0, n);
  CellField phi(g.count());
  FaceField F = g.make_vec();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const std::size_t q = g.idx(i, j);
      const auto c = g.cell_center(i, j);
      phi[q] = std::sin(k * c[0]) * std::cos(k * c[1]);
      const auto px = g.face_pos(0, i, j);
      const auto py = g.face_pos(1, i, j);
      F[0][q] = std::sin(k * px[0]) * std::sin(k * px[1]);
      F[1][q] = std::cos(k * py[0]) * std::cos(2 * k * py[1]);
    }
  const FaceField gr = grad(g, phi);
  const CellField dv = div(g, F);
  const CornerField cu = curl2_vec(g, F);
  double e_grad = 0.0, e_div = 0.0, e_curl = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const std::size_t q = g.idx(i, j);
      const auto px = g.face_pos(0, i, j);
      const auto py = g.face_pos(1, i, j);
      e_grad =
          std::max(e_grad, std::fabs(gr[0][q] - k * std::cos(k * px[0]) * std::cos(k * px[1])));
      e_grad =
          std::max(e_grad, std::fabs(gr[1][q] + k * std::sin(k * py[0]) * std::sin(k * py[1])));
      const auto c = g.cell_center(i, j);
      const double dvx = k * std::cos(k * c[0]) * std::sin(k * c[1]);
      const double dvy = -2 * k * std::cos(k * c[0]) * std::sin(2 * k * c[1]);
      e_div = std::max(e_div, std::fabs(dv[q] - (dvx + dvy)));
      const auto x = g.corner_pos(i, j);
      const double cuz = -k * std::sin(k * x[0]) * std::cos(2 * k * x[1]) // d Fy / dx
                         - k * std::sin(k * x[0]) * std::cos(k * x[1]);   // -d Fx / dy
      e_curl = std::max(e_curl, std::fabs(cu[q] - cuz));
    }
  return {e_grad, e_div, e_curl};
}

} // namespace

double OperatorReport::identity_worst() const {
  return std::max({div_curl_max, curl_grad_max, adj_grad_div_max, adj_curl_max, adj_stress_max});
}

OperatorReport verify_operator_suite(int dim, int n_identity, int identity_fields, int trunc_n,
                                     int gaffney_fields, unsigned seed) {
  OperatorReport rep;
  rep.dim = dim;
  rep.identity_fields = identity_fields;
  rep.trunc_n = trunc_n;
  Grid g = build_grid(dim, 1.0, n_identity);
  std::mt19937 rng(seed);

  for (int rep_i = 0; rep_i < identity_fields; ++rep_i) {
    // grad / -div adjointness
    {
      const CellField phi = random_cell(g, rng);
      const FaceField F = random_face(g, rng);
      const double lhs = vec_dot(grad(g, phi), F, g.dim);
      const double rhs = -kdot(phi, div(g, F));
      rep.adj_grad_div_max = std::max(
          rep.adj_grad_div_max, rel(std::fabs(lhs - rhs), std::fabs(lhs) + std::fabs(rhs)));
    }
    // curl pair adjointness, div o curl, curl o grad
    if (dim == 2) {
      const FaceField F = random_face(g, rng);
      const CornerField psi = random_cell(g, rng);
      const double lhs = kdot(curl2_vec(g, F), psi);
      const double rhs = vec_dot(F, curl2_scal(g, psi), 2);
      rep.adj_curl_max =
          std::max(rep.adj_curl_max, rel(std::fabs(lhs - rhs), std::fabs(lhs) + std::fabs(rhs)));

      const FaceField cpsi = curl2_scal(g, psi);
      rep.div_curl_max = std::max(
          rep.div_curl_max, rel(max_abs(div(g, cpsi)), vec_max_abs(cpsi, 2) / g.h));

      const CellField phi = random_cell(g, rng);
      const FaceField gphi = grad(g, phi);
      rep.curl_grad_max = std::max(
          rep.curl_grad_max, rel(max_abs(curl2_vec(g, gphi)), vec_max_abs(gphi, 2) / g.h));
    } else {
      const FaceField F = random_face(g, rng);
      const EdgeField E = random_face(g, rng);
      const double lhs = vec_dot(curl3_face_to_edge(g, F), E, 3);
      const double rhs = vec_dot(F, curl3_edge_to_face(g, E), 3);
      rep.adj_curl_max =
          std::max(rep.adj_curl_max, rel(std::fabs(lhs - rhs), std::fabs(lhs) + std::fabs(rhs)));

      const FaceField cf = curl3_edge_to_face(g, E);
      rep.div_curl_max =
          std::max(rep.div_curl_max, rel(max_abs(div(g, cf)), vec_max_abs(cf, 3) / g.h));

      const CellField phi = random_cell(g, rng);
      const FaceField gphi = grad(g, phi);
      const EdgeField cg = curl3_face_to_edge(g, gphi);
      const double gs = vec_max_abs(gphi, 3) / g.h;
      for (int d = 0; d < 3; ++d)
        rep.curl_grad_max = std::max(rep.curl_grad_max, rel(max_abs(cg[d]), gs));
    }
    // sym_grad / div_stress adjointness
    {
      const FaceField u = random_face(g, rng);
      const SymGradField D = sym_grad(g, u);
      const CellField s11 = random_cell(g, rng), s22 = random_cell(g, rng);
      const CellField s33 = dim == 3 ? random_cell(g, rng) : CellField();
      const CornerField off2 = dim == 2 ? random_cell(g, rng) : CornerField();
      EdgeField off3;
      if (dim == 3) off3 = random_face(g, rng);
      const FaceField dv = div_stress(g, s11, s22, s33, off2, off3);
      const double lhs = vec_dot(dv, u, g.dim);
      double rhs = -(kdot(s11, D.d11) + kdot(s22, D.d22));
      if (dim == 2) rhs -= 2.0 * kdot(off2, D.off2);
      if (dim == 3) {
        rhs -= kdot(s33, D.d33);
        for (int d = 0; d < 3; ++d) rhs -= 2.0 * kdot(off3[d], D.off3[d]);
      }
      rep.adj_stress_max = std::max(rep.adj_stress_max,
                                    rel(std::fabs(lhs - rhs), std::fabs(lhs) + std::fabs(rhs)));
    }
  }

  const auto coarse = truncation_errors(trunc_n);
  const auto fine = truncation_errors(2 * trunc_n);
  rep.trunc_order_grad = std::log2(coarse[0] / fine[0]);
  rep.trunc_order_div = std::log2(coarse[1] / fine[1]);
  rep.trunc_order_curl = std::log2(coarse[2] / fine[2]);

  rep.gaffney = gaffney_over_random_fields(g, gaffney_fields, seed + 1);
  return rep;
}

} // namespace penmhd
