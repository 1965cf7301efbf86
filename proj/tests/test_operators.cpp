#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fields.hpp"
#include "operators.hpp"

using namespace penmhd;

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

} // namespace

TEST_CASE("grad and -div are adjoint (2-D and 3-D)") {
  for (int dim : {2, 3}) {
    Grid g = build_grid(dim, 1.0, dim == 2 ? 32 : 12);
    std::mt19937 rng(7 + dim);
    for (int rep = 0; rep < 5; ++rep) {
      CellField phi = random_cell(g, rng);
      FaceField F = random_face(g, rng);
      const double lhs = vec_dot(grad(g, phi), F, g.dim);
      const double rhs = -kdot(phi, div(g, F));
      CHECK(rel(std::fabs(lhs - rhs), std::fabs(lhs) + std::fabs(rhs)) < 1e-13);
    }
  }
}

TEST_CASE("2-D curl pair is adjoint and annihilates gradients") {
  Grid g = build_grid(2, 1.0, 48);
  std::mt19937 rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    FaceField F = random_face(g, rng);
    CornerField psi = random_cell(g, rng);
    const double lhs = kdot(curl2_vec(g, F), psi);
    const double rhs = vec_dot(F, curl2_scal(g, psi), 2);
    CHECK(rel(std::fabs(lhs - rhs), std::fabs(lhs) + std::fabs(rhs)) < 1e-13);

    // div curl = 0 and curl grad = 0 at the discrete level
    const CellField dc = div(g, curl2_scal(g, psi));
    const double curl_scale = vec_max_abs(curl2_scal(g, psi), 2) / g.h;
    CHECK(rel(max_abs(dc), curl_scale) < 1e-13);

    CellField phi = random_cell(g, rng);
    const CornerField cg = curl2_vec(g, grad(g, phi));
    const double grad_scale = vec_max_abs(grad(g, phi), 2) / g.h;
    CHECK(rel(max_abs(cg), grad_scale) < 1e-13);
  }
}

TEST_CASE("3-D Yee curls are adjoint and satisfy the exact identities") {
  Grid g = build_grid(3, 1.0, 12);
  std::mt19937 rng(13);
  for (int rep = 0; rep < 3; ++rep) {
    FaceField F = random_face(g, rng);
    EdgeField E = random_face(g, rng);
    const double lhs = vec_dot(curl3_face_to_edge(g, F), E, 3);
    const double rhs = vec_dot(F, curl3_edge_to_face(g, E), 3);
    CHECK(rel(std::fabs(lhs - rhs), std::fabs(lhs) + std::fabs(rhs)) < 1e-13);

    const FaceField cf = curl3_edge_to_face(g, E);
    const CellField dc = div(g, cf);
    CHECK(rel(max_abs(dc), vec_max_abs(cf, 3) / g.h) < 1e-13);

    CellField phi = random_cell(g, rng);
    const EdgeField cg = curl3_face_to_edge(g, grad(g, phi));
    const double grad_scale = vec_max_abs(grad(g, phi), 3) / g.h;
    for (int d = 0; d < 3; ++d) CHECK(rel(max_abs(cg[d]), grad_scale) < 1e-13);
  }
}

TEST_CASE("sym_grad and div_stress are negative adjoints") {
  for (int dim : {2, 3}) {
    Grid g = build_grid(dim, 1.0, dim == 2 ? 32 : 10);
    std::mt19937 rng(17 + dim);
    for (int rep = 0; rep < 4; ++rep) {
      FaceField u = random_face(g, rng);
      SymGradField D = sym_grad(g, u);
      // random symmetric stress at the same staggering
      CellField s11 = random_cell(g, rng), s22 = random_cell(g, rng);
      CellField s33 = dim == 3 ? random_cell(g, rng) : CellField();
      CornerField off2 = dim == 2 ? random_cell(g, rng) : CornerField();
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
      CHECK(rel(std::fabs(lhs - rhs), std::fabs(lhs) + std::fabs(rhs)) < 1e-13);
    }
  }
}

TEST_CASE("operators are second-order accurate on smooth fields") {
  // oracle: phi = sin(kx) cos(ky), analytic gradient and Laplacian-free combos
  const double k = std::numbers::pi;
  auto run = [&](int n) {
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
    double e_grad = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const std::size_t q = g.idx(i, j);
        const auto px = g.face_pos(0, i, j);
        const auto py = g.face_pos(1, i, j);
        e_grad = std::max(e_grad, std::fabs(gr[0][q] - k * std::cos(k * px[0]) * std::cos(k * px[1])));
        e_grad = std::max(e_grad, std::fabs(gr[1][q] + k * std::sin(k * py[0]) * std::sin(k * py[1])));
      }
    const CellField dv = div(g, F);
    const CornerField cu = curl2_vec(g, F);
    double e_div = 0.0, e_curl = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const std::size_t q = g.idx(i, j);
        const auto c = g.cell_center(i, j);
        const double dvx = k * std::cos(k * c[0]) * std::sin(k * c[1]);
        const double dvy = -2 * k * std::cos(k * c[0]) * std::sin(2 * k * c[1]);
        e_div = std::max(e_div, std::fabs(dv[q] - (dvx + dvy)));
        const auto x = g.corner_pos(i, j);
        const double cux = -k * std::sin(k * x[0]) * std::cos(2 * k * x[1]) // d Fy / dx
                           - k * std::sin(k * x[0]) * std::cos(k * x[1]);   // -d Fx / dy
        e_curl = std::max(e_curl, std::fabs(cu[q] - cux));
      }
    return std::array<double, 3>{e_grad, e_div, e_curl};
  };
  auto c32 = run(32), c64 = run(64);
  for (int t = 0; t < 3; ++t) {
    const double order = std::log2(c32[t] / c64[t]);
    CHECK(order > 1.9);
    CHECK(order < 2.1);
  }
}

TEST_CASE("3-D curl matches the analytic curl of a trig field") {
  const double k = std::numbers::pi;
  auto err = [&](int n) {
    Grid g = build_grid(3, 1.0, n);
    FaceField F = g.make_vec();
    for (int kk = 0; kk < n; ++kk)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const std::size_t q = g.idx(i, j, kk);
          const auto px = g.face_pos(0, i, j, kk);
          const auto py = g.face_pos(1, i, j, kk);
          const auto pz = g.face_pos(2, i, j, kk);
          F[0][q] = std::sin(k * px[1]); // Fx(y)
          F[1][q] = std::sin(k * py[2]); // Fy(z)
          F[2][q] = std::sin(k * pz[0]); // Fz(x)
        }
    // curl = (-k cos(kz), -k cos(kx), -k cos(ky))
    EdgeField c = curl3_face_to_edge(g, F);
    double e = 0.0;
    for (int kk = 0; kk < n; ++kk)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const std::size_t q = g.idx(i, j, kk);
          const auto ex = g.edge_pos(0, i, j, kk);
          const auto ey = g.edge_pos(1, i, j, kk);
          const auto ez = g.edge_pos(2, i, j, kk);
          e = std::max(e, std::fabs(c[0][q] + k * std::cos(k * ex[2])));
          e = std::max(e, std::fabs(c[1][q] + k * std::cos(k * ey[0])));
          e = std::max(e, std::fabs(c[2][q] + k * std::cos(k * ez[1])));
        }
    return e;
  };
  const double order = std::log2(err(12) / err(24));
  CHECK(order > 1.9);
  CHECK(order < 2.1);
}

TEST_CASE("sym_grad of a linear-in-x shear matches hand values") {
  // u = (0, x): D11 = D22 = 0, D12 = 1/2 away from the periodic seam
  Grid g = build_grid(2, 1.0, 16);
  FaceField u = g.make_vec();
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) u[1][g.idx(i, j)] = g.face_pos(1, i, j)[0];
  SymGradField D = sym_grad(g, u);
  const std::size_t q = g.idx(8, 8); // interior corner, seam not involved
  CHECK(D.off2[q] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(D.d11[q] == doctest::Approx(0.0));
  CHECK(D.d22[q] == doctest::Approx(0.0));
}

TEST_CASE("gaffney ratio: constants, zero field, curl fields") {
  Grid g = build_grid(2, 1.0, 32);
  FaceField H = g.make_vec();
  CHECK(!gaffney_ratio(g, H).has_value()); // zero field undefined

  for (auto& v : H[0]) v = 2.5; // constant: gradient-free
  auto r = gaffney_ratio(g, H);
  REQUIRE(r.has_value());
  CHECK(*r == doctest::Approx(0.0));

  // band-limited random fields stay bounded
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    FaceField R = g.make_vec();
    for (int m = 1; m <= 3; ++m) {
      const double ax = amp(rng), ay = amp(rng), ph = amp(rng);
      const double k = m * std::numbers::pi;
      for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
          const std::size_t q = g.idx(i, j);
          const auto px = g.face_pos(0, i, j);
          const auto py = g.face_pos(1, i, j);
          R[0][q] += ax * std::sin(k * px[0] + ph) * std::cos(k * px[1]);
          R[1][q] += ay * std::cos(k * py[0]) * std::sin(k * py[1] + ph);
        }
    }
    auto rr = gaffney_ratio(g, R);
    REQUIRE(rr.has_value());
    CHECK(std::isfinite(*rr));
    CHECK(*rr < 4.0 * std::numbers::pi); // bounded by the largest wavenumber used
  }
}

TEST_CASE("interpolation reproduces multilinear data and node values") {
  Grid g = build_grid(2, 1.0, 32);
  CellField f(g.count());
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      const auto c = g.cell_center(i, j);
      f[g.idx(i, j)] = 2.0 + 3.0 * c[0] - 5.0 * c[1];
    }
  // away from the seam, bilinear interp is exact on affine functions
  for (double x : {-0.41, 0.03, 0.52})
    for (double y : {-0.33, 0.11, 0.47}) {
      const double v = interp_at(g, f, cell_offsets(), {x, y, 0.0});
      CHECK(v == doctest::Approx(2.0 + 3.0 * x - 5.0 * y).epsilon(1e-12));
    }
  // exact at a node
  const auto c = g.cell_center(5, 9);
  CHECK(interp_at(g, f, cell_offsets(), c) == doctest::Approx(f[g.idx(5, 9)]).epsilon(1e-14));

  // face fields use their own offsets
  FaceField F = g.make_vec();
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) F[0][g.idx(i, j)] = g.face_pos(0, i, j)[0];
  CHECK(interp_at(g, F[0], face_offsets(0, 2), {0.26, -0.14, 0.0}) == doctest::Approx(0.26).epsilon(1e-12));
}

TEST_CASE("face/cell averaging is exact on constants, second order on trig") {
  Grid g = build_grid(2, 1.0, 32);
  CellField c(g.count(), 3.7);
  FaceField f = cell_to_faces(g, c);
  CHECK(f[0][g.idx(4, 4)] == doctest::Approx(3.7).epsilon(1e-15));
  CellField back = face_to_cell(g, f, 0);
  CHECK(back[g.idx(4, 4)] == doctest::Approx(3.7).epsilon(1e-15));
}
