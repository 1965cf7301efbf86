#include <doctest.h>

#include <cmath>
#include <numbers>

#include "grid.hpp"

using namespace penmhd;

TEST_CASE("grid indexing wraps periodically") {
  Grid g = build_grid(2, 1.0, 16);
  CHECK(g.h == doctest::Approx(2.0 / 16).epsilon(1e-15));
  CHECK(g.count() == 256);
  CHECK(g.idx(-1, 0) == g.idx(15, 0));
  CHECK(g.idx(16, 3) == g.idx(0, 3));
  CHECK(g.idx(5, -1) == g.idx(5, 15));
  Grid g3 = build_grid(3, 2.0, 8);
  CHECK(g3.count() == 512);
  CHECK(g3.idx(0, 0, -1) == g3.idx(0, 0, 7));
}

TEST_CASE("staggering positions") {
  Grid g = build_grid(2, 1.0, 8);
  // cell centers offset by h/2, faces on integer lines along their direction
  auto c = g.cell_center(0, 0);
  CHECK(c[0] == doctest::Approx(-1.0 + 0.5 * g.h).epsilon(1e-15));
  auto fx = g.face_pos(0, 2, 3);
  CHECK(fx[0] == doctest::Approx(-1.0 + 2 * g.h).epsilon(1e-15));
  CHECK(fx[1] == doctest::Approx(-1.0 + 3.5 * g.h).epsilon(1e-15));
  auto x = g.corner_pos(4, 4);
  CHECK(x[0] == doctest::Approx(-1.0 + 4 * g.h).epsilon(1e-15));
  Grid g3 = build_grid(3, 1.0, 8);
  auto ey = g3.edge_pos(1, 1, 2, 3); // runs along y: centered in y only
  CHECK(ey[0] == doctest::Approx(-1.0 + 1 * g3.h).epsilon(1e-15));
  CHECK(ey[1] == doctest::Approx(-1.0 + 2.5 * g3.h).epsilon(1e-15));
  CHECK(ey[2] == doctest::Approx(-1.0 + 3 * g3.h).epsilon(1e-15));
}

TEST_CASE("mollifier ramp is a C1 transition of width w") {
  const double w = 0.1;
  CHECK(mollifier_ramp(-0.05, w) == 0.0);
  CHECK(mollifier_ramp(0.05, w) == 1.0);
  CHECK(mollifier_ramp(0.0, w) == doctest::Approx(0.5).epsilon(1e-15));
  // derivative vanishes at the band edges and is continuous across them
  const double d = 1e-7;
  auto der = [&](double s) { return (mollifier_ramp(s + d, w) - mollifier_ramp(s - d, w)) / (2 * d); };
  CHECK(std::fabs(der(-0.05)) < 1e-4);
  CHECK(std::fabs(der(0.05)) < 1e-4);
  // interior derivative of 3t^2-2t^3 at t=1/2 is 3/2, i.e. 1.5/w in s
  CHECK(der(0.0) == doctest::Approx(1.5 / w).epsilon(1e-5));
}

TEST_CASE("region classification: measured areas converge to analytic values") {
  // oracle: annulus area pi (R_o^2 - R_i^2); interior disk pi R_i^2
  const double Ri = 0.3, Ro = 0.7;
  const double fluid_exact = std::numbers::pi * (Ro * Ro - Ri * Ri);
  const double int_exact = std::numbers::pi * Ri * Ri;
  for (int n : {64, 128, 256}) {
    Grid g = build_grid(2, 1.0, n);
    RegionMap rm = classify_regions(g, Ri, Ro, 4 * g.h, 8 * g.h);
    double af = 0, ai = 0, ae = 0;
    for (std::size_t q = 0; q < g.count(); ++q) {
      if (rm.label[q] == Region::Fluid) af += g.h * g.h;
      if (rm.label[q] == Region::Interior) ai += g.h * g.h;
      if (rm.label[q] == Region::Exterior) ae += g.h * g.h;
    }
    // mislabeled cells lie within h*sqrt(2)/2 of an interface
    const double peri = 2 * std::numbers::pi * (Ri + Ro);
    CHECK(std::fabs(af - fluid_exact) < 1.5 * peri * g.h);
    CHECK(std::fabs(ai - int_exact) < 1.5 * peri * g.h);
    CHECK(af + ai + ae == doctest::Approx(4.0).epsilon(1e-12)); // box area
  }
}

TEST_CASE("plateau masks respect band plus margin and never touch the seam") {
  Grid g = build_grid(2, 1.0, 96);
  const double w = 4 * g.h, margin = 2 * w;
  RegionMap rm = classify_regions(g, 0.3, 0.7, w, margin);
  int n_ext = 0, n_int = 0, n_fluid = 0;
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      const std::size_t q = g.idx(i, j);
      const auto p = g.cell_center(i, j);
      const double so = RegionMap::sdist(p, 0.7, 2);
      const double si = RegionMap::sdist(p, 0.3, 2);
      if (rm.plateau_exterior[q]) {
        ++n_ext;
        CHECK(so > 0.5 * w + margin);
      }
      if (rm.plateau_interior[q]) {
        ++n_int;
        CHECK(si < -(0.5 * w + margin));
      }
      if (rm.plateau_fluid[q]) {
        ++n_fluid;
        CHECK(so < -(0.5 * w + g.h));
        CHECK(si > 0.5 * w + g.h);
      }
      CHECK(rm.plateau_solid[q] == (rm.plateau_exterior[q] || rm.plateau_interior[q]));
    }
  CHECK(n_ext > 0);
  CHECK(n_int > 0);
  CHECK(n_fluid > 0);
  // outermost ring of cells must be exterior (fluid region strictly inside)
  for (int i = 0; i < g.n; ++i) {
    CHECK(rm.label[g.idx(i, 0)] == Region::Exterior);
    CHECK(rm.label[g.idx(0, i)] == Region::Exterior);
  }
}

TEST_CASE("region validation rejects bad radii") {
  Grid g = build_grid(2, 1.0, 32);
  CHECK_THROWS(classify_regions(g, 0.7, 0.3, 4 * g.h, 0.0));
  CHECK_THROWS(classify_regions(g, 0.0, 1.2, 4 * g.h, 0.0));
  CHECK_THROWS(classify_regions(g, -0.1, 0.7, 4 * g.h, 0.0));
}

TEST_CASE("interface samples lie on the circle with exact total measure") {
  Grid g = build_grid(2, 1.0, 64);
  BoundarySamples bs = sample_interface(g, 0.7, g.h);
  CHECK(bs.pos.size() >= 64);
  for (std::size_t q = 0; q < bs.pos.size(); ++q) {
    const double r = std::hypot(bs.pos[q][0], bs.pos[q][1]);
    CHECK(r == doctest::Approx(0.7).epsilon(1e-14));
    const double nn = std::hypot(bs.normal[q][0], bs.normal[q][1]);
    CHECK(nn == doctest::Approx(1.0).epsilon(1e-14));
    // outward normal is radial
    CHECK(bs.pos[q][0] == doctest::Approx(0.7 * bs.normal[q][0]).epsilon(1e-12));
  }
  CHECK(bs.weight * bs.pos.size() == doctest::Approx(2 * std::numbers::pi * 0.7).epsilon(1e-13));
}

TEST_CASE("3-D interface samples cover the sphere") {
  Grid g = build_grid(3, 1.0, 16);
  BoundarySamples bs = sample_interface(g, 0.6, g.h);
  CHECK(bs.weight * bs.pos.size() == doctest::Approx(4 * std::numbers::pi * 0.36).epsilon(1e-13));
  // first moment of uniform-ish points is near zero
  double mx = 0, my = 0, mz = 0;
  for (auto& p : bs.pos) { mx += p[0]; my += p[1]; mz += p[2]; }
  const double m = bs.pos.size();
  CHECK(std::fabs(mx / m) < 0.02);
  CHECK(std::fabs(my / m) < 0.02);
  CHECK(std::fabs(mz / m) < 0.02);
}
