#include <doctest.h>

#include <cmath>

#include "eos.hpp"
#include "errors.hpp"

using namespace penmhd;

TEST_CASE("pressure law, hand values") {
  EosParams e{2.0, 3.0}; // p = 3 rho^2
  CHECK(pressure(2.0, e) == doctest::Approx(12.0).epsilon(1e-15));
  CHECK(pressure(0.0, e) == 0.0);
  CHECK_THROWS_AS(pressure(-1e-3, e), numeric_error);
}

TEST_CASE("pressure potential satisfies rho P'(rho) - P(rho) = p(rho)") {
  EosParams e{1.4, 1.0};
  const double rho = 0.8, d = 1e-6;
  const double dP = (pressure_potential(rho + d, e) - pressure_potential(rho - d, e)) / (2 * d);
  CHECK(rho * dP - pressure_potential(rho, e) == doctest::Approx(pressure(rho, e)).epsilon(1e-8));
  // gamma = 2 hand value: P = a rho^2 / 1
  EosParams e2{2.0, 3.0};
  CHECK(pressure_potential(2.0, e2) == doctest::Approx(12.0).epsilon(1e-15));
}

TEST_CASE("sound speed squared is gamma p / rho") {
  EosParams e{1.4, 1.0};
  const double rho = 1.3;
  const double c = sound_speed(rho, e);
  CHECK(c * c == doctest::Approx(e.gamma * pressure(rho, e) / rho).epsilon(1e-14));
}

TEST_CASE("maxwell tensor, hand values in 2-D") {
  SymTensor t = maxwell_tensor({3.0, 4.0, 0.0}, 2.0, 2);
  CHECK(t[0] == doctest::Approx(-7.0).epsilon(1e-15));  // 2*(9 - 12.5)
  CHECK(t[1] == doctest::Approx(7.0).epsilon(1e-15));   // 2*(16 - 12.5)
  CHECK(t[3] == doctest::Approx(24.0).epsilon(1e-15));  // 2*3*4
  CHECK(t[0] + t[1] == doctest::Approx(0.0));           // trace-free in 2-D
}

TEST_CASE("maxwell tensor 3-D trace is -mu |H|^2 / 2") {
  SymTensor t = maxwell_tensor({1.0, 2.0, 2.0}, 3.0, 3);
  CHECK(t[0] + t[1] + t[2] == doctest::Approx(3.0 * 9.0 * (1.0 - 1.5)).epsilon(1e-14));
  CHECK(t[4] == doctest::Approx(6.0));
  CHECK(t[5] == doctest::Approx(12.0));
}

TEST_CASE("viscous stress: deviatoric part kills isotropic strain") {
  SymTensor D{1.0, 1.0, 0.0, 0.0, 0.0, 0.0};
  SymTensor s = viscous_stress(D, 1.0, 0.0, 2);
  CHECK(s[0] == doctest::Approx(0.0));
  CHECK(s[1] == doctest::Approx(0.0));
  // bulk part responds to the trace alone
  s = viscous_stress(D, 1.0, 2.5, 2);
  CHECK(s[0] == doctest::Approx(5.0));
  // shear passes through with factor 2 nu
  SymTensor Ds{0.0, 0.0, 0.0, 0.7, 0.0, 0.0};
  s = viscous_stress(Ds, 3.0, 99.0, 2);
  CHECK(s[3] == doctest::Approx(4.2));
  CHECK(s[0] == doctest::Approx(0.0));
}

TEST_CASE("3-D viscous stress hand value") {
  // D = diag(1,0,0), nu=1, lambda=0, d=3: S = 2 D - (2/3) tr D I
  SymTensor D{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  SymTensor s = viscous_stress(D, 1.0, 0.0, 3);
  CHECK(s[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(s[1] == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
  CHECK(s[2] == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("total energy of a uniform state equals box volume times density") {
  Grid g = build_grid(2, 1.0, 32);
  EosParams e{1.4, 1.0};
  CellField rho(g.count(), 2.0);
  FaceField m = g.make_vec();
  FaceField H = g.make_vec();
  for (auto& v : H[0]) v = 0.3;
  for (auto& v : H[1]) v = -0.4;
  CellField mu(g.count(), 2.0);
  const double exact = 4.0 * (pressure_potential(2.0, e) + 0.5 * 2.0 * 0.25);
  CHECK(total_energy(g, rho, m, H, mu, e) == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("total energy adds kinetic part") {
  Grid g = build_grid(2, 1.0, 16);
  EosParams e{2.0, 1.0};
  CellField rho(g.count(), 0.5);
  FaceField m = g.make_vec();
  for (auto& v : m[0]) v = 1.0;
  FaceField H = g.make_vec();
  CellField mu(g.count(), 1.0);
  // kinetic = |m|^2/(2 rho) = 1.0 per unit area; potential = 0.25
  CHECK(total_energy(g, rho, m, H, mu, e) == doctest::Approx(4.0 * (1.0 + 0.25)).epsilon(1e-14));
}

TEST_CASE("vacuum cells carrying momentum are a hard error") {
  Grid g = build_grid(2, 1.0, 8);
  EosParams e{1.4, 1.0};
  CellField rho(g.count(), 0.0);
  FaceField m = g.make_vec();
  FaceField H = g.make_vec();
  CellField mu(g.count(), 1.0);
  CHECK(total_energy(g, rho, m, H, mu, e) == doctest::Approx(0.0)); // vacuum at rest is fine
  m[0][g.idx(3, 3)] = 1.0;
  CHECK_THROWS_AS(total_energy(g, rho, m, H, mu, e), numeric_error);
  rho.assign(g.count(), -1.0);
  m = g.make_vec();
  CHECK_THROWS_AS(total_energy(g, rho, m, H, mu, e), numeric_error);
}
