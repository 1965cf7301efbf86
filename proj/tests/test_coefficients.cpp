#include <doctest.h>

#include <cmath>

#include "coefficients.hpp"

using namespace penmhd;

namespace {
FluidCoefficients fluid_defaults() {
  FluidCoefficients fc;
  fc.nu_F = 0.01;
  fc.lambda_F = 0.0;
  fc.mu_F = 1.0;
  fc.mu_int = 2.0;
  fc.eta_F = 0.01;
  fc.eta_int = 0.02;
  return fc;
}
} // namespace

TEST_CASE("scenario names round-trip") {
  for (auto s : {Scenario::None, Scenario::Isolator, Scenario::Pmc, Scenario::Pec,
                 Scenario::IsolatorType})
    CHECK(parse_scenario(scenario_name(s)) == s);
  CHECK_THROWS(parse_scenario("bogus"));
}

TEST_CASE("penalty schedule selects the four regimes") {
  const double eps = 0.01;
  auto fc = fluid_defaults();

  auto iso = schedule(Scenario::Isolator, eps, 2, fc);
  CHECK(iso.eta.exterior == doctest::Approx(100.0));
  CHECK(iso.mu.exterior == doctest::Approx(fc.mu_F));
  CHECK(iso.beta.exterior == doctest::Approx(100.0));
  CHECK(iso.beta.interior == doctest::Approx(100.0));
  CHECK(iso.beta.fluid == 0.0);

  auto pmc = schedule(Scenario::Pmc, eps, 2, fc);
  CHECK(pmc.mu.exterior == doctest::Approx(100.0));
  CHECK(pmc.eta.exterior == doctest::Approx(fc.eta_F));

  auto pec = schedule(Scenario::Pec, eps, 2, fc);
  CHECK(pec.mu.exterior == doctest::Approx(eps));
  CHECK(pec.eta.exterior == doctest::Approx(eps));

  auto it = schedule(Scenario::IsolatorType, eps, 2, fc);
  CHECK(it.mu.exterior == doctest::Approx(eps));
  CHECK(it.eta.exterior == doctest::Approx(100.0));

  // inner solid keeps its own fixed magnetic parameters in every regime
  for (auto& s : {iso, pmc, pec, it}) {
    CHECK(s.mu.interior == doctest::Approx(fc.mu_int));
    CHECK(s.eta.interior == doctest::Approx(fc.eta_int));
    CHECK(s.mu.fluid == doctest::Approx(fc.mu_F));
  }

  auto none = schedule(Scenario::None, eps, 2, fc);
  CHECK(none.beta.exterior == 0.0);
  CHECK(none.mu.exterior == doctest::Approx(fc.mu_F));
  CHECK(none.mu.interior == doctest::Approx(fc.mu_F));
  CHECK(none.eta.exterior == doctest::Approx(fc.eta_F));
  CHECK(none.lambda.exterior == doctest::Approx(fc.lambda_F));
}

TEST_CASE("viscosity penalty moves with the dimension") {
  auto fc = fluid_defaults();
  auto c2 = schedule(Scenario::Pec, 0.1, 2, fc);
  CHECK(c2.lambda.exterior == doctest::Approx(10.0));
  CHECK(c2.nu.exterior == doctest::Approx(fc.nu_F)); // shear stays physical in 2-D
  auto c3 = schedule(Scenario::Pec, 0.1, 3, fc);
  CHECK(c3.nu.exterior == doctest::Approx(10.0));
  CHECK(c3.lambda.exterior == doctest::Approx(fc.lambda_F));
}

TEST_CASE("schedule validation") {
  auto fc = fluid_defaults();
  CHECK_THROWS(schedule(Scenario::Pec, 0.0, 2, fc));
  CHECK_THROWS(schedule(Scenario::Pec, 1.5, 2, fc));
  auto bad = fc;
  bad.nu_F = -1.0;
  CHECK_THROWS(schedule(Scenario::Pec, 0.1, 2, bad));
  bad = fc;
  bad.lambda_F = -0.1;
  CHECK_THROWS(schedule(Scenario::Pec, 0.1, 2, bad));
}

TEST_CASE("blended coefficient matches region values away from the bands") {
  Grid g = build_grid(2, 1.0, 128);
  const double w = 4 * g.h;
  RegionMap rm = classify_regions(g, 0.3, 0.7, w, 2 * w);
  auto set = schedule(Scenario::Isolator, 0.01, 2, fluid_defaults());

  // deep interior point, mid-annulus point, far exterior point
  CHECK(coefficient_at({0.0, 0.0, 0.0}, set.eta, rm, 2) == doctest::Approx(set.eta.interior).epsilon(1e-15));
  CHECK(coefficient_at({0.5, 0.0, 0.0}, set.eta, rm, 2) == doctest::Approx(set.eta.fluid).epsilon(1e-15));
  CHECK(coefficient_at({0.95, 0.0, 0.0}, set.eta, rm, 2) == doctest::Approx(set.eta.exterior).epsilon(1e-15));
  // band midpoint blends half and half
  CHECK(coefficient_at({0.7, 0.0, 0.0}, set.eta, rm, 2) ==
        doctest::Approx(0.5 * (set.eta.fluid + set.eta.exterior)).epsilon(1e-12));
  // monotone bounds inside the band
  for (double r = 0.65; r <= 0.76; r += 0.005) {
    const double v = coefficient_at({r, 0.0, 0.0}, set.eta, rm, 2);
    CHECK(v >= std::min(set.eta.fluid, set.eta.exterior) - 1e-14);
    CHECK(v <= std::max(set.eta.fluid, set.eta.exterior) + 1e-14);
  }
}

TEST_CASE("blend is C1 along a radial ray") {
  Grid g = build_grid(2, 1.0, 64);
  const double w = 4 * g.h;
  RegionMap rm = classify_regions(g, 0.3, 0.7, w, 2 * w);
  auto set = schedule(Scenario::Pmc, 0.1, 2, fluid_defaults());
  auto eval = [&](double r) { return coefficient_at({r, 0.0, 0.0}, set.mu, rm, 2); };
  const double d = 1e-6;
  // derivative continuity at both edges of the outer band
  for (double r0 : {0.7 - 0.5 * w, 0.7 + 0.5 * w}) {
    const double dl = (eval(r0) - eval(r0 - d)) / d;
    const double dr = (eval(r0 + d) - eval(r0)) / d;
    CHECK(std::fabs(dl - dr) < 1e-3 * std::max(1.0, std::fabs(set.mu.exterior - set.mu.fluid) / w));
  }
}

TEST_CASE("coefficient field samples match the pointwise evaluator") {
  Grid g = build_grid(2, 1.0, 48);
  const double w = 4 * g.h;
  RegionMap rm = classify_regions(g, 0.3, 0.7, w, 2 * w);
  auto set = schedule(Scenario::IsolatorType, 0.03, 2, fluid_defaults());
  CoefficientField f = build_coefficient_field(g, rm, set);
  for (int j = 0; j < g.n; j += 7)
    for (int i = 0; i < g.n; i += 5) {
      const std::size_t q = g.idx(i, j);
      CHECK(f.eta_c[q] == doctest::Approx(coefficient_at(g.cell_center(i, j), set.eta, rm, 2)).epsilon(1e-15));
      CHECK(f.mu_f[0][q] == doctest::Approx(coefficient_at(g.face_pos(0, i, j), set.mu, rm, 2)).epsilon(1e-15));
      CHECK(f.mu_f[1][q] == doctest::Approx(coefficient_at(g.face_pos(1, i, j), set.mu, rm, 2)).epsilon(1e-15));
      CHECK(f.eta_x[q] == doctest::Approx(coefficient_at(g.corner_pos(i, j), set.eta, rm, 2)).epsilon(1e-15));
      CHECK(f.beta_f[0][q] == doctest::Approx(coefficient_at(g.face_pos(0, i, j), set.beta, rm, 2)).epsilon(1e-15));
    }
}

TEST_CASE("3-D coefficient field fills edge-centered values") {
  Grid g = build_grid(3, 1.0, 16);
  const double w = 3 * g.h;
  RegionMap rm = classify_regions(g, 0.25, 0.6, w, 0.5 * w);
  auto set = schedule(Scenario::Isolator, 0.1, 3, fluid_defaults());
  CoefficientField f = build_coefficient_field(g, rm, set);
  CHECK(f.eta_e[0].size() == g.count());
  const std::size_t q = g.idx(3, 5, 7);
  CHECK(f.eta_e[1][q] == doctest::Approx(coefficient_at(g.edge_pos(1, 3, 5, 7), set.eta, rm, 3)).epsilon(1e-15));
  CHECK(f.nu_e[2][q] == doctest::Approx(coefficient_at(g.edge_pos(2, 3, 5, 7), set.nu, rm, 3)).epsilon(1e-15));
}
