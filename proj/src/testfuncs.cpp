#include "testfuncs.hpp"

#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace penmhd {

namespace {

constexpr double kPi = std::numbers::pi;

ScalarTest make_scalar(std::string name, std::function<double(const Point&)> phi,
                       std::function<Point(const Point&)> grad) {
  return ScalarTest{std::move(name), std::move(phi), std::move(grad)};
}

VectorTest make_vector(std::string name, std::function<Point(const Point&)> phi,
                       std::function<std::array<Point, 3>(const Point&)> grad,
                       std::function<Point(const Point&)> curl) {
  return VectorTest{std::move(name), std::move(phi), std::move(grad), std::move(curl)};
}

// C^1 window on [a,b]: sin^2(pi (r-a)/(b-a)), zero (with derivative) outside.
struct Window {
  double a, b;
  double val(double r) const {
    if (r <= a || r >= b) return 0.0;
    const double s = std::sin(kPi * (r - a) / (b - a));
    return s * s;
  }
  double der(double r) const {
    if (r <= a || r >= b) return 0.0;
    return kPi / (b - a) * std::sin(2 * kPi * (r - a) / (b - a));
  }
};

double radius(const Point& p) { return std::hypot(p[0], p[1]); }

// phi = W(r) * (cx(p), cy(p)) with analytic component gradients supplied by
// the caller via dcx/dcy (rows of the modulation Jacobian).
VectorTest modulated_bump(std::string name, Window w, std::function<double(const Point&)> cx,
                          std::function<double(const Point&)> cy,
                          std::function<Point(const Point&)> dcx,
                          std::function<Point(const Point&)> dcy) {
  auto phi = [w, cx, cy](const Point& p) -> Point {
    const double W = w.val(radius(p));
    return {W * cx(p), W * cy(p), 0.0};
  };
  auto grad = [w, cx, cy, dcx, dcy](const Point& p) -> std::array<Point, 3> {
    const double r = radius(p);
    const double W = w.val(r), Wp = w.der(r);
    const double rx = r > 1e-300 ? p[0] / r : 0.0;
    const double ry = r > 1e-300 ? p[1] / r : 0.0;
    const Point gx = dcx(p), gy = dcy(p);
    std::array<Point, 3> G{};
    G[0] = {Wp * rx * cx(p) + W * gx[0], Wp * ry * cx(p) + W * gx[1], 0.0};
    G[1] = {Wp * rx * cy(p) + W * gy[0], Wp * ry * cy(p) + W * gy[1], 0.0};
    return G;
  };
  auto curl = [grad](const Point& p) -> Point {
    const auto G = grad(p);
    return {0.0, 0.0, G[1][0] - G[0][1]};
  };
  return make_vector(std::move(name), std::move(phi), std::move(grad), std::move(curl));
}

Point zero3(const Point&) { return {0.0, 0.0, 0.0}; }

std::vector<VectorTest> fluid_bumps(double L, double r_lo, double r_hi) {
  if (!(r_hi > r_lo && r_lo > 0.0))
    throw config_error("fluid-bump support annulus is empty; refine the grid or widen the fluid "
                       "region");
  const Window w{r_lo, r_hi};
  const double kappa = kPi / L;
  std::vector<VectorTest> fam;

  // azimuthal: phi = (W/r) (-y, x); curl_z = W' + W/r
  fam.push_back(make_vector(
      "bump_azimuthal",
      [w](const Point& p) -> Point {
        const double r = radius(p);
        if (r <= 1e-300) return {0.0, 0.0, 0.0};
        const double F = w.val(r) / r;
        return {-F * p[1], F * p[0], 0.0};
      },
      [w](const Point& p) -> std::array<Point, 3> {
        const double r = radius(p);
        std::array<Point, 3> G{};
        if (r <= 1e-300) return G;
        const double W = w.val(r), Wp = w.der(r);
        const double F = W / r, Fp = (Wp * r - W) / (r * r);
        const double x = p[0], y = p[1];
        G[0] = {-Fp * x * y / r, -Fp * y * y / r - F, 0.0};
        G[1] = {Fp * x * x / r + F, Fp * x * y / r, 0.0};
        return G;
      },
      [w](const Point& p) -> Point {
        const double r = radius(p);
        if (r <= 1e-300) return {0.0, 0.0, 0.0};
        return {0.0, 0.0, w.der(r) + w.val(r) / r};
      }));

  auto one = [](const Point&) { return 1.0; };
  fam.push_back(modulated_bump("bump_x", w, one, [](const Point&) { return 0.0; }, zero3, zero3));
  fam.push_back(modulated_bump("bump_y", w, [](const Point&) { return 0.0; }, one, zero3, zero3));
  fam.push_back(modulated_bump(
      "bump_x_cosy", w, [kappa](const Point& p) { return std::cos(kappa * p[1]); },
      [](const Point&) { return 0.0; },
      [kappa](const Point& p) -> Point { return {0.0, -kappa * std::sin(kappa * p[1]), 0.0}; },
      zero3));
  fam.push_back(modulated_bump(
      "bump_y_sinx", w, [](const Point&) { return 0.0; },
      [kappa](const Point& p) { return std::sin(kappa * p[0]); }, zero3,
      [kappa](const Point& p) -> Point { return {kappa * std::cos(kappa * p[0]), 0.0, 0.0}; }));
  return fam;
}

VectorTest constant_member(std::string name, double ex, double ey) {
  return make_vector(
      std::move(name), [ex, ey](const Point&) -> Point { return {ex, ey, 0.0}; },
      [](const Point&) -> std::array<Point, 3> { return {}; }, zero3);
}

// gradient of a periodic scalar: curl-free by construction
VectorTest gradient_member(std::string name, std::function<double(const Point&)> f_unused,
                           std::function<Point(const Point&)> g,
                           std::function<std::array<Point, 3>(const Point&)> hess) {
  (void)f_unused;
  return make_vector(std::move(name), std::move(g), std::move(hess), zero3);
}

std::vector<VectorTest> torus_trig_vectors(double L) {
  const double k = kPi / L;
  std::vector<VectorTest> fam;
  fam.push_back(constant_member("const_x", 1.0, 0.0));
  fam.push_back(constant_member("const_y", 0.0, 1.0));

  fam.push_back(make_vector(
      "siny_ex", [k](const Point& p) -> Point { return {std::sin(k * p[1]), 0.0, 0.0}; },
      [k](const Point& p) -> std::array<Point, 3> {
        std::array<Point, 3> G{};
        G[0] = {0.0, k * std::cos(k * p[1]), 0.0};
        return G;
      },
      [k](const Point& p) -> Point { return {0.0, 0.0, -k * std::cos(k * p[1])}; }));

  fam.push_back(make_vector(
      "sinx_ey", [k](const Point& p) -> Point { return {0.0, std::sin(k * p[0]), 0.0}; },
      [k](const Point& p) -> std::array<Point, 3> {
        std::array<Point, 3> G{};
        G[1] = {k * std::cos(k * p[0]), 0.0, 0.0};
        return G;
      },
      [k](const Point& p) -> Point { return {0.0, 0.0, k * std::cos(k * p[0])}; }));

  fam.push_back(make_vector(
      "sxsy_cxcy",
      [k](const Point& p) -> Point {
        return {std::sin(k * p[0]) * std::sin(k * p[1]),
                std::cos(k * p[0]) * std::cos(k * p[1]), 0.0};
      },
      [k](const Point& p) -> std::array<Point, 3> {
        const double sx = std::sin(k * p[0]), cx = std::cos(k * p[0]);
        const double sy = std::sin(k * p[1]), cy = std::cos(k * p[1]);
        std::array<Point, 3> G{};
        G[0] = {k * cx * sy, k * sx * cy, 0.0};
        G[1] = {-k * sx * cy, -k * cx * sy, 0.0};
        return G;
      },
      [k](const Point& p) -> Point {
        return {0.0, 0.0, -2 * k * std::sin(k * p[0]) * std::cos(k * p[1])};
      }));

  fam.push_back(make_vector(
      "cosy_sin2x",
      [k](const Point& p) -> Point {
        return {std::cos(k * p[1]), std::sin(2 * k * p[0]), 0.0};
      },
      [k](const Point& p) -> std::array<Point, 3> {
        std::array<Point, 3> G{};
        G[0] = {0.0, -k * std::sin(k * p[1]), 0.0};
        G[1] = {2 * k * std::cos(2 * k * p[0]), 0.0, 0.0};
        return G;
      },
      [k](const Point& p) -> Point {
        return {0.0, 0.0, 2 * k * std::cos(2 * k * p[0]) + k * std::sin(k * p[1])};
      }));

  fam.push_back(make_vector(
      "c2xcy_sinx",
      [k](const Point& p) -> Point {
        return {std::cos(2 * k * p[0]) * std::cos(k * p[1]), std::sin(k * p[0]), 0.0};
      },
      [k](const Point& p) -> std::array<Point, 3> {
        const double s2x = std::sin(2 * k * p[0]), c2x = std::cos(2 * k * p[0]);
        const double sy = std::sin(k * p[1]), cy = std::cos(k * p[1]);
        std::array<Point, 3> G{};
        G[0] = {-2 * k * s2x * cy, -k * c2x * sy, 0.0};
        G[1] = {k * std::cos(k * p[0]), 0.0, 0.0};
        return G;
      },
      [k](const Point& p) -> Point {
        return {0.0, 0.0,
                k * std::cos(k * p[0]) +
                    k * std::cos(2 * k * p[0]) * std::sin(k * p[1])};
      }));
  return fam;
}

std::vector<VectorTest> curl_free_ext(double L, double r_lo, double r_hi) {
  const double k = kPi / L;
  std::vector<VectorTest> fam;
  fam.push_back(constant_member("const_x", 1.0, 0.0));
  fam.push_back(constant_member("const_y", 0.0, 1.0));

  fam.push_back(gradient_member(
      "grad_sxsy", {},
      [k](const Point& p) -> Point {
        return {k * std::cos(k * p[0]) * std::sin(k * p[1]),
                k * std::sin(k * p[0]) * std::cos(k * p[1]), 0.0};
      },
      [k](const Point& p) -> std::array<Point, 3> {
        const double sx = std::sin(k * p[0]), cx = std::cos(k * p[0]);
        const double sy = std::sin(k * p[1]), cy = std::cos(k * p[1]);
        std::array<Point, 3> G{};
        G[0] = {-k * k * sx * sy, k * k * cx * cy, 0.0};
        G[1] = {k * k * cx * cy, -k * k * sx * sy, 0.0};
        return G;
      }));

  fam.push_back(gradient_member(
      "grad_cosx", {},
      [k](const Point& p) -> Point { return {-k * std::sin(k * p[0]), 0.0, 0.0}; },
      [k](const Point& p) -> std::array<Point, 3> {
        std::array<Point, 3> G{};
        G[0] = {-k * k * std::cos(k * p[0]), 0.0, 0.0};
        return G;
      }));

  fam.push_back(gradient_member(
      "grad_s2xcy", {},
      [k](const Point& p) -> Point {
        return {2 * k * std::cos(2 * k * p[0]) * std::cos(k * p[1]),
                -k * std::sin(2 * k * p[0]) * std::sin(k * p[1]), 0.0};
      },
      [k](const Point& p) -> std::array<Point, 3> {
        const double s2x = std::sin(2 * k * p[0]), c2x = std::cos(2 * k * p[0]);
        const double sy = std::sin(k * p[1]), cy = std::cos(k * p[1]);
        std::array<Point, 3> G{};
        G[0] = {-4 * k * k * s2x * cy, -2 * k * k * c2x * sy, 0.0};
        G[1] = {-2 * k * k * c2x * sy, -k * k * s2x * cy, 0.0};
        return G;
      }));

  for (auto& b : fluid_bumps(L, r_lo, r_hi)) fam.push_back(std::move(b));
  return fam;
}

std::vector<VectorTest> closure_fields(double L) {
  std::vector<VectorTest> fam;
  fam.push_back(constant_member("const_x", 1.0, 0.0));
  fam.push_back(constant_member("const_y", 0.0, 1.0));

  fam.push_back(make_vector(
      "rotation", [](const Point& p) -> Point { return {-p[1], p[0], 0.0}; },
      [](const Point&) -> std::array<Point, 3> {
        std::array<Point, 3> G{};
        G[0] = {0.0, -1.0, 0.0};
        G[1] = {1.0, 0.0, 0.0};
        return G;
      },
      [](const Point&) -> Point { return {0.0, 0.0, 2.0}; }));

  fam.push_back(make_vector(
      "radial", [](const Point& p) -> Point { return {p[0], p[1], 0.0}; },
      [](const Point&) -> std::array<Point, 3> {
        std::array<Point, 3> G{};
        G[0] = {1.0, 0.0, 0.0};
        G[1] = {0.0, 1.0, 0.0};
        return G;
      },
      zero3));

  for (auto& v : torus_trig_vectors(L))
    if (v.name == "sxsy_cxcy" || v.name == "cosy_sin2x") fam.push_back(std::move(v));
  return fam;
}

} // namespace

std::vector<ScalarTest> scalar_trig_family(double L) {
  const double k = kPi / L;
  std::vector<ScalarTest> fam;
  fam.push_back(make_scalar(
      "one", [](const Point&) { return 1.0; },
      [](const Point&) -> Point { return {0.0, 0.0, 0.0}; }));
  fam.push_back(make_scalar(
      "sinx", [k](const Point& p) { return std::sin(k * p[0]); },
      [k](const Point& p) -> Point { return {k * std::cos(k * p[0]), 0.0, 0.0}; }));
  fam.push_back(make_scalar(
      "cosy", [k](const Point& p) { return std::cos(k * p[1]); },
      [k](const Point& p) -> Point { return {0.0, -k * std::sin(k * p[1]), 0.0}; }));
  fam.push_back(make_scalar(
      "sxsy", [k](const Point& p) { return std::sin(k * p[0]) * std::sin(k * p[1]); },
      [k](const Point& p) -> Point {
        return {k * std::cos(k * p[0]) * std::sin(k * p[1]),
                k * std::sin(k * p[0]) * std::cos(k * p[1]), 0.0};
      }));
  fam.push_back(make_scalar(
      "c2xcy", [k](const Point& p) { return std::cos(2 * k * p[0]) * std::cos(k * p[1]); },
      [k](const Point& p) -> Point {
        return {-2 * k * std::sin(2 * k * p[0]) * std::cos(k * p[1]),
                -k * std::cos(2 * k * p[0]) * std::sin(k * p[1]), 0.0};
      }));
  fam.push_back(make_scalar(
      "sxc2y", [k](const Point& p) { return std::sin(k * p[0]) * std::cos(2 * k * p[1]); },
      [k](const Point& p) -> Point {
        return {k * std::cos(k * p[0]) * std::cos(2 * k * p[1]),
                -2 * k * std::sin(k * p[0]) * std::sin(2 * k * p[1]), 0.0};
      }));
  return fam;
}

std::vector<VectorTest> vector_family(VectorFamily f, double L, double r_lo, double r_hi) {
  switch (f) {
    case VectorFamily::TorusTrig: return torus_trig_vectors(L);
    case VectorFamily::FluidBump: return fluid_bumps(L, r_lo, r_hi);
    case VectorFamily::CurlFreeExt: return curl_free_ext(L, r_lo, r_hi);
    case VectorFamily::Closure: return closure_fields(L);
  }
  throw config_error("unknown test-function family");
}

} // namespace penmhd
