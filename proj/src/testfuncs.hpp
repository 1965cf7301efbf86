// Analytic test functions for the weak-form certifier (2-D).
//
// Four vector families, distinguished by their support/constraint class:
//   TorusTrig   smooth periodic fields on the whole torus
//   FluidBump   C^1 fields vanishing (with first derivatives) outside an
//               annulus strictly inside the fluid region
//   CurlFreeExt constants, gradients of periodic scalars, and fluid bumps --
//               all with curl identically zero on the exterior region
//   Closure     smooth fields evaluated on the closed ball only (no
//               periodicity or support constraint)
// plus one scalar family of periodic trigonometric functions.
#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "grid.hpp"

namespace penmhd {

using Point = std::array<double, 3>;

struct ScalarTest {
  std::string name;
  std::function<double(const Point&)> phi;
  std::function<Point(const Point&)> grad;
};

struct VectorTest {
  std::string name;
  std::function<Point(const Point&)> phi;
  // grad[i][j] = d_j phi_i
  std::function<std::array<Point, 3>(const Point&)> grad;
  // only the z-component is used in 2-D
  std::function<Point(const Point&)> curl;
};

enum class VectorFamily { TorusTrig, FluidBump, CurlFreeExt, Closure };

// Periodic scalars with analytic gradients; first member is phi = 1 (whose
// continuity residual is exactly the relative mass drift).
std::vector<ScalarTest> scalar_trig_family(double L);

// r_lo/r_hi bound the support annulus of the bump members (callers pass the
// fluid plateau shrunk by the required margin).
std::vector<VectorTest> vector_family(VectorFamily f, double L, double r_lo, double r_hi);

} // namespace penmhd
