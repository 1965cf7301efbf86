#include "grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace penmhd {

double smoothstep01(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * (3.0 - 2.0 * t);
}

double mollifier_ramp(double s, double w) {
  if (w <= 0.0) return s < 0.0 ? 0.0 : 1.0;
  return smoothstep01((s + 0.5 * w) / w);
}

Grid build_grid(int dim, double L, int n) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("grid: dim must be 2 or 3");
  if (!(L > 0.0)) throw std::invalid_argument("grid: L must be positive");
  if (n < 8) throw std::invalid_argument("grid: need at least 8 cells per direction");
  Grid g;
  g.dim = dim;
  g.L = L;
  g.n = n;
  g.h = 2.0 * L / n;
  return g;
}

RegionMap classify_regions(const Grid& g, double R_inner, double R_outer,
                           double band_width, double plateau_margin) {
  if (R_inner < 0.0 || R_outer <= R_inner)
    throw std::invalid_argument("regions: need 0 <= R_inner < R_outer");
  if (R_outer >= g.L)
    throw std::invalid_argument("regions: fluid region must be strictly inside the box");
  if (R_outer + 0.5 * band_width >= g.L)
    throw std::invalid_argument("regions: outer mollifier band reaches the box edge");

  RegionMap rm;
  rm.R_inner = R_inner;
  rm.R_outer = R_outer;
  rm.band_width = band_width;

  const std::size_t nc = g.count();
  rm.label.resize(nc);
  rm.plateau_fluid.assign(nc, 0);
  rm.plateau_interior.assign(nc, 0);
  rm.plateau_exterior.assign(nc, 0);
  rm.plateau_solid.assign(nc, 0);

  const double guard = 0.5 * band_width + plateau_margin;
  // The fluid mask only needs the coefficients to be exactly their fluid
  // values (plus one cell so face stencils stay clear of the bands).
  const double fluid_guard = 0.5 * band_width + g.h;
  const int nz = g.dim == 3 ? g.n : 1;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        const auto p = g.cell_center(i, j, k);
        const double s_out = RegionMap::sdist(p, R_outer, g.dim);
        const double s_in = R_inner > 0.0 ? RegionMap::sdist(p, R_inner, g.dim) : 1.0;
        if (s_out > 0.0)
          rm.label[q] = Region::Exterior;
        else if (R_inner > 0.0 && s_in < 0.0)
          rm.label[q] = Region::Interior;
        else
          rm.label[q] = Region::Fluid;

        if (s_out > guard) {
          rm.plateau_exterior[q] = 1;
          rm.plateau_solid[q] = 1;
        }
        if (R_inner > 0.0 && s_in < -guard) {
          rm.plateau_interior[q] = 1;
          rm.plateau_solid[q] = 1;
        }
        if (s_out < -fluid_guard && (R_inner == 0.0 || s_in > fluid_guard))
          rm.plateau_fluid[q] = 1;
      }
  return rm;
}

BoundarySamples sample_interface(const Grid& g, double R, double target_spacing) {
  if (!(R > 0.0)) throw std::invalid_argument("sample_interface: radius must be positive");
  if (!(target_spacing > 0.0)) throw std::invalid_argument("sample_interface: spacing must be positive");
  BoundarySamples bs;
  if (g.dim == 2) {
    const double circ = 2.0 * std::numbers::pi * R;
    int m = std::max(8, static_cast<int>(std::ceil(circ / target_spacing)));
    bs.pos.reserve(m);
    bs.normal.reserve(m);
    for (int q = 0; q < m; ++q) {
      const double th = 2.0 * std::numbers::pi * (q + 0.5) / m;
      bs.pos.push_back({R * std::cos(th), R * std::sin(th), 0.0});
      bs.normal.push_back({std::cos(th), std::sin(th), 0.0});
    }
    bs.weight = circ / m;
  } else {
    // Fibonacci lattice: near-uniform surface points with equal weights.
    const double area = 4.0 * std::numbers::pi * R * R;
    int m = std::max(32, static_cast<int>(std::ceil(area / (target_spacing * target_spacing))));
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    bs.pos.reserve(m);
    bs.normal.reserve(m);
    for (int q = 0; q < m; ++q) {
      const double z = 1.0 - (2.0 * q + 1.0) / m;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double th = golden * q;
      const std::array<double, 3> nrm = {rho * std::cos(th), rho * std::sin(th), z};
      bs.normal.push_back(nrm);
      bs.pos.push_back({R * nrm[0], R * nrm[1], R * nrm[2]});
    }
    bs.weight = area / m;
  }
  return bs;
}

} // namespace penmhd
