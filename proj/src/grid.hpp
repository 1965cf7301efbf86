// Periodic staggered (MAC/Yee) grid on [-L,L]^d and the three-region geometry:
// an inner solid ball, a fluid annulus, and the exterior solid, separated by
// two concentric spheres of radius R_inner and R_outer about the origin.
//
// Staggering (spacing h, index wrap-around in every direction):
//   cells   at x_i + h/2 componentwise          (density, pressure)
//   k-faces at integer coordinate in direction k, centered in the others
//           (momentum / magnetic-field component k)
//   2-D corners at integer coordinates           (z-curl, EMF, shear stress)
//   3-D k-edges run along direction k            (curl/EMF component k)
#pragma once

#include <array>
#include <string>
#include <vector>

#include "fields.hpp"

namespace penmhd {

struct Grid {
  int dim = 2;       // 2 or 3
  double L = 1.0;    // half-length of the box
  int n = 0;         // cells per direction
  double h = 0.0;    // spacing, 2L/n

  int wrap(int i) const {
    i %= n;
    return i < 0 ? i + n : i;
  }
  // Flat index; in 2-D pass k = 0.
  std::size_t idx(int i, int j, int k = 0) const {
    return (static_cast<std::size_t>(wrap(k)) * n + wrap(j)) * n + wrap(i);
  }
  std::size_t count() const {
    std::size_t c = static_cast<std::size_t>(n) * n;
    return dim == 3 ? c * n : c;
  }

  double lo() const { return -L; }
  // Coordinate of cell center / integer line in direction axis.
  double center_coord(int i) const { return -L + (i + 0.5) * h; }
  double line_coord(int i) const { return -L + i * h; }

  std::array<double, 3> cell_center(int i, int j, int k = 0) const {
    return {center_coord(i), center_coord(j), dim == 3 ? center_coord(k) : 0.0};
  }
  // Position of the component-d face with flat indices (i,j,k): integer
  // coordinate along d, cell-centered along the others.
  std::array<double, 3> face_pos(int d, int i, int j, int k = 0) const {
    std::array<double, 3> p = cell_center(i, j, k);
    if (d == 0) p[0] = line_coord(i);
    if (d == 1) p[1] = line_coord(j);
    if (d == 2) p[2] = line_coord(k);
    return p;
  }
  std::array<double, 3> corner_pos(int i, int j) const {
    return {line_coord(i), line_coord(j), 0.0};
  }
  // 3-D edge along direction d: cell-centered along d, integer in the others.
  std::array<double, 3> edge_pos(int d, int i, int j, int k) const {
    std::array<double, 3> p = {line_coord(i), line_coord(j), line_coord(k)};
    p[d] = center_coord(d == 0 ? i : (d == 1 ? j : k));
    return p;
  }

  CellField make_cell() const { return CellField(count(), 0.0); }
  CornerField make_corner() const { return CornerField(count(), 0.0); }
  VecField make_vec() const {
    VecField f;
    for (int d = 0; d < dim; ++d) f[d].assign(count(), 0.0);
    return f;
  }
};

// Region labels for cell centers.
enum class Region : unsigned char { Interior = 0, Fluid = 1, Exterior = 2 };

// Geometry of the two interfaces plus per-cell classification and the plateau
// masks used for region-restricted norms (cells safely outside the mollifier
// transition bands).
struct RegionMap {
  double R_inner = 0.0; // inner ball radius; 0 disables the inner solid
  double R_outer = 0.0; // fluid/exterior interface radius
  double band_width = 0.0; // full mollifier transition width w

  std::vector<Region> label;          // per cell
  std::vector<unsigned char> plateau_fluid;    // 1 where coefficients are exactly fluid values
  std::vector<unsigned char> plateau_interior; // 1 strictly inside the inner solid
  std::vector<unsigned char> plateau_exterior; // 1 strictly in the exterior solid
  std::vector<unsigned char> plateau_solid;    // interior-or-exterior plateau

  // Signed distances to the two interfaces (positive outside the sphere).
  static double sdist(const std::array<double, 3>& p, double R, int dim) {
    double r2 = p[0] * p[0] + p[1] * p[1];
    if (dim == 3) r2 += p[2] * p[2];
    return std::sqrt(r2) - R;
  }
};

// Smooth C^1 ramp: 0 for t<=0, 3t^2-2t^3 on [0,1], 1 for t>=1.
double smoothstep01(double t);

// Ramp across an interface as a function of signed distance s, transition
// width w centered on the interface: 0 well inside, 1 well outside.
double mollifier_ramp(double s, double w);

Grid build_grid(int dim, double L, int n);

// Classify cell centers and build plateau masks. plateau_margin is the extra
// distance beyond the band half-width required of solid-plateau cells (the
// defaults elsewhere use 2w); the fluid plateau only requires exactly-fluid
// coefficients plus a one-cell buffer.
RegionMap classify_regions(const Grid& g, double R_inner, double R_outer,
                           double band_width, double plateau_margin);

// Evenly spaced sample points on the fluid/exterior interface (2-D circle or
// 3-D sphere) with arc spacing close to target_spacing, plus unit outward
// normals. Used for boundary-trace norms.
struct BoundarySamples {
  std::vector<std::array<double, 3>> pos;
  std::vector<std::array<double, 3>> normal;
  double weight = 0.0; // surface measure per sample (uniform)
};
BoundarySamples sample_interface(const Grid& g, double R, double target_spacing);

} // namespace penmhd
