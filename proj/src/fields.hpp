// Flat field containers for the staggered grid plus deterministic reductions.
// All reductions use compensated (Kahan) summation in a fixed traversal order
// so repeated runs with identical inputs produce bit-identical results.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace penmhd {

using CellField = std::vector<double>;   // one value per cell
using CornerField = std::vector<double>; // 2-D: one value per corner (same count as cells)

// One component per spatial direction; component k lives on faces (or edges)
// normal (or parallel) to direction k. Unused components stay empty in 2-D.
struct VecField {
  std::array<std::vector<double>, 3> c;
  std::vector<double>& operator[](int k) { return c[k]; }
  const std::vector<double>& operator[](int k) const { return c[k]; }
};

using FaceField = VecField;
using EdgeField = VecField;

// Compensated accumulator. Deterministic as long as add() order is fixed.
struct KahanSum {
  double s = 0.0;
  double carry = 0.0;
  void add(double v) {
    double y = v - carry;
    double t = s + y;
    carry = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

inline double ksum(const std::vector<double>& v) {
  KahanSum k;
  for (double x : v) k.add(x);
  return k.value();
}

inline double ksum_sq(const std::vector<double>& v) {
  KahanSum k;
  for (double x : v) k.add(x * x);
  return k.value();
}

inline double kdot(const std::vector<double>& a, const std::vector<double>& b) {
  KahanSum k;
  for (std::size_t i = 0; i < a.size(); ++i) k.add(a[i] * b[i]);
  return k.value();
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

inline double vec_dot(const VecField& a, const VecField& b, int dim) {
  KahanSum k;
  for (int d = 0; d < dim; ++d)
    for (std::size_t i = 0; i < a[d].size(); ++i) k.add(a[d][i] * b[d][i]);
  return k.value();
}

inline double vec_max_abs(const VecField& a, int dim) {
  double m = 0.0;
  for (int d = 0; d < dim; ++d) m = std::max(m, max_abs(a[d]));
  return m;
}

inline void vec_axpy(VecField& y, double alpha, const VecField& x, int dim) {
  for (int d = 0; d < dim; ++d)
    for (std::size_t i = 0; i < y[d].size(); ++i) y[d][i] += alpha * x[d][i];
}

} // namespace penmhd
