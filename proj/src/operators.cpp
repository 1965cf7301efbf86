#include "operators.hpp"

#include <cmath>

namespace penmhd {

FaceField grad(const Grid& g, const CellField& phi) {
  FaceField out = g.make_vec();
  const double ih = 1.0 / g.h;
  const int nz = g.dim == 3 ? g.n : 1;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        out[0][q] = (phi[q] - phi[g.idx(i - 1, j, k)]) * ih;
        out[1][q] = (phi[q] - phi[g.idx(i, j - 1, k)]) * ih;
        if (g.dim == 3) out[2][q] = (phi[q] - phi[g.idx(i, j, k - 1)]) * ih;
      }
  return out;
}

CellField div(const Grid& g, const FaceField& f) {
  CellField out = g.make_cell();
  const double ih = 1.0 / g.h;
  const int nz = g.dim == 3 ? g.n : 1;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        double d = (f[0][g.idx(i + 1, j, k)] - f[0][q]) + (f[1][g.idx(i, j + 1, k)] - f[1][q]);
        if (g.dim == 3) d += f[2][g.idx(i, j, k + 1)] - f[2][q];
        out[q] = d * ih;
      }
  return out;
}

CornerField curl2_vec(const Grid& g, const FaceField& f) {
  CornerField out = g.make_corner();
  const double ih = 1.0 / g.h;
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      const std::size_t q = g.idx(i, j);
      out[q] = (f[1][q] - f[1][g.idx(i - 1, j)]) * ih - (f[0][q] - f[0][g.idx(i, j - 1)]) * ih;
    }
  return out;
}

FaceField curl2_scal(const Grid& g, const CornerField& psi) {
  FaceField out = g.make_vec();
  const double ih = 1.0 / g.h;
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      const std::size_t q = g.idx(i, j);
      out[0][q] = (psi[g.idx(i, j + 1)] - psi[q]) * ih;
      out[1][q] = -(psi[g.idx(i + 1, j)] - psi[q]) * ih;
    }
  return out;
}

EdgeField curl3_face_to_edge(const Grid& g, const FaceField& f) {
  EdgeField out = g.make_vec();
  const double ih = 1.0 / g.h;
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        out[0][q] = (f[2][q] - f[2][g.idx(i, j - 1, k)]) * ih - (f[1][q] - f[1][g.idx(i, j, k - 1)]) * ih;
        out[1][q] = (f[0][q] - f[0][g.idx(i, j, k - 1)]) * ih - (f[2][q] - f[2][g.idx(i - 1, j, k)]) * ih;
        out[2][q] = (f[1][q] - f[1][g.idx(i - 1, j, k)]) * ih - (f[0][q] - f[0][g.idx(i, j - 1, k)]) * ih;
      }
  return out;
}

FaceField curl3_edge_to_face(const Grid& g, const EdgeField& e) {
  FaceField out = g.make_vec();
  const double ih = 1.0 / g.h;
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        out[0][q] = (e[2][g.idx(i, j + 1, k)] - e[2][q]) * ih - (e[1][g.idx(i, j, k + 1)] - e[1][q]) * ih;
        out[1][q] = (e[0][g.idx(i, j, k + 1)] - e[0][q]) * ih - (e[2][g.idx(i + 1, j, k)] - e[2][q]) * ih;
        out[2][q] = (e[1][g.idx(i + 1, j, k)] - e[1][q]) * ih - (e[0][g.idx(i, j + 1, k)] - e[0][q]) * ih;
      }
  return out;
}

SymGradField sym_grad(const Grid& g, const FaceField& u) {
  SymGradField s;
  s.d11 = g.make_cell();
  s.d22 = g.make_cell();
  const double ih = 1.0 / g.h;
  if (g.dim == 2) {
    s.off2 = g.make_corner();
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t q = g.idx(i, j);
        s.d11[q] = (u[0][g.idx(i + 1, j)] - u[0][q]) * ih;
        s.d22[q] = (u[1][g.idx(i, j + 1)] - u[1][q]) * ih;
        s.off2[q] = 0.5 * ((u[0][q] - u[0][g.idx(i, j - 1)]) * ih + (u[1][q] - u[1][g.idx(i - 1, j)]) * ih);
      }
  } else {
    s.d33 = g.make_cell();
    s.off3 = g.make_vec();
    for (int k = 0; k < g.n; ++k)
      for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
          const std::size_t q = g.idx(i, j, k);
          s.d11[q] = (u[0][g.idx(i + 1, j, k)] - u[0][q]) * ih;
          s.d22[q] = (u[1][g.idx(i, j + 1, k)] - u[1][q]) * ih;
          s.d33[q] = (u[2][g.idx(i, j, k + 1)] - u[2][q]) * ih;
          // D12 on z-edges, D13 on y-edges, D23 on x-edges.
          s.off3[2][q] = 0.5 * ((u[0][q] - u[0][g.idx(i, j - 1, k)]) * ih +
                                (u[1][q] - u[1][g.idx(i - 1, j, k)]) * ih);
          s.off3[1][q] = 0.5 * ((u[0][q] - u[0][g.idx(i, j, k - 1)]) * ih +
                                (u[2][q] - u[2][g.idx(i - 1, j, k)]) * ih);
          s.off3[0][q] = 0.5 * ((u[1][q] - u[1][g.idx(i, j, k - 1)]) * ih +
                                (u[2][q] - u[2][g.idx(i, j - 1, k)]) * ih);
        }
  }
  return s;
}

FaceField div_stress(const Grid& g, const CellField& s11, const CellField& s22,
                     const CellField& s33, const CornerField& off2, const EdgeField& off3) {
  FaceField out = g.make_vec();
  const double ih = 1.0 / g.h;
  if (g.dim == 2) {
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t q = g.idx(i, j);
        out[0][q] = (s11[q] - s11[g.idx(i - 1, j)]) * ih + (off2[g.idx(i, j + 1)] - off2[q]) * ih;
        out[1][q] = (s22[q] - s22[g.idx(i, j - 1)]) * ih + (off2[g.idx(i + 1, j)] - off2[q]) * ih;
      }
  } else {
    for (int k = 0; k < g.n; ++k)
      for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
          const std::size_t q = g.idx(i, j, k);
          out[0][q] = (s11[q] - s11[g.idx(i - 1, j, k)]) * ih +
                      (off3[2][g.idx(i, j + 1, k)] - off3[2][q]) * ih +
                      (off3[1][g.idx(i, j, k + 1)] - off3[1][q]) * ih;
          out[1][q] = (s22[q] - s22[g.idx(i, j - 1, k)]) * ih +
                      (off3[2][g.idx(i + 1, j, k)] - off3[2][q]) * ih +
                      (off3[0][g.idx(i, j, k + 1)] - off3[0][q]) * ih;
          out[2][q] = (s33[q] - s33[g.idx(i, j, k - 1)]) * ih +
                      (off3[1][g.idx(i + 1, j, k)] - off3[1][q]) * ih +
                      (off3[0][g.idx(i, j + 1, k)] - off3[0][q]) * ih;
        }
  }
  return out;
}

CellField face_to_cell(const Grid& g, const FaceField& f, int d) {
  CellField out = g.make_cell();
  const int nz = g.dim == 3 ? g.n : 1;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        const std::size_t qp = d == 0 ? g.idx(i + 1, j, k)
                                      : (d == 1 ? g.idx(i, j + 1, k) : g.idx(i, j, k + 1));
        out[q] = 0.5 * (f[d][q] + f[d][qp]);
      }
  return out;
}

FaceField cell_to_faces(const Grid& g, const CellField& c) {
  FaceField out = g.make_vec();
  const int nz = g.dim == 3 ? g.n : 1;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        out[0][q] = 0.5 * (c[g.idx(i - 1, j, k)] + c[q]);
        out[1][q] = 0.5 * (c[g.idx(i, j - 1, k)] + c[q]);
        if (g.dim == 3) out[2][q] = 0.5 * (c[g.idx(i, j, k - 1)] + c[q]);
      }
  return out;
}

std::optional<double> gaffney_ratio(const Grid& g, const FaceField& H) {
  const double vol = std::pow(g.h, g.dim);
  double h2 = 0.0;
  for (int d = 0; d < g.dim; ++d) h2 += ksum_sq(H[d]);
  if (h2 == 0.0) return std::nullopt;

  // All first derivatives of all components, each at its natural location.
  KahanSum grad2;
  const double ih = 1.0 / g.h;
  const int nz = g.dim == 3 ? g.n : 1;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        for (int e = 0; e < g.dim; ++e) {
          for (int d = 0; d < g.dim; ++d) {
            const std::size_t qm = d == 0 ? g.idx(i - 1, j, k)
                                          : (d == 1 ? g.idx(i, j - 1, k) : g.idx(i, j, k - 1));
            const double der = (H[e][q] - H[e][qm]) * ih;
            grad2.add(der * der);
          }
        }
      }

  const CellField dv = div(g, H);
  double curl2 = 0.0;
  if (g.dim == 2) {
    curl2 = ksum_sq(curl2_vec(g, H));
  } else {
    const EdgeField c = curl3_face_to_edge(g, H);
    for (int d = 0; d < 3; ++d) curl2 += ksum_sq(c[d]);
  }
  const double num = std::sqrt(grad2.value() * vol);
  const double den = std::sqrt(h2 * vol) + std::sqrt(curl2 * vol) + std::sqrt(ksum_sq(dv) * vol);
  return num / den;
}

double interp_at(const Grid& g, const std::vector<double>& f,
                 const std::array<double, 3>& offsets, const std::array<double, 3>& p) {
  int base[3] = {0, 0, 0};
  double frac[3] = {0.0, 0.0, 0.0};
  for (int a = 0; a < g.dim; ++a) {
    const double u = (p[a] - g.lo()) / g.h - offsets[a];
    const double fl = std::floor(u);
    base[a] = static_cast<int>(fl);
    frac[a] = u - fl;
  }
  if (g.dim == 2) {
    const double f00 = f[g.idx(base[0], base[1])];
    const double f10 = f[g.idx(base[0] + 1, base[1])];
    const double f01 = f[g.idx(base[0], base[1] + 1)];
    const double f11 = f[g.idx(base[0] + 1, base[1] + 1)];
    return (1 - frac[0]) * (1 - frac[1]) * f00 + frac[0] * (1 - frac[1]) * f10 +
           (1 - frac[0]) * frac[1] * f01 + frac[0] * frac[1] * f11;
  }
  double acc = 0.0;
  for (int dk = 0; dk < 2; ++dk)
    for (int dj = 0; dj < 2; ++dj)
      for (int di = 0; di < 2; ++di) {
        const double w = (di ? frac[0] : 1 - frac[0]) * (dj ? frac[1] : 1 - frac[1]) *
                         (dk ? frac[2] : 1 - frac[2]);
        acc += w * f[g.idx(base[0] + di, base[1] + dj, base[2] + dk)];
      }
  return acc;
}

std::array<double, 3> cell_offsets() { return {0.5, 0.5, 0.5}; }
std::array<double, 3> face_offsets(int d, int dim) {
  std::array<double, 3> o = {0.5, 0.5, dim == 3 ? 0.5 : 0.0};
  o[d] = 0.0;
  return o;
}
std::array<double, 3> corner_offsets() { return {0.0, 0.0, 0.0}; }
std::array<double, 3> edge_offsets(int d) {
  std::array<double, 3> o = {0.0, 0.0, 0.0};
  o[d] = 0.5;
  return o;
}

} // namespace penmhd
