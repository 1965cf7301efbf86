#include "eos.hpp"

#include <cmath>

#include "errors.hpp"

namespace penmhd {

double pressure(double rho, const EosParams& eos) {
  if (rho < 0.0) throw numeric_error("pressure: negative density");
  return eos.a * std::pow(rho, eos.gamma);
}

double pressure_potential(double rho, const EosParams& eos) {
  if (rho < 0.0) throw numeric_error("pressure_potential: negative density");
  return eos.a * std::pow(rho, eos.gamma) / (eos.gamma - 1.0);
}

double sound_speed(double rho, const EosParams& eos) {
  if (rho < 0.0) throw numeric_error("sound_speed: negative density");
  return std::sqrt(eos.a * eos.gamma * std::pow(rho, eos.gamma - 1.0));
}

SymTensor maxwell_tensor(const std::array<double, 3>& H, double mu, int dim) {
  const double h2 = H[0] * H[0] + H[1] * H[1] + (dim == 3 ? H[2] * H[2] : 0.0);
  SymTensor t{};
  t[0] = mu * (H[0] * H[0] - 0.5 * h2);
  t[1] = mu * (H[1] * H[1] - 0.5 * h2);
  t[3] = mu * H[0] * H[1];
  if (dim == 3) {
    t[2] = mu * (H[2] * H[2] - 0.5 * h2);
    t[4] = mu * H[0] * H[2];
    t[5] = mu * H[1] * H[2];
  }
  return t;
}

SymTensor viscous_stress(const SymTensor& D, double nu, double lambda, int dim) {
  const double tr = D[0] + D[1] + (dim == 3 ? D[2] : 0.0);
  const double iso = (lambda - 2.0 * nu / dim) * tr;
  SymTensor s{};
  s[0] = 2.0 * nu * D[0] + iso;
  s[1] = 2.0 * nu * D[1] + iso;
  s[3] = 2.0 * nu * D[3];
  if (dim == 3) {
    s[2] = 2.0 * nu * D[2] + iso;
    s[4] = 2.0 * nu * D[4];
    s[5] = 2.0 * nu * D[5];
  }
  return s;
}

double total_energy(const Grid& g, const CellField& rho, const FaceField& m,
                    const FaceField& H, const CellField& mu_c, const EosParams& eos) {
  const double vol = std::pow(g.h, g.dim);
  const int nz = g.dim == 3 ? g.n : 1;
  KahanSum e;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        if (rho[q] < 0.0) throw numeric_error("total_energy: negative density");
        double m2 = 0.0, h2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
          const std::size_t qp = d == 0 ? g.idx(i + 1, j, k)
                                        : (d == 1 ? g.idx(i, j + 1, k) : g.idx(i, j, k + 1));
          const double mc = 0.5 * (m[d][q] + m[d][qp]);
          const double hc = 0.5 * (H[d][q] + H[d][qp]);
          m2 += mc * mc;
          h2 += hc * hc;
        }
        double kin = 0.0;
        if (rho[q] > 0.0) {
          kin = 0.5 * m2 / rho[q];
        } else if (m2 > 0.0) {
          throw numeric_error("total_energy: momentum on a vacuum cell");
        }
        e.add(kin + pressure_potential(rho[q], eos) + 0.5 * mu_c[q] * h2);
      }
  return e.value() * vol;
}

} // namespace penmhd
