#include "coefficients.hpp"

#include <stdexcept>

namespace penmhd {

Scenario parse_scenario(const std::string& name) {
  if (name == "none") return Scenario::None;
  if (name == "isolator") return Scenario::Isolator;
  if (name == "pmc") return Scenario::Pmc;
  if (name == "pec") return Scenario::Pec;
  if (name == "isolator_type") return Scenario::IsolatorType;
  throw std::invalid_argument("unknown scenario '" + name +
                              "' (expected none|isolator|pmc|pec|isolator_type)");
}

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::None: return "none";
    case Scenario::Isolator: return "isolator";
    case Scenario::Pmc: return "pmc";
    case Scenario::Pec: return "pec";
    case Scenario::IsolatorType: return "isolator_type";
  }
  return "?";
}

CoefficientSet schedule(Scenario s, double eps, int dim, const FluidCoefficients& fc) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  if (!(fc.nu_F > 0.0 && fc.mu_F > 0.0 && fc.mu_int > 0.0 && fc.eta_F > 0.0 && fc.eta_int > 0.0))
    throw std::invalid_argument("fluid coefficients nu_F, mu_F, mu_int, eta_F, eta_int must be positive");
  if (fc.lambda_F < 0.0) throw std::invalid_argument("lambda_F must be non-negative");

  CoefficientSet c;
  if (s == Scenario::None) {
    c.beta = {0.0, 0.0, 0.0};
    c.nu = {fc.nu_F, fc.nu_F, fc.nu_F};
    c.lambda = {fc.lambda_F, fc.lambda_F, fc.lambda_F};
    c.mu = {fc.mu_F, fc.mu_F, fc.mu_F};
    c.eta = {fc.eta_F, fc.eta_F, fc.eta_F};
    return c;
  }

  const double pen = 1.0 / eps;
  c.beta = {0.0, pen, pen};
  if (dim == 3) {
    c.nu = {fc.nu_F, pen, pen};
    c.lambda = {fc.lambda_F, fc.lambda_F, fc.lambda_F};
  } else {
    c.nu = {fc.nu_F, fc.nu_F, fc.nu_F};
    c.lambda = {fc.lambda_F, pen, pen};
  }
  c.mu = {fc.mu_F, fc.mu_int, fc.mu_F};
  c.eta = {fc.eta_F, fc.eta_int, fc.eta_F};
  switch (s) {
    case Scenario::Isolator: c.eta.exterior = pen; break;
    case Scenario::Pmc: c.mu.exterior = pen; break;
    case Scenario::Pec: c.mu.exterior = eps; c.eta.exterior = eps; break;
    case Scenario::IsolatorType: c.mu.exterior = eps; c.eta.exterior = pen; break;
    default: break;
  }
  return c;
}

double coefficient_at(const std::array<double, 3>& p, const CoefficientTriple& t,
                      const RegionMap& rm, int dim) {
  const double q_out = mollifier_ramp(RegionMap::sdist(p, rm.R_outer, dim), rm.band_width);
  const double q_in = rm.R_inner > 0.0
                          ? mollifier_ramp(RegionMap::sdist(p, rm.R_inner, dim), rm.band_width)
                          : 1.0;
  return t.interior + (t.fluid - t.interior) * q_in + (t.exterior - t.fluid) * q_out;
}

CoefficientField build_coefficient_field(const Grid& g, const RegionMap& rm,
                                         const CoefficientSet& set) {
  CoefficientField f;
  f.nu_c = g.make_cell();
  f.lambda_c = g.make_cell();
  f.mu_c = g.make_cell();
  f.eta_c = g.make_cell();
  f.beta_c = g.make_cell();
  f.beta_f = g.make_vec();
  f.mu_f = g.make_vec();

  const int nz = g.dim == 3 ? g.n : 1;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t q = g.idx(i, j, k);
        const auto pc = g.cell_center(i, j, k);
        f.nu_c[q] = coefficient_at(pc, set.nu, rm, g.dim);
        f.lambda_c[q] = coefficient_at(pc, set.lambda, rm, g.dim);
        f.mu_c[q] = coefficient_at(pc, set.mu, rm, g.dim);
        f.eta_c[q] = coefficient_at(pc, set.eta, rm, g.dim);
        f.beta_c[q] = coefficient_at(pc, set.beta, rm, g.dim);
        for (int d = 0; d < g.dim; ++d) {
          const auto pf = g.face_pos(d, i, j, k);
          f.beta_f[d][q] = coefficient_at(pf, set.beta, rm, g.dim);
          f.mu_f[d][q] = coefficient_at(pf, set.mu, rm, g.dim);
        }
      }

  if (g.dim == 2) {
    f.nu_x = g.make_corner();
    f.eta_x = g.make_corner();
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t q = g.idx(i, j);
        const auto px = g.corner_pos(i, j);
        f.nu_x[q] = coefficient_at(px, set.nu, rm, 2);
        f.eta_x[q] = coefficient_at(px, set.eta, rm, 2);
      }
  } else {
    f.nu_e = g.make_vec();
    f.eta_e = g.make_vec();
    for (int k = 0; k < g.n; ++k)
      for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
          const std::size_t q = g.idx(i, j, k);
          for (int d = 0; d < 3; ++d) {
            const auto pe = g.edge_pos(d, i, j, k);
            f.nu_e[d][q] = coefficient_at(pe, set.nu, rm, 3);
            f.eta_e[d][q] = coefficient_at(pe, set.eta, rm, 3);
          }
        }
  }
  return f;
}

} // namespace penmhd
