// Barotropic equation of state p = a rho^gamma, the associated pressure
// potential (the internal-energy density whose second derivative is p'/rho),
// stress tensors, and the discrete total energy.
//
// Symmetric 2-tensors are packed as {11, 22, 33, 12, 13, 23}; in 2-D the
// 33/13/23 slots are zero.
#pragma once

#include <array>

#include "coefficients.hpp"
#include "grid.hpp"

namespace penmhd {

struct EosParams {
  double gamma = 1.4;
  double a = 1.0;
};

using SymTensor = std::array<double, 6>;

double pressure(double rho, const EosParams& eos);          // a rho^gamma, rho >= 0
double pressure_potential(double rho, const EosParams& eos); // a rho^gamma / (gamma - 1)
double sound_speed(double rho, const EosParams& eos);        // sqrt(a gamma rho^(gamma-1))

// Magnetic (Maxwell) stress mu (H (x) H - 1/2 |H|^2 I) at a point.
SymTensor maxwell_tensor(const std::array<double, 3>& H, double mu, int dim);

// Viscous stress from the symmetric gradient D:
// S = 2 nu (D - tr(D)/d I) + lambda tr(D) I.
SymTensor viscous_stress(const SymTensor& D, double nu, double lambda, int dim);

// Midpoint-rule total energy over cells: kinetic |m|^2/(2 rho) + pressure
// potential + magnetic mu |H|^2 / 2, with face-centered m and H averaged to
// cell centers. Throws numeric_error on negative density or on vacuum cells
// carrying momentum.
double total_energy(const Grid& g, const CellField& rho, const FaceField& m,
                    const FaceField& H, const CellField& mu_c, const EosParams& eos);

} // namespace penmhd
