// Discrete differential operators on the periodic staggered grid, chosen so
// the usual vector-calculus identities hold exactly in floating point:
//   div(curl2_scal psi) = 0, div(curl3_edge_to_face E) = 0,
//   curl2_vec(grad phi) = 0, curl3_face_to_edge(grad phi) = 0,
// and the pairs (grad, -div), (curl2_vec, curl2_scal), (curl3_face_to_edge,
// curl3_edge_to_face) are mutually adjoint under the natural inner products.
#pragma once

#include <array>
#include <optional>

#include "grid.hpp"

namespace penmhd {

FaceField grad(const Grid& g, const CellField& phi);
CellField div(const Grid& g, const FaceField& f);

// 2-D: scalar curl of a face vector (at corners) and vector curl of a corner
// scalar (at faces): curl2_scal psi = (d_y psi, -d_x psi).
CornerField curl2_vec(const Grid& g, const FaceField& f);
FaceField curl2_scal(const Grid& g, const CornerField& psi);

// 3-D Yee pair: curl of a face field lives on edges and vice versa.
EdgeField curl3_face_to_edge(const Grid& g, const FaceField& f);
FaceField curl3_edge_to_face(const Grid& g, const EdgeField& e);

// Symmetric gradient of a face velocity. Diagonal entries at cells; the
// off-diagonal entry D_ef (e != f) lives at 2-D corners, or in 3-D on the
// edges along the remaining direction (off[d] holds D_ef with {e,f,d}={0,1,2}).
struct SymGradField {
  CellField d11, d22, d33; // d33 unused in 2-D
  CornerField off2;        // 2-D: D12 at corners
  EdgeField off3;          // 3-D: off3[2]=D12, off3[1]=D13, off3[0]=D23
};
SymGradField sym_grad(const Grid& g, const FaceField& u);

// Divergence of a symmetric stress with the same staggering as SymGradField;
// the exact negative adjoint of sym_grad under the stress inner product
// sum(S11 D11 + S22 D22 + S33 D33) + 2 sum(S_off D_off).
FaceField div_stress(const Grid& g, const CellField& s11, const CellField& s22,
                     const CellField& s33, const CornerField& off2, const EdgeField& off3);

// Component-wise averages between staggerings.
CellField face_to_cell(const Grid& g, const FaceField& f, int d);
FaceField cell_to_faces(const Grid& g, const CellField& c);

// ||grad H|| / (||H|| + ||curl H|| + ||div H||) with all norms discrete L^2.
// Undefined (nullopt) for an identically zero field.
std::optional<double> gaffney_ratio(const Grid& g, const FaceField& H);

// Periodic multilinear interpolation of a staggered scalar array at point p.
// offsets[a] is the node offset along axis a in units of h (0.5 cell-centered,
// 0 on integer lines), matching Grid::cell_center/face_pos/corner_pos.
double interp_at(const Grid& g, const std::vector<double>& f,
                 const std::array<double, 3>& offsets, const std::array<double, 3>& p);

std::array<double, 3> cell_offsets();
std::array<double, 3> face_offsets(int d, int dim);
std::array<double, 3> corner_offsets();
std::array<double, 3> edge_offsets(int d);

} // namespace penmhd
