#ifndef STAGFV_MESH_HPP
#define STAGFV_MESH_HPP

#include <array>
#include <string>
#include <vector>

#include "stagfv/core.hpp"

namespace stagfv {

// Primal cell.  Faces are ordered [left,right] in 1D and [W,E,S,N] in 2D;
// unused slots hold -1.
struct Cell {
  double volume = 0.0;
  Vec2 centroid;
  double diameter = 0.0;  // h_K
  std::array<int, 4> faces{-1, -1, -1, -1};
  int n_faces = 0;  // zeta
};

// Primal face sigma together with its diamond dual cell D_sigma.
// `normal` points out of the owner cell `cell_in`; for an interior face
// sigma = K|L the neighbour sees the opposite normal.
struct Face {
  double area = 0.0;  // |sigma| (1 in 1D)
  Vec2 normal;
  Vec2 center;
  int cell_in = -1;   // K
  int cell_out = -1;  // L, or -1 on the boundary
  int axis = 0;       // normal axis (cells are axis-aligned rectangles)
  double d_sigma = 0.0;      // |x_K - x_L|, 0 on the boundary
  double vol_dual = 0.0;     // |D_sigma|
  double vol_half_in = 0.0;  // |D_{K,sigma}| = |K|/zeta
  double vol_half_out = 0.0; // |D_{L,sigma}|, 0 on the boundary

  bool boundary() const { return cell_out < 0; }
};

// Dual face eps = sigma|sigma' between two half-diamonds of one primal cell.
// Fluxes through eps are stored oriented out of D_{face_a} into D_{face_b}.
// far_face_* give the face whose dual cell sits just upstream of D_{face_*}
// across eps' mirror image (used by the MUSCL stencil), -1 when the mirror
// cell does not exist.
struct DualFace {
  int cell = -1;
  int face_a = -1;
  int face_b = -1;
  int local_a = -1;  // local index of face_a within cell
  int local_b = -1;
  double area = 0.0;  // only feeds the CFL estimate
  int far_face_a = -1;
  int far_face_b = -1;
};

// Incidence of a dual face on a dual cell D_sigma: F_{sigma,eps} equals
// sign * (stored oriented flux).
struct DualIncidence {
  int dual_face = -1;
  double sign = 0.0;
};

// Coefficients xi_{eps,sigma'} expressing dual mass fluxes as fixed linear
// combinations of the primal fluxes of the containing cell.  They depend on
// the reference cell topology only.
struct XiTable {
  int zeta = 0;
  // one row per reference dual face: (0,1) for zeta=2;
  // (W,S),(W,N),(E,S),(E,N) for zeta=4
  std::vector<std::array<double, 4>> rows;

  int row_index(int local_a, int local_b) const;
};

struct MeshRegularity {
  double theta1 = 1.0;  // max volume ratio across interior faces
  double theta2 = 0.0;  // perimeter/volume * neighbour-diameter measure
  double h = 0.0;       // max cell diameter
};

struct StaggeredMesh {
  int dim = 0;
  std::vector<Cell> cells;
  std::vector<Face> faces;
  std::vector<DualFace> dual_faces;
  std::vector<std::vector<DualIncidence>> face_duals;  // E(D_sigma), per face
  XiTable xi;

  // structured-grid metadata (meshes are always tensor products)
  std::array<int, 2> counts{0, 0};
  std::vector<double> x_edges;
  std::vector<double> y_edges;

  int n_cells() const { return static_cast<int>(cells.size()); }
  int n_faces() const { return static_cast<int>(faces.size()); }
  double domain_volume() const;

  // Outward normal of face f as seen from cell c (c must be adjacent).
  Vec2 normal_from(int f, int c) const {
    const Face& fc = faces[f];
    return c == fc.cell_in ? fc.normal : -fc.normal;
  }
  // Half-diamond volume |D_{c,f}|.
  double half_volume(int f, int c) const {
    const Face& fc = faces[f];
    return c == fc.cell_in ? fc.vol_half_in : fc.vol_half_out;
  }
  int other_cell(int f, int c) const {
    const Face& fc = faces[f];
    return c == fc.cell_in ? fc.cell_out : fc.cell_in;
  }
};

// Minimum-norm solution of the half-diamond balance constraints; solved once
// per zeta and cached.  zeta must be 2 or 4.
const XiTable& solve_xi_coefficients(int zeta);

// 1D mesh from explicit breakpoints (strictly increasing, >= 2 entries).
StaggeredMesh build_interval_mesh(const std::vector<double>& edges);

// 2D tensor-product mesh from per-axis breakpoints.
StaggeredMesh build_tensor_mesh(const std::vector<double>& x_edges,
                                const std::vector<double>& y_edges);

// Uniform mesh: extents[a] = {lo, hi} and counts[a] >= 1 per axis.
StaggeredMesh build_mesh(int dim, const std::vector<std::array<double, 2>>& extents,
                         const std::vector<int>& counts);

MeshRegularity regularity(const StaggeredMesh& mesh);

// Plain-text report: cell/face counts, theta1, theta2, h.
std::string mesh_summary(const StaggeredMesh& mesh);

}  // namespace stagfv

#endif
