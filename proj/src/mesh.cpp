#include "stagfv/mesh.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace stagfv {

namespace {

// Reference dual-face topology: pairs of local face indices (a, b), fluxes
// oriented from D_a to D_b.
std::vector<std::array<int, 2>> reference_dual_faces(int zeta) {
  if (zeta == 2) return {{0, 1}};
  // x-faces W=0, E=1 paired with y-faces S=2, N=3
  return {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
}

// The half-diamond mass balance, with the flux through the primal face sigma
// itself fixed to F_{K,sigma}, requires for every local face s and every
// primal flux vector F:
//   sum_{eps incident to D_s} sign(s,eps) * Phi_eps = (1/zeta) sum_j F_j - F_s.
// Writing Phi_eps = sum_j xi[eps][j] F_j and testing against unit flux
// vectors gives zeta^2 linear equations for the xi coefficients.  The system
// is consistent and underdetermined; we take the minimum-norm solution.
XiTable compute_xi(int zeta) {
  if (zeta != 2 && zeta != 4)
    throw ConfigError("xi coefficients: unsupported face count " + std::to_string(zeta));

  const auto duals = reference_dual_faces(zeta);
  const int n_dual = static_cast<int>(duals.size());
  const int n_unknowns = n_dual * zeta;
  const int n_eq = zeta * zeta;

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_eq, n_unknowns);
  Eigen::VectorXd b(n_eq);
  for (int s = 0; s < zeta; ++s) {
    for (int j = 0; j < zeta; ++j) {
      const int eq = s * zeta + j;
      for (int r = 0; r < n_dual; ++r) {
        double sign = 0.0;
        if (duals[r][0] == s) sign = 1.0;
        if (duals[r][1] == s) sign = -1.0;
        if (sign != 0.0) A(eq, r * zeta + j) = sign;
      }
      b(eq) = 1.0 / zeta - (s == j ? 1.0 : 0.0);
    }
  }

  Eigen::VectorXd x = A.completeOrthogonalDecomposition().solve(b);

  // The minimum-norm coefficients land on small dyadic rationals (multiples
  // of 1/8); snapping removes the last bits of solver round-off so the
  // balance below holds exactly for unit flux vectors.
  Eigen::VectorXd snapped = x;
  for (int i = 0; i < snapped.size(); ++i) {
    const double scaled = snapped(i) * 8.0;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) < 1e-6) snapped(i) = rounded / 8.0;
  }
  if ((A * snapped - b).lpNorm<Eigen::Infinity>() < 1e-12) x = snapped;

  const double residual = (A * x - b).lpNorm<Eigen::Infinity>();
  if (residual > 1e-12)
    throw SolverError("xi coefficient solve failed, residual " + std::to_string(residual));

  XiTable table;
  table.zeta = zeta;
  table.rows.resize(n_dual);
  for (int r = 0; r < n_dual; ++r) {
    table.rows[r].fill(0.0);
    for (int j = 0; j < zeta; ++j) table.rows[r][j] = x(r * zeta + j);
  }
  return table;
}

std::vector<double> uniform_edges(double lo, double hi, int n) {
  std::vector<double> e(n + 1);
  const double h = (hi - lo) / n;
  for (int i = 0; i <= n; ++i) e[i] = lo + i * h;
  e[n] = hi;
  return e;
}

void check_edges(const std::vector<double>& edges, const char* axis) {
  if (edges.size() < 2)
    throw ConfigError(std::string("mesh: need at least one cell along ") + axis);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (!(edges[i + 1] > edges[i]))
      throw ConfigError(std::string("mesh: breakpoints along ") + axis +
                        " must be strictly increasing");
}

}  // namespace

int XiTable::row_index(int local_a, int local_b) const {
  if (zeta == 2) return 0;
  return 2 * local_a + (local_b - 2);
}

const XiTable& solve_xi_coefficients(int zeta) {
  static const XiTable xi2 = compute_xi(2);
  static const XiTable xi4 = compute_xi(4);
  if (zeta == 2) return xi2;
  if (zeta == 4) return xi4;
  throw ConfigError("xi coefficients: unsupported face count " + std::to_string(zeta));
}

double StaggeredMesh::domain_volume() const {
  double v = 0.0;
  for (const Cell& c : cells) v += c.volume;
  return v;
}

StaggeredMesh build_interval_mesh(const std::vector<double>& edges) {
  check_edges(edges, "x");
  const int n = static_cast<int>(edges.size()) - 1;

  StaggeredMesh mesh;
  mesh.dim = 1;
  mesh.counts = {n, 1};
  mesh.x_edges = edges;
  mesh.xi = solve_xi_coefficients(2);

  mesh.cells.resize(n);
  mesh.faces.resize(n + 1);

  for (int i = 0; i < n; ++i) {
    Cell& c = mesh.cells[i];
    c.volume = edges[i + 1] - edges[i];
    c.centroid = {0.5 * (edges[i] + edges[i + 1]), 0.0};
    c.diameter = c.volume;
    c.faces = {i, i + 1, -1, -1};
    c.n_faces = 2;
  }
  for (int f = 0; f <= n; ++f) {
    Face& fc = mesh.faces[f];
    fc.area = 1.0;
    fc.center = {edges[f], 0.0};
    fc.axis = 0;
    if (f == 0) {
      fc.cell_in = 0;
      fc.normal = {-1.0, 0.0};  // outward from the first cell
    } else {
      fc.cell_in = f - 1;
      fc.cell_out = f < n ? f : -1;
      fc.normal = {1.0, 0.0};
    }
    fc.vol_half_in = mesh.cells[fc.cell_in].volume / 2.0;
    fc.vol_half_out = fc.boundary() ? 0.0 : mesh.cells[fc.cell_out].volume / 2.0;
    fc.vol_dual = fc.vol_half_in + fc.vol_half_out;
    if (!fc.boundary())
      fc.d_sigma = std::abs(mesh.cells[fc.cell_in].centroid.x -
                            mesh.cells[fc.cell_out].centroid.x);
  }

  // One dual face per cell (the cell centre), joining the dual cells of the
  // left and right faces.  The mirror image across a face lies in the
  // neighbour cell, on the matching side.
  mesh.dual_faces.resize(n);
  for (int i = 0; i < n; ++i) {
    DualFace& d = mesh.dual_faces[i];
    d.cell = i;
    d.face_a = mesh.cells[i].faces[0];
    d.face_b = mesh.cells[i].faces[1];
    d.local_a = 0;
    d.local_b = 1;
    d.area = 1.0;
    d.far_face_a = i > 0 ? mesh.cells[i - 1].faces[0] : -1;
    d.far_face_b = i + 1 < n ? mesh.cells[i + 1].faces[1] : -1;
  }

  mesh.face_duals.resize(mesh.faces.size());
  for (int e = 0; e < n; ++e) {
    mesh.face_duals[mesh.dual_faces[e].face_a].push_back({e, 1.0});
    mesh.face_duals[mesh.dual_faces[e].face_b].push_back({e, -1.0});
  }
  return mesh;
}

StaggeredMesh build_tensor_mesh(const std::vector<double>& x_edges,
                                const std::vector<double>& y_edges) {
  check_edges(x_edges, "x");
  check_edges(y_edges, "y");
  const int nx = static_cast<int>(x_edges.size()) - 1;
  const int ny = static_cast<int>(y_edges.size()) - 1;

  StaggeredMesh mesh;
  mesh.dim = 2;
  mesh.counts = {nx, ny};
  mesh.x_edges = x_edges;
  mesh.y_edges = y_edges;
  mesh.xi = solve_xi_coefficients(4);

  mesh.cells.resize(static_cast<std::size_t>(nx) * ny);
  const int n_xfaces = (nx + 1) * ny;
  mesh.faces.resize(n_xfaces + static_cast<std::size_t>(nx) * (ny + 1));

  auto cell_id = [nx](int i, int j) { return j * nx + i; };
  auto xface_id = [nx](int i, int j) { return j * (nx + 1) + i; };
  auto yface_id = [nx, n_xfaces](int i, int j) { return n_xfaces + j * nx + i; };

  for (int j = 0; j < ny; ++j) {
    const double hy = y_edges[j + 1] - y_edges[j];
    for (int i = 0; i < nx; ++i) {
      const double hx = x_edges[i + 1] - x_edges[i];
      Cell& c = mesh.cells[cell_id(i, j)];
      c.volume = hx * hy;
      c.centroid = {0.5 * (x_edges[i] + x_edges[i + 1]),
                    0.5 * (y_edges[j] + y_edges[j + 1])};
      c.diameter = std::hypot(hx, hy);
      c.faces = {xface_id(i, j), xface_id(i + 1, j), yface_id(i, j), yface_id(i, j + 1)};
      c.n_faces = 4;
    }
  }

  // x-faces: normal along x, owner is the left cell when it exists
  for (int j = 0; j < ny; ++j) {
    const double hy = y_edges[j + 1] - y_edges[j];
    for (int i = 0; i <= nx; ++i) {
      Face& f = mesh.faces[xface_id(i, j)];
      f.area = hy;
      f.center = {x_edges[i], 0.5 * (y_edges[j] + y_edges[j + 1])};
      f.axis = 0;
      if (i == 0) {
        f.cell_in = cell_id(0, j);
        f.normal = {-1.0, 0.0};
      } else {
        f.cell_in = cell_id(i - 1, j);
        f.cell_out = i < nx ? cell_id(i, j) : -1;
        f.normal = {1.0, 0.0};
      }
    }
  }
  // y-faces: normal along y, owner is the bottom cell when it exists
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double hx = x_edges[i + 1] - x_edges[i];
      Face& f = mesh.faces[yface_id(i, j)];
      f.area = hx;
      f.center = {0.5 * (x_edges[i] + x_edges[i + 1]), y_edges[j]};
      f.axis = 1;
      if (j == 0) {
        f.cell_in = cell_id(i, 0);
        f.normal = {0.0, -1.0};
      } else {
        f.cell_in = cell_id(i, j - 1);
        f.cell_out = j < ny ? cell_id(i, j) : -1;
        f.normal = {0.0, 1.0};
      }
    }
  }

  for (Face& f : mesh.faces) {
    f.vol_half_in = mesh.cells[f.cell_in].volume / 4.0;
    f.vol_half_out = f.boundary() ? 0.0 : mesh.cells[f.cell_out].volume / 4.0;
    f.vol_dual = f.vol_half_in + f.vol_half_out;
    if (!f.boundary())
      f.d_sigma = (mesh.cells[f.cell_in].centroid - mesh.cells[f.cell_out].centroid).norm();
  }

  // Four dual faces per cell: each half-diamond (cone over a face with apex
  // at the centroid) shares one dual face with each perpendicular
  // half-diamond; opposite half-diamonds only meet at the apex.  The mirror
  // of (x-face, y-face) across the x-face keeps the y-side label, and vice
  // versa.
  mesh.dual_faces.reserve(mesh.cells.size() * 4);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int c = cell_id(i, j);
      const double hx = x_edges[i + 1] - x_edges[i];
      const double hy = y_edges[j + 1] - y_edges[j];
      const double half_diag = 0.5 * std::hypot(hx, hy);
      const int nb_x[2] = {i > 0 ? cell_id(i - 1, j) : -1,
                           i + 1 < nx ? cell_id(i + 1, j) : -1};
      const int nb_y[2] = {j > 0 ? cell_id(i, j - 1) : -1,
                           j + 1 < ny ? cell_id(i, j + 1) : -1};
      for (int a = 0; a < 2; ++a) {
        for (int bb = 0; bb < 2; ++bb) {
          const int b = 2 + bb;
          DualFace d;
          d.cell = c;
          d.local_a = a;
          d.local_b = b;
          d.face_a = mesh.cells[c].faces[a];
          d.face_b = mesh.cells[c].faces[b];
          d.area = half_diag;
          d.far_face_a = nb_x[a] >= 0 ? mesh.cells[nb_x[a]].faces[b] : -1;
          d.far_face_b = nb_y[bb] >= 0 ? mesh.cells[nb_y[bb]].faces[a] : -1;
          mesh.dual_faces.push_back(d);
        }
      }
    }
  }

  mesh.face_duals.resize(mesh.faces.size());
  for (std::size_t e = 0; e < mesh.dual_faces.size(); ++e) {
    mesh.face_duals[mesh.dual_faces[e].face_a].push_back({static_cast<int>(e), 1.0});
    mesh.face_duals[mesh.dual_faces[e].face_b].push_back({static_cast<int>(e), -1.0});
  }
  return mesh;
}

StaggeredMesh build_mesh(int dim, const std::vector<std::array<double, 2>>& extents,
                         const std::vector<int>& counts) {
  if (dim != 1 && dim != 2) throw ConfigError("mesh: dim must be 1 or 2");
  if (extents.size() < static_cast<std::size_t>(dim) ||
      counts.size() < static_cast<std::size_t>(dim))
    throw ConfigError("mesh: missing extents or counts");
  for (int a = 0; a < dim; ++a) {
    if (counts[a] < 1)
      throw ConfigError("mesh: cell count must be positive along axis " + std::to_string(a));
    if (!(extents[a][1] > extents[a][0]))
      throw ConfigError("mesh: degenerate extent along axis " + std::to_string(a));
  }
  if (dim == 1) return build_interval_mesh(uniform_edges(extents[0][0], extents[0][1], counts[0]));
  return build_tensor_mesh(uniform_edges(extents[0][0], extents[0][1], counts[0]),
                           uniform_edges(extents[1][0], extents[1][1], counts[1]));
}

MeshRegularity regularity(const StaggeredMesh& mesh) {
  MeshRegularity reg;
  for (const Cell& c : mesh.cells) reg.h = std::max(reg.h, c.diameter);
  for (const Face& f : mesh.faces) {
    if (f.boundary()) continue;
    const double vk = mesh.cells[f.cell_in].volume;
    const double vl = mesh.cells[f.cell_out].volume;
    reg.theta1 = std::max({reg.theta1, vk / vl, vl / vk});
  }
  for (int k = 0; k < mesh.n_cells(); ++k) {
    const Cell& c = mesh.cells[k];
    double perimeter = 0.0;
    double max_pair = 0.0;
    for (int s = 0; s < c.n_faces; ++s) {
      const Face& f = mesh.faces[c.faces[s]];
      perimeter += f.area;
      if (!f.boundary()) {
        const int l = mesh.other_cell(c.faces[s], k);
        max_pair = std::max(max_pair, c.diameter + mesh.cells[l].diameter);
      }
    }
    reg.theta2 = std::max(reg.theta2, perimeter / c.volume * max_pair);
  }
  return reg;
}

std::string mesh_summary(const StaggeredMesh& mesh) {
  const MeshRegularity reg = regularity(mesh);
  int n_boundary = 0;
  for (const Face& f : mesh.faces)
    if (f.boundary()) ++n_boundary;
  std::ostringstream os;
  os << "mesh: dim=" << mesh.dim << " cells=" << mesh.n_cells()
     << " faces=" << mesh.n_faces() << " (boundary " << n_boundary << ")"
     << " dual_faces=" << mesh.dual_faces.size() << "\n"
     << "      h=" << reg.h << " theta1=" << reg.theta1 << " theta2=" << reg.theta2
     << " |Omega|=" << mesh.domain_volume() << "\n";
  return os.str();
}

}  // namespace stagfv
