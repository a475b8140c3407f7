#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace nlad {

// Boundary role of a node.  Dirichlet wins at the clamped-edge corners; the
// contact corner shared with the traction boundary stays a contact node.
enum class BoundaryTag { Interior, Dirichlet, Neumann, Contact };

// Structured triangulation of the unit square.  Nodes are laid out row by
// row from the contact edge (y = 0) upward; each cell is split into two
// counterclockwise triangles.  The contact edge carries its own arclength
// coordinates and trapezoid quadrature weights (they sum to the edge length).
struct Mesh {
  int nx = 0;
  int ny = 0;
  Eigen::Matrix<double, Eigen::Dynamic, 2> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryTag> tags;

  std::vector<int> contact_nodes;  // ascending x along y = 0, corners included
  Eigen::VectorXd contact_arclength;
  Eigen::VectorXd contact_weights;
  std::vector<int> dirichlet_nodes;

  int num_nodes() const { return static_cast<int>(nodes.rows()); }
  int num_contact() const { return static_cast<int>(contact_nodes.size()); }
  int node_index(int i, int j) const { return j * (nx + 1) + i; }
};

Mesh build_mesh(int nx, int ny);

// Displacement restricted to the contact nodes, one (ux, uy) row per node.
Eigen::MatrixX2d contact_trace(const Mesh& mesh, const Eigen::VectorXd& u);

// Normal component u.n on the contact edge; the outward normal is (0, -1),
// so positive values mean penetration into the support.
Eigen::VectorXd normal_trace(const Mesh& mesh, const Eigen::VectorXd& u);

}  // namespace nlad
