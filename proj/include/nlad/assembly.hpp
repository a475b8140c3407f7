#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "nlad/mesh.hpp"

namespace nlad {

struct LamePair {
  double lambda = 0.0;
  double mu = 0.0;
};

// Element stiffness of the isotropic tensor  2 mu eps(u):eps(v) + lambda div u div v
// on one triangle; dof order (u0x, u0y, u1x, u1y, u2x, u2y).
Eigen::Matrix<double, 6, 6> element_elastic(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                                            const Eigen::Vector2d& p2, const LamePair& lame);

// Global P1 stiffness with clamped-edge rows and columns eliminated
// symmetrically (unit diagonal).  v'Av equals the bilinear form for every
// discrete field vanishing on the clamped edge.
Eigen::SparseMatrix<double> assemble_elastic(const Mesh& mesh, const LamePair& lame);

// One-dimensional P1 stiffness along the contact edge (natural ends):
// row sums vanish and the quadratic form is sum (chi_{i+1}-chi_i)^2 / h_i.
Eigen::SparseMatrix<double> assemble_surface_laplacian(const Mesh& mesh);

// Diagonal of the chi-weighted lumped surface mass over displacement dofs:
// w_i * chi_i at both components of contact node i, zero elsewhere.
Eigen::VectorXd assemble_surface_mass(const Mesh& mesh, const Eigen::VectorXd& chi);

// Lumped nodal areas, sum over incident triangles of |T| / 3.
Eigen::VectorXd lumped_areas(const Mesh& mesh);

// Nodal load vector of body force f (lumped bulk mass) plus boundary
// traction h on the traction edges (lumped edge mass).  Clamped rows zeroed.
Eigen::VectorXd assemble_load(const Mesh& mesh, const Eigen::Vector2d& f,
                              const Eigen::Vector2d& h);

}  // namespace nlad
