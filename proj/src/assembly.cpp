#include "nlad/assembly.hpp"

#include <vector>

namespace nlad {

namespace {

double signed_double_area(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                          const Eigen::Vector2d& p2) {
  return (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y());
}

}  // namespace

Eigen::Matrix<double, 6, 6> element_elastic(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                                            const Eigen::Vector2d& p2, const LamePair& lame) {
  const double two_a = signed_double_area(p0, p1, p2);
  const double area = 0.5 * two_a;
  Eigen::Matrix<double, 3, 2> g;
  g << (p1.y() - p2.y()) / two_a, (p2.x() - p1.x()) / two_a,
       (p2.y() - p0.y()) / two_a, (p0.x() - p2.x()) / two_a,
       (p0.y() - p1.y()) / two_a, (p1.x() - p0.x()) / two_a;

  Eigen::Matrix<double, 6, 6> ke;
  for (int k = 0; k < 3; ++k) {
    for (int c = 0; c < 2; ++c) {
      for (int l = 0; l < 3; ++l) {
        for (int e = 0; e < 2; ++e) {
          const double grad_dot = g(k, 0) * g(l, 0) + g(k, 1) * g(l, 1);
          double v = lame.mu * (g(k, e) * g(l, c));
          if (c == e) v += lame.mu * grad_dot;
          v += lame.lambda * g(k, c) * g(l, e);
          ke(2 * k + c, 2 * l + e) = area * v;
        }
      }
    }
  }
  return ke;
}

Eigen::SparseMatrix<double> assemble_elastic(const Mesh& mesh, const LamePair& lame) {
  const int n_dof = 2 * mesh.num_nodes();
  std::vector<bool> clamped(n_dof, false);
  for (int n : mesh.dirichlet_nodes) {
    clamped[2 * n] = true;
    clamped[2 * n + 1] = true;
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(36 * mesh.triangles.size() + mesh.dirichlet_nodes.size() * 2);
  for (const auto& tri : mesh.triangles) {
    const Eigen::Vector2d p0 = mesh.nodes.row(tri[0]);
    const Eigen::Vector2d p1 = mesh.nodes.row(tri[1]);
    const Eigen::Vector2d p2 = mesh.nodes.row(tri[2]);
    const auto ke = element_elastic(p0, p1, p2, lame);
    for (int k = 0; k < 3; ++k) {
      for (int c = 0; c < 2; ++c) {
        const int row = 2 * tri[k] + c;
        if (clamped[row]) continue;
        for (int l = 0; l < 3; ++l) {
          for (int e = 0; e < 2; ++e) {
            const int col = 2 * tri[l] + e;
            if (clamped[col]) continue;
            triplets.emplace_back(row, col, ke(2 * k + c, 2 * l + e));
          }
        }
      }
    }
  }
  for (int d = 0; d < n_dof; ++d) {
    if (clamped[d]) triplets.emplace_back(d, d, 1.0);
  }

  Eigen::SparseMatrix<double> a(n_dof, n_dof);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();
  return a;
}

Eigen::SparseMatrix<double> assemble_surface_laplacian(const Mesh& mesh) {
  const int nc = mesh.num_contact();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(4 * nc);
  for (int i = 0; i + 1 < nc; ++i) {
    const double h = mesh.contact_arclength[i + 1] - mesh.contact_arclength[i];
    const double w = 1.0 / h;
    triplets.emplace_back(i, i, w);
    triplets.emplace_back(i + 1, i + 1, w);
    triplets.emplace_back(i, i + 1, -w);
    triplets.emplace_back(i + 1, i, -w);
  }
  Eigen::SparseMatrix<double> l(nc, nc);
  l.setFromTriplets(triplets.begin(), triplets.end());
  l.makeCompressed();
  return l;
}

Eigen::VectorXd assemble_surface_mass(const Mesh& mesh, const Eigen::VectorXd& chi) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(2 * mesh.num_nodes());
  for (int c = 0; c < mesh.num_contact(); ++c) {
    const int n = mesh.contact_nodes[c];
    const double v = mesh.contact_weights[c] * chi[c];
    diag[2 * n] = v;
    diag[2 * n + 1] = v;
  }
  return diag;
}

Eigen::VectorXd lumped_areas(const Mesh& mesh) {
  Eigen::VectorXd areas = Eigen::VectorXd::Zero(mesh.num_nodes());
  for (const auto& tri : mesh.triangles) {
    const Eigen::Vector2d p0 = mesh.nodes.row(tri[0]);
    const Eigen::Vector2d p1 = mesh.nodes.row(tri[1]);
    const Eigen::Vector2d p2 = mesh.nodes.row(tri[2]);
    const double third = signed_double_area(p0, p1, p2) / 6.0;
    for (int k = 0; k < 3; ++k) areas[tri[k]] += third;
  }
  return areas;
}

Eigen::VectorXd assemble_load(const Mesh& mesh, const Eigen::Vector2d& f,
                              const Eigen::Vector2d& h) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(2 * mesh.num_nodes());
  const Eigen::VectorXd areas = lumped_areas(mesh);
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    load[2 * n] += f.x() * areas[n];
    load[2 * n + 1] += f.y() * areas[n];
  }

  // Traction edges: the right side and the top side.
  const double hy = 1.0 / mesh.ny;
  for (int j = 0; j < mesh.ny; ++j) {
    const int a = mesh.node_index(mesh.nx, j);
    const int b = mesh.node_index(mesh.nx, j + 1);
    for (int n : {a, b}) {
      load[2 * n] += 0.5 * hy * h.x();
      load[2 * n + 1] += 0.5 * hy * h.y();
    }
  }
  const double hx = 1.0 / mesh.nx;
  for (int i = 0; i < mesh.nx; ++i) {
    const int a = mesh.node_index(i, mesh.ny);
    const int b = mesh.node_index(i + 1, mesh.ny);
    for (int n : {a, b}) {
      load[2 * n] += 0.5 * hx * h.x();
      load[2 * n + 1] += 0.5 * hx * h.y();
    }
  }

  for (int n : mesh.dirichlet_nodes) {
    load[2 * n] = 0.0;
    load[2 * n + 1] = 0.0;
  }
  return load;
}

}  // namespace nlad
