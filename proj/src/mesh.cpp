#include "nlad/mesh.hpp"

#include "nlad/errors.hpp"

namespace nlad {

Mesh build_mesh(int nx, int ny) {
  if (nx < 2) throw ConfigError(ConfigError::Kind::InvalidValue, "mesh.nx", "must be >= 2");
  if (ny < 2) throw ConfigError(ConfigError::Kind::InvalidValue, "mesh.ny", "must be >= 2");

  Mesh mesh;
  mesh.nx = nx;
  mesh.ny = ny;
  const int n_nodes = (nx + 1) * (ny + 1);
  mesh.nodes.resize(n_nodes, 2);
  mesh.tags.assign(n_nodes, BoundaryTag::Interior);

  const double hx = 1.0 / nx;
  const double hy = 1.0 / ny;
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const int n = mesh.node_index(i, j);
      mesh.nodes(n, 0) = i * hx;
      mesh.nodes(n, 1) = j * hy;
      if (i == nx || j == ny) mesh.tags[n] = BoundaryTag::Neumann;
      if (j == 0) mesh.tags[n] = BoundaryTag::Contact;
      if (i == 0) mesh.tags[n] = BoundaryTag::Dirichlet;
    }
  }

  mesh.triangles.reserve(2 * nx * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int a = mesh.node_index(i, j);
      const int b = mesh.node_index(i + 1, j);
      const int c = mesh.node_index(i + 1, j + 1);
      const int d = mesh.node_index(i, j + 1);
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
  }

  mesh.contact_nodes.reserve(nx + 1);
  mesh.contact_arclength.resize(nx + 1);
  mesh.contact_weights.resize(nx + 1);
  for (int i = 0; i <= nx; ++i) {
    mesh.contact_nodes.push_back(mesh.node_index(i, 0));
    mesh.contact_arclength[i] = i * hx;
    mesh.contact_weights[i] = (i == 0 || i == nx) ? 0.5 * hx : hx;
  }

  for (int n = 0; n < n_nodes; ++n) {
    if (mesh.tags[n] == BoundaryTag::Dirichlet) mesh.dirichlet_nodes.push_back(n);
  }
  return mesh;
}

Eigen::MatrixX2d contact_trace(const Mesh& mesh, const Eigen::VectorXd& u) {
  Eigen::MatrixX2d trace(mesh.num_contact(), 2);
  for (int c = 0; c < mesh.num_contact(); ++c) {
    const int n = mesh.contact_nodes[c];
    trace(c, 0) = u[2 * n];
    trace(c, 1) = u[2 * n + 1];
  }
  return trace;
}

Eigen::VectorXd normal_trace(const Mesh& mesh, const Eigen::VectorXd& u) {
  Eigen::VectorXd t(mesh.num_contact());
  for (int c = 0; c < mesh.num_contact(); ++c) {
    t[c] = -u[2 * mesh.contact_nodes[c] + 1];
  }
  return t;
}

}  // namespace nlad
