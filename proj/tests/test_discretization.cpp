#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "nlad/assembly.hpp"
#include "nlad/errors.hpp"
#include "nlad/linear_solver.hpp"
#include "nlad/mesh.hpp"
#include "test_support.hpp"

using nlad::BoundaryTag;
using nlad::LamePair;
using nlad::Mesh;

namespace {

// Independent oracle: Voigt strain-displacement assembly of the element
// stiffness, eps(u):eps(v) contracted as exx*exx + eyy*eyy + 2*exy*exy.
Eigen::Matrix<double, 6, 6> voigt_element(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                                          const Eigen::Vector2d& p2, double lambda, double mu) {
  const double two_a =
      (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y());
  Eigen::Matrix<double, 3, 2> g;
  g << (p1.y() - p2.y()) / two_a, (p2.x() - p1.x()) / two_a,
       (p2.y() - p0.y()) / two_a, (p0.x() - p2.x()) / two_a,
       (p0.y() - p1.y()) / two_a, (p1.x() - p0.x()) / two_a;
  Eigen::Matrix<double, 3, 6> b = Eigen::Matrix<double, 3, 6>::Zero();
  for (int k = 0; k < 3; ++k) {
    b(0, 2 * k) = g(k, 0);
    b(1, 2 * k + 1) = g(k, 1);
    b(2, 2 * k) = 0.5 * g(k, 1);
    b(2, 2 * k + 1) = 0.5 * g(k, 0);
  }
  Eigen::Matrix3d d = Eigen::Matrix3d::Zero();
  d(0, 0) = 2.0 * mu + lambda;
  d(1, 1) = 2.0 * mu + lambda;
  d(0, 1) = lambda;
  d(1, 0) = lambda;
  d(2, 2) = 4.0 * mu;  // engineering pairing of the two shear components
  return 0.5 * two_a * b.transpose() * d * b;
}

}  // namespace

TEST_CASE("mesh entity counts") {
  const Mesh m22 = nlad::build_mesh(2, 2);
  CHECK(m22.num_nodes() == 9);
  CHECK(m22.triangles.size() == 8);
  CHECK(m22.num_contact() == 3);

  const Mesh m44 = nlad::build_mesh(4, 4);
  CHECK(m44.num_nodes() == 25);
  CHECK(m44.triangles.size() == 32);
  CHECK(m44.num_contact() == 5);

  CHECK_THROWS_AS(nlad::build_mesh(1, 4), nlad::ConfigError);
  CHECK_THROWS_AS(nlad::build_mesh(4, 0), nlad::ConfigError);
}

TEST_CASE("boundary tags and contact quadrature") {
  for (int nx : {2, 3, 5, 16}) {
    const Mesh mesh = nlad::build_mesh(nx, 3);
    CHECK(mesh.contact_weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
    // Left edge is clamped, including both of its corners.
    for (int j = 0; j <= 3; ++j) CHECK(mesh.tags[mesh.node_index(0, j)] == BoundaryTag::Dirichlet);
    // The rest of the bottom edge is contact, including the free corner.
    for (int i = 1; i <= nx; ++i) CHECK(mesh.tags[mesh.node_index(i, 0)] == BoundaryTag::Contact);
    CHECK(mesh.tags[mesh.node_index(nx, 3)] == BoundaryTag::Neumann);
    CHECK(mesh.tags[mesh.node_index(1, 1)] == BoundaryTag::Interior);
    // Contact nodes are collinear with ascending arclength.
    for (int c = 0; c < mesh.num_contact(); ++c) {
      CHECK(mesh.nodes(mesh.contact_nodes[c], 1) == 0.0);
      CHECK(mesh.contact_arclength[c] == doctest::Approx(double(c) / nx).epsilon(1e-14));
    }
  }
}

TEST_CASE("triangles are counterclockwise and tile the square") {
  const Mesh mesh = nlad::build_mesh(5, 4);
  double total = 0.0;
  for (const auto& tri : mesh.triangles) {
    const Eigen::Vector2d p0 = mesh.nodes.row(tri[0]);
    const Eigen::Vector2d p1 = mesh.nodes.row(tri[1]);
    const Eigen::Vector2d p2 = mesh.nodes.row(tri[2]);
    const double two_a =
        (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y());
    CHECK(two_a > 0.0);
    total += 0.5 * two_a;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(nlad::lumped_areas(mesh).sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("element stiffness matches the Voigt oracle") {
  const Eigen::Vector2d r0(0.0, 0.0), r1(1.0, 0.0), r2(0.0, 1.0);
  const auto ke = nlad::element_elastic(r0, r1, r2, LamePair{0.0, 0.5});
  const auto oracle = voigt_element(r0, r1, r2, 0.0, 0.5);
  CHECK((ke - oracle).cwiseAbs().maxCoeff() <= 1e-14);

  std::mt19937 rng(41);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Vector2d p0(dist(rng), dist(rng));
    Eigen::Vector2d p1 = p0 + Eigen::Vector2d(0.2 + dist(rng), 0.1 * dist(rng));
    Eigen::Vector2d p2 = p0 + Eigen::Vector2d(0.1 * dist(rng), 0.2 + dist(rng));
    const double lambda = 2.0 * dist(rng);
    const double mu = 0.1 + dist(rng);
    const auto a = nlad::element_elastic(p0, p1, p2, LamePair{lambda, mu});
    const auto b = voigt_element(p0, p1, p2, lambda, mu);
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-11 * (1.0 + b.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("element stiffness annihilates rigid motions") {
  const Eigen::Vector2d p0(0.1, 0.2), p1(0.8, 0.3), p2(0.4, 0.9);
  const auto ke = nlad::element_elastic(p0, p1, p2, LamePair{1.3, 0.8});
  Eigen::Matrix<double, 6, 1> tx, ty, rot;
  tx << 1, 0, 1, 0, 1, 0;
  ty << 0, 1, 0, 1, 0, 1;
  rot << -p0.y(), p0.x(), -p1.y(), p1.x(), -p2.y(), p2.x();
  CHECK((ke * tx).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK((ke * ty).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK((ke * rot).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("global stiffness is symmetric, clamped, and coercive") {
  const Mesh mesh = nlad::build_mesh(4, 4);
  for (const LamePair lame : {LamePair{1.0, 1.0}, LamePair{0.5, 0.5}}) {
    const auto a = nlad::assemble_elastic(mesh, lame);
    CHECK((Eigen::MatrixXd(a) - Eigen::MatrixXd(a).transpose()).cwiseAbs().maxCoeff() <= 1e-14);
    for (int n : mesh.dirichlet_nodes) {
      for (int c = 0; c < 2; ++c) {
        const int d = 2 * n + c;
        CHECK(Eigen::MatrixXd(a).row(d).cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(a.coeff(d, d) == doctest::Approx(1.0).epsilon(1e-14));
      }
    }
    const auto free = nlad_test::free_dofs(mesh);
    const auto a_free = nlad_test::restrict_matrix(a, free);
    CHECK(nlad_test::smallest_eigenvalue(a_free) >= 1e-6);
  }
}

TEST_CASE("surface laplacian stencil on three equispaced nodes") {
  const Mesh mesh = nlad::build_mesh(2, 2);  // contact spacing 0.5
  const auto l = Eigen::MatrixXd(nlad::assemble_surface_laplacian(mesh));
  const double s = 1.0 / 0.5;
  Eigen::Matrix3d expected;
  expected << s, -s, 0.0, -s, 2.0 * s, -s, 0.0, -s, s;
  CHECK((l - expected).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("surface laplacian annihilates constants and matches the difference form") {
  const Mesh mesh = nlad::build_mesh(7, 3);
  const auto l = nlad::assemble_surface_laplacian(mesh);
  const int nc = mesh.num_contact();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(nc);
  CHECK((l * ones).cwiseAbs().maxCoeff() <= 1e-13);

  std::mt19937 rng(9);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd chi(nc);
    for (int i = 0; i < nc; ++i) chi[i] = dist(rng);
    double quad = 0.0;
    for (int i = 0; i + 1 < nc; ++i) {
      const double h = mesh.contact_arclength[i + 1] - mesh.contact_arclength[i];
      const double d = chi[i + 1] - chi[i];
      quad += d * d / h;
    }
    CHECK(chi.dot(l * chi) == doctest::Approx(quad).epsilon(1e-12));
  }
}

TEST_CASE("weighted surface mass diagonal") {
  const Mesh mesh = nlad::build_mesh(4, 4);
  Eigen::VectorXd chi(mesh.num_contact());
  chi << 0.2, 0.4, 0.6, 0.8, 1.0;
  const auto diag = nlad::assemble_surface_mass(mesh, chi);
  for (int c = 0; c < mesh.num_contact(); ++c) {
    const int n = mesh.contact_nodes[c];
    CHECK(diag[2 * n] == doctest::Approx(mesh.contact_weights[c] * chi[c]).epsilon(1e-14));
    CHECK(diag[2 * n + 1] == doctest::Approx(mesh.contact_weights[c] * chi[c]).epsilon(1e-14));
  }
  CHECK(nlad::assemble_surface_mass(mesh, Eigen::VectorXd::Ones(mesh.num_contact())).sum() ==
        doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("load vector equals lumped areas for a vertical body force") {
  const Mesh mesh = nlad::build_mesh(4, 4);
  const auto load = nlad::assemble_load(mesh, {0.0, -1.0}, {0.0, 0.0});
  const auto areas = nlad::lumped_areas(mesh);
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    CHECK(load[2 * n] == 0.0);
    if (mesh.tags[n] == BoundaryTag::Dirichlet) {
      CHECK(load[2 * n + 1] == 0.0);
    } else {
      CHECK(load[2 * n + 1] == doctest::Approx(-areas[n]).epsilon(1e-14));
    }
  }
}

TEST_CASE("traction load lives on the traction edges") {
  const Mesh mesh = nlad::build_mesh(4, 4);
  const auto load = nlad::assemble_load(mesh, {0.0, 0.0}, {1.0, 0.0});
  const double hy = 0.25;
  // Interior node of the right edge: two half-edges.
  CHECK(load[2 * mesh.node_index(4, 2)] == doctest::Approx(hy).epsilon(1e-14));
  // Contact corner shared with the right edge: one half-edge.
  CHECK(load[2 * mesh.node_index(4, 0)] == doctest::Approx(0.5 * hy).epsilon(1e-14));
  // Top-right corner accumulates one half-edge from each side.
  CHECK(load[2 * mesh.node_index(4, 4)] == doctest::Approx(0.5 * hy + 0.125).epsilon(1e-14));
  // Clamped corner of the top edge is zeroed.
  CHECK(load[2 * mesh.node_index(0, 4)] == 0.0);
  // Interior nodes see no traction.
  CHECK(load[2 * mesh.node_index(2, 2)] == 0.0);
}

TEST_CASE("traces on the contact edge") {
  const Mesh mesh = nlad::build_mesh(4, 4);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(2 * mesh.num_nodes());
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    u[2 * n] = 0.0;
    u[2 * n + 1] = -0.2;
  }
  const auto nt = nlad::normal_trace(mesh, u);
  for (int c = 0; c < mesh.num_contact(); ++c) CHECK(nt[c] == doctest::Approx(0.2).epsilon(1e-14));
  const auto tr = nlad::contact_trace(mesh, u);
  CHECK(tr.rows() == mesh.num_contact());
  CHECK(tr.col(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK((tr.col(1).array() + 0.2).abs().maxCoeff() <= 1e-15);
}

TEST_CASE("pcg solves SPD systems and flags indefinite ones") {
  const Mesh mesh = nlad::build_mesh(4, 4);
  const auto a = nlad::assemble_elastic(mesh, LamePair{1.0, 1.0});
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd b(a.rows());
  for (int i = 0; i < b.size(); ++i) b[i] = dist(rng);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(a.rows());
  const auto report = nlad::pcg_solve(a, b, x, 1e-12, 10000);
  CHECK((a * x - b).norm() <= 1e-11);
  CHECK(report.iterations > 0);

  Eigen::SparseMatrix<double> indef(2, 2);
  indef.insert(0, 0) = 1.0;
  indef.insert(1, 1) = -1.0;
  Eigen::VectorXd rhs(2);
  rhs << 1.0, 1.0;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(nlad::pcg_solve(indef, rhs, y, 1e-12, 100), nlad::IndefiniteSystem);
}

TEST_CASE("tridiagonal direct solve") {
  const int n = 40;
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, 3.0);
  Eigen::VectorXd sub = Eigen::VectorXd::Constant(n - 1, -1.0);
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = dist(rng);
  const auto x = nlad::tridiagonal_solve(diag, sub, rhs);
  for (int i = 0; i < n; ++i) {
    double ax = diag[i] * x[i];
    if (i > 0) ax += sub[i - 1] * x[i - 1];
    if (i + 1 < n) ax += sub[i] * x[i + 1];
    CHECK(ax == doctest::Approx(rhs[i]).epsilon(1e-12));
  }
  Eigen::VectorXd bad_diag = diag;
  bad_diag[5] = -10.0;
  CHECK_THROWS_AS(nlad::tridiagonal_solve(bad_diag, sub, rhs), nlad::IndefiniteSystem);
}

TEST_CASE("inverse iteration oracle finds the smallest eigenvalue") {
  Eigen::SparseMatrix<double> m(3, 3);
  m.insert(0, 0) = 4.0;
  m.insert(1, 1) = 0.25;
  m.insert(2, 2) = 7.0;
  CHECK(nlad_test::smallest_eigenvalue(m) == doctest::Approx(0.25).epsilon(1e-10));
}
