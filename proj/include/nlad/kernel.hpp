#pragma once

#include <Eigen/Dense>

namespace nlad {

// Symmetric, bounded, nonnegative interaction kernel on the contact line.
//
//   constant    k(x, y) = k0
//   elongation  k(x, y) = 4 (x-y)^2 exp(-(x-y)^2 / d^2)
//   tabulated   samples at given line coordinates, validated symmetric and
//               nonnegative at construction
struct KernelSpec {
  enum class Kind { Constant, Elongation, Tabulated };

  static KernelSpec constant(double k0);
  static KernelSpec elongation(double d);
  static KernelSpec tabulated(const Eigen::MatrixXd& samples, const Eigen::VectorXd& nodes);

  Kind kind = Kind::Constant;
  double k0 = 0.0;
  double d = 1.0;
  Eigen::MatrixXd table;
  Eigen::VectorXd sample_nodes;
};

double eval_kernel(const KernelSpec& spec, double x, double y);

// Supremum of the kernel over pairs drawn from a segment of the given length.
double kernel_sup(const KernelSpec& spec, double length);

// Discrete integral operator  (K f)_i = sum_j weights_j k(x_i, x_j) f_j.
// The stored matrix entry is  K_ij = weights_j k(x_i, x_j); application uses
// ascending-j row sums so results are reproducible bit for bit.
class NonlocalOperator {
 public:
  NonlocalOperator(const KernelSpec& spec, Eigen::VectorXd nodes, Eigen::VectorXd weights);

  Eigen::VectorXd apply(const Eigen::VectorXd& field) const;

  // Upper bound  sup|k| * sum_j w_j |f_j|  on the sup norm of apply(field).
  double sup_norm_bound(const Eigen::VectorXd& field) const;

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  double kernel_sup_norm() const { return sup_; }

 private:
  Eigen::MatrixXd matrix_;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
  double sup_;
};

// Relative asymmetry of the weighted pairing <K w1, w2> vs <K w2, w1>.
double duality_residual(const NonlocalOperator& op, const Eigen::VectorXd& w1,
                        const Eigen::VectorXd& w2);

}  // namespace nlad
