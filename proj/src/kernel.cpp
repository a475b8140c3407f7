#include "nlad/kernel.hpp"

#include <cmath>

#include "nlad/errors.hpp"

namespace nlad {

KernelSpec KernelSpec::constant(double k0) {
  if (!(k0 >= 0.0) || !std::isfinite(k0)) {
    throw ConfigError(ConfigError::Kind::InvalidValue, "kernel.k0", "must be finite and >= 0");
  }
  KernelSpec spec;
  spec.kind = Kind::Constant;
  spec.k0 = k0;
  return spec;
}

KernelSpec KernelSpec::elongation(double d) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw ConfigError(ConfigError::Kind::InvalidValue, "kernel.d", "must be finite and > 0");
  }
  KernelSpec spec;
  spec.kind = Kind::Elongation;
  spec.d = d;
  return spec;
}

KernelSpec KernelSpec::tabulated(const Eigen::MatrixXd& samples, const Eigen::VectorXd& nodes) {
  if (samples.rows() != samples.cols() || samples.rows() != nodes.size() || nodes.size() < 1) {
    throw ConfigError(ConfigError::Kind::InvalidValue, "kernel.table",
                      "square sample matrix matching the node count required");
  }
  const double scale = samples.cwiseAbs().maxCoeff();
  const double asym = (samples - samples.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * (1.0 + scale)) {
    throw ConfigError(ConfigError::Kind::InvalidValue, "kernel.table", "matrix must be symmetric");
  }
  if (samples.minCoeff() < 0.0) {
    throw ConfigError(ConfigError::Kind::InvalidValue, "kernel.table",
                      "matrix must be nonnegative");
  }
  KernelSpec spec;
  spec.kind = Kind::Tabulated;
  spec.table = 0.5 * (samples + samples.transpose());
  spec.sample_nodes = nodes;
  return spec;
}

namespace {

int nearest_sample(const Eigen::VectorXd& nodes, double x) {
  int best = 0;
  double best_dist = std::abs(nodes[0] - x);
  for (int i = 1; i < nodes.size(); ++i) {
    const double dist = std::abs(nodes[i] - x);
    if (dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  return best;
}

}  // namespace

double eval_kernel(const KernelSpec& spec, double x, double y) {
  switch (spec.kind) {
    case KernelSpec::Kind::Constant:
      return spec.k0;
    case KernelSpec::Kind::Elongation: {
      const double z = x - y;
      const double s = z / spec.d;
      return 4.0 * z * z * std::exp(-s * s);
    }
    case KernelSpec::Kind::Tabulated:
      return spec.table(nearest_sample(spec.sample_nodes, x),
                        nearest_sample(spec.sample_nodes, y));
  }
  return 0.0;
}

double kernel_sup(const KernelSpec& spec, double length) {
  switch (spec.kind) {
    case KernelSpec::Kind::Constant:
      return spec.k0;
    case KernelSpec::Kind::Elongation: {
      // 4 z^2 exp(-z^2/d^2) increases up to z = d, then decays.
      const double z = std::min(spec.d, length);
      const double s = z / spec.d;
      return 4.0 * z * z * std::exp(-s * s);
    }
    case KernelSpec::Kind::Tabulated:
      return spec.table.maxCoeff();
  }
  return 0.0;
}

NonlocalOperator::NonlocalOperator(const KernelSpec& spec, Eigen::VectorXd nodes,
                                   Eigen::VectorXd weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  const Eigen::Index n = nodes_.size();
  if (weights_.size() != n || n < 1) {
    throw ConfigError(ConfigError::Kind::InvalidValue, "kernel.nodes",
                      "node and weight arrays must match and be nonempty");
  }
  if (spec.kind == KernelSpec::Kind::Tabulated) {
    if (spec.table.rows() != n) {
      throw ConfigError(ConfigError::Kind::InvalidValue, "kernel.table",
                        "sample matrix does not match the contact discretization");
    }
    if ((spec.sample_nodes - nodes_).cwiseAbs().maxCoeff() > 1e-12) {
      throw ConfigError(ConfigError::Kind::InvalidValue, "kernel.table",
                        "sample nodes do not match the contact discretization");
    }
  }
  matrix_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      matrix_(i, j) = weights_[j] * eval_kernel(spec, nodes_[i], nodes_[j]);
    }
  }
  const double length = nodes_.maxCoeff() - nodes_.minCoeff();
  sup_ = kernel_sup(spec, length);
}

Eigen::VectorXd NonlocalOperator::apply(const Eigen::VectorXd& field) const {
  const Eigen::Index n = nodes_.size();
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) acc += matrix_(i, j) * field[j];
    out[i] = acc;
  }
  return out;
}

double NonlocalOperator::sup_norm_bound(const Eigen::VectorXd& field) const {
  double mass = 0.0;
  for (Eigen::Index j = 0; j < weights_.size(); ++j) mass += weights_[j] * std::abs(field[j]);
  return sup_ * mass;
}

double duality_residual(const NonlocalOperator& op, const Eigen::VectorXd& w1,
                        const Eigen::VectorXd& w2) {
  const Eigen::VectorXd k1 = op.apply(w1);
  const Eigen::VectorXd k2 = op.apply(w2);
  double s12 = 0.0;
  double s21 = 0.0;
  for (Eigen::Index i = 0; i < w1.size(); ++i) {
    s12 += op.weights()[i] * k1[i] * w2[i];
    s21 += op.weights()[i] * k2[i] * w1[i];
  }
  const double denom = std::max({std::abs(s12), std::abs(s21), 1e-30});
  return std::abs(s12 - s21) / denom;
}

}  // namespace nlad
