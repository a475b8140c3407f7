#include "nlad/monotone.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace nlad {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

MonotoneGraph::MonotoneGraph(double lo, double hi, double coeff)
    : lo_(lo), hi_(hi), coeff_(coeff) {
  assert(lo_ <= 0.0 && 0.0 <= hi_);
  assert(coeff_ >= 0.0);
}

MonotoneGraph MonotoneGraph::free() { return {-kInf, kInf, 0.0}; }
MonotoneGraph MonotoneGraph::indicator_nonpositive() { return {-kInf, 0.0, 0.0}; }
MonotoneGraph MonotoneGraph::indicator_unit_interval() { return {0.0, 1.0, 0.0}; }
MonotoneGraph MonotoneGraph::indicator_nonnegative() { return {0.0, kInf, 0.0}; }
MonotoneGraph MonotoneGraph::quadratic_nonpositive(double coeff) { return {-kInf, 0.0, coeff}; }
MonotoneGraph MonotoneGraph::quadratic_nonnegative(double coeff) { return {0.0, kInf, coeff}; }

double MonotoneGraph::primitive(double y) const {
  if (y < lo_ || y > hi_) return kInf;
  return coeff_ * y * y;
}

double MonotoneGraph::resolvent(double eps, double y) const {
  // Stationary point of the strictly convex objective, clamped to the domain.
  const double interior = y / (1.0 + 2.0 * coeff_ * eps);
  return std::clamp(interior, lo_, hi_);
}

double MonotoneGraph::yosida_value(double eps, double y) const {
  // On the saturated branch the difference quotient is the definition; on the
  // interior branch the optimality condition gives the same value as 2 c r,
  // which avoids amplifying the rounding of r by 1/(2 c eps) through the
  // (y - r) cancellation when eps is small.
  const double r = resolvent(eps, y);
  if (r == lo_ || r == hi_) return (y - r) / eps;
  return 2.0 * coeff_ * r;
}

double MonotoneGraph::yosida_primitive(double eps, double y) const {
  const double r = resolvent(eps, y);
  const double d = y - r;
  return d * d / (2.0 * eps) + coeff_ * r * r;
}

double MonotoneGraph::yosida_slope(double eps, double y) const {
  // yosida_value is piecewise linear in y with a kink where the resolvent
  // saturates; kink abscissae are the domain endpoints scaled back through
  // the interior map.  The saturated branch has slope 1/eps, which dominates
  // the interior slope 2c/(1+2c*eps) and is the tie-break at the kink.
  const double scale = 1.0 + 2.0 * coeff_ * eps;
  if (y <= lo_ * scale || y >= hi_ * scale) return 1.0 / eps;
  return 2.0 * coeff_ / scale;
}

double MonotoneGraph::distance_to_kink(double eps, double y) const {
  const double scale = 1.0 + 2.0 * coeff_ * eps;
  double dist = kInf;
  if (std::isfinite(lo_)) dist = std::min(dist, std::abs(y - lo_ * scale));
  if (std::isfinite(hi_)) dist = std::min(dist, std::abs(y - hi_ * scale));
  return dist;
}

}  // namespace nlad
