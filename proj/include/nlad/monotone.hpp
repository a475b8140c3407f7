#pragma once

#include <limits>

namespace nlad {

// Maximal monotone graph on R given as the subdifferential of a proper convex
// potential  phi(y) = coeff * y^2  on [lo, hi],  +inf outside.  The catalogue
// is fixed to the factory shapes below; every instance satisfies
// lo <= 0 <= hi and phi(0) = 0, so the zero state is always admissible.
// free() is the degenerate member whose Yosida terms all vanish, used to
// switch a regularized term off without special-casing the solvers.
//
// All regularized quantities follow the Yosida/Moreau construction at
// parameter eps > 0:
//   resolvent(eps, y)        argmin_x (y-x)^2/(2 eps) + phi(x)
//   yosida_value(eps, y)     (y - resolvent) / eps
//   yosida_primitive(eps, y) Moreau envelope, min_x (y-x)^2/(2 eps) + phi(x)
//   yosida_slope(eps, y)     derivative of yosida_value; at a kink the
//                            steeper branch wins (1/eps for indicators).
class MonotoneGraph {
 public:
  static MonotoneGraph free();
  static MonotoneGraph indicator_nonpositive();
  static MonotoneGraph indicator_unit_interval();
  static MonotoneGraph indicator_nonnegative();
  static MonotoneGraph quadratic_nonpositive(double coeff);
  static MonotoneGraph quadratic_nonnegative(double coeff);

  double primitive(double y) const;
  double resolvent(double eps, double y) const;
  double yosida_value(double eps, double y) const;
  double yosida_primitive(double eps, double y) const;
  double yosida_slope(double eps, double y) const;

  // Distance from y to the nearest kink of yosida_value(eps, .); +inf when
  // the graph has no kink (used by finite-difference consistency checks).
  double distance_to_kink(double eps, double y) const;

  double lower() const { return lo_; }
  double upper() const { return hi_; }
  double coefficient() const { return coeff_; }

 private:
  MonotoneGraph(double lo, double hi, double coeff);

  double lo_;
  double hi_;
  double coeff_;
};

}  // namespace nlad
