#pragma once

#include <optional>
#include <vector>

#include "chernoff/linalg.hpp"
#include "chernoff/operator.hpp"

namespace chernoff {

/// Sector S_alpha = {z : |arg z| <= alpha} with vertex 0, alpha in [0, pi/2).
struct SectorSpec {
  double alpha;

  explicit SectorSpec(double a);
};

/// Polygonal approximation of the numerical range boundary, one point per
/// support direction theta_k.
struct RangeBoundary {
  std::vector<Complex> points;
  std::vector<double> angles;
  Eigen::Index dim = 0;
};

struct Containment {
  bool contained;
  double margin;
};

/// Support-function (rotation) method: for each theta the top eigenvector of
/// Re(e^{i theta} A) yields a boundary point x* A x of W(A).
RangeBoundary range_boundary(const Operator& a, int m = 360);

/// Every point z with |arg z| <= alpha (z = 0 allowed); margin is the minimal
/// angular slack in radians, negative when violated.
Containment contained_in_sector(const RangeBoundary& b, const SectorSpec& s);

/// Membership in D_alpha = {|z| <= sin a} u {|arg(1-z)| <= a and |z-1| <= cos a}.
/// margin is the distance to the nearest violating point: exact (negated
/// distance to D_alpha) when outside; when inside, the larger of the two
/// per-region clearances, a lower bound on the true clearance near the seam.
Containment contained_in_qs_domain(const RangeBoundary& b, const SectorSpec& s);

/// Signed distance of a single point to D_alpha (positive inside, same
/// convention as contained_in_qs_domain).
double qs_domain_margin(Complex z, const SectorSpec& s);

/// Euclidean distance from zeta to the closed sector -S_alpha.
/// Closed form: with phi = |arg zeta|, returns 0 if phi >= pi - alpha,
/// |zeta| if pi - alpha - phi >= pi/2, else |zeta| sin(pi - alpha - phi).
/// Throws ZeroPoint for zeta = 0.
double dist_to_neg_sector(Complex zeta, const SectorSpec& s);

/// Smallest alpha with all points inside S_alpha: max |arg z| over nonzero
/// points when every point has Re z >= 0 and the result is < pi/2;
/// nullopt otherwise.
std::optional<double> min_semi_angle(const RangeBoundary& b);

}  // namespace chernoff
