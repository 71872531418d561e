#include "chernoff/numerical_range.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chernoff/tolerances.hpp"

namespace chernoff {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
}  // namespace

SectorSpec::SectorSpec(double a) : alpha(a) {
  if (!(a >= 0.0 && a < kHalfPi)) {
    throw Error("SectorSpec: semi-angle must lie in [0, pi/2)");
  }
}

RangeBoundary range_boundary(const Operator& a, int m) {
  if (m < 8) throw Error("range_boundary: need at least 8 directions");
  ensure_finite(a.mat(), "range_boundary");
  RangeBoundary b;
  b.dim = a.dim();
  b.points.resize(m);
  b.angles.resize(m);
  for (int k = 0; k < m; ++k) {
    const double theta = 2.0 * kPi * k / m;
    const Complex phase = std::polar(1.0, theta);
    Matrix rotated = phase * a.mat();
    Matrix herm_part = 0.5 * (rotated + rotated.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm_part);
    // any maximizing eigenvector works at a degenerate crossing; only the
    // boundary point matters
    Vector x = solver.eigenvectors().col(a.dim() - 1);
    b.angles[k] = theta;
    b.points[k] = x.dot(a.mat() * x);  // x* A x (dot conjugates the left side)
  }
  return b;
}

namespace {

// points with |z| below this times the boundary scale are treated as the
// origin (their argument is eigensolver noise)
double zero_threshold(const RangeBoundary& b) {
  double scale = 0.0;
  for (const Complex& z : b.points) scale = std::max(scale, std::abs(z));
  return tol::kZeroPoint * (1.0 + scale);
}

}  // namespace

Containment contained_in_sector(const RangeBoundary& b, const SectorSpec& s) {
  const double zero_tol = zero_threshold(b);
  double margin = s.alpha;
  for (const Complex& z : b.points) {
    if (std::abs(z) <= zero_tol) continue;  // vertex is allowed
    margin = std::min(margin, s.alpha - std::abs(std::arg(z)));
  }
  return {margin >= -tol::kMembership, margin};
}

double qs_domain_margin(Complex z, const SectorSpec& s) {
  const double alpha = s.alpha;
  // disk part {|z| <= sin alpha}
  const double disk_signed = std::sin(alpha) - std::abs(z);

  // lens part {|arg(1-z)| <= alpha and |z-1| <= cos alpha}: a circular
  // sector with vertex 0 in the variable w = 1 - z
  const Complex w = 1.0 - z;
  const double r = std::abs(w);
  const double radius = std::cos(alpha);
  double lens_signed;
  if (r == 0.0) {
    lens_signed = 0.0;  // z = 1, the vertex
  } else {
    const double psi = std::arg(w);
    if (std::abs(psi) <= alpha && r <= radius) {
      lens_signed = std::min({radius - r, r * std::sin(alpha - psi),
                              r * std::sin(alpha + psi)});
    } else if (std::abs(psi) <= alpha) {
      lens_signed = radius - r;  // radially past the arc
    } else {
      // nearest point lies on the closer bounding ray (or its endpoints)
      const double ray_angle = psi >= 0.0 ? alpha : -alpha;
      const Complex u = std::polar(1.0, ray_angle);
      const double along = std::clamp((w * std::conj(u)).real(), 0.0, radius);
      lens_signed = -std::abs(w - along * u);
    }
  }
  return std::max(disk_signed, lens_signed);
}

Containment contained_in_qs_domain(const RangeBoundary& b,
                                   const SectorSpec& s) {
  double margin = std::numeric_limits<double>::infinity();
  for (const Complex& z : b.points) {
    margin = std::min(margin, qs_domain_margin(z, s));
  }
  if (b.points.empty()) margin = 0.0;
  return {margin >= -tol::kMembership, margin};
}

double dist_to_neg_sector(Complex zeta, const SectorSpec& s) {
  if (zeta == Complex(0.0, 0.0)) {
    throw ZeroPoint("dist_to_neg_sector: zeta must be nonzero");
  }
  const double phi = std::abs(std::arg(zeta));
  const double gap = kPi - s.alpha - phi;  // angular gap to the sector edge
  if (gap <= 0.0) return 0.0;
  if (gap >= kHalfPi) return std::abs(zeta);  // vertex is nearest
  return std::abs(zeta) * std::sin(gap);
}

std::optional<double> min_semi_angle(const RangeBoundary& b) {
  const double zero_tol = zero_threshold(b);
  double worst = 0.0;
  for (const Complex& z : b.points) {
    if (std::abs(z) <= zero_tol) continue;
    worst = std::max(worst, std::abs(std::arg(z)));
  }
  if (worst < kHalfPi) return worst;
  return std::nullopt;
}

}  // namespace chernoff
