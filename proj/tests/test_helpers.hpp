#pragma once

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <limits>
#include <vector>

#include "chernoff/operator.hpp"

namespace chernoff::testing {

inline Operator diag(std::initializer_list<Complex> entries) {
  const Eigen::Index d = static_cast<Eigen::Index>(entries.size());
  Matrix m = Matrix::Zero(d, d);
  Eigen::Index i = 0;
  for (const Complex& v : entries) m(i, i) = v, ++i;
  return Operator(std::move(m));
}

inline Operator mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return Operator(std::move(m));
}

inline double max_abs_diff(const Operator& x, const Operator& y) {
  return (x.mat() - y.mat()).cwiseAbs().maxCoeff();
}

// distance from p to the convex hull of pts (monotone-chain hull, then
// point-to-segment minimum); oracle for numerical ranges of normal matrices
inline double dist_to_hull(Complex p, std::vector<Complex> pts) {
  auto cross = [](Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
  };
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() < b.real() ||
           (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Complex> hull;
  if (pts.size() <= 2) {
    hull = pts;
  } else {
    std::vector<Complex> lower, upper;
    for (const Complex& q : pts) {
      while (lower.size() >= 2 &&
             cross(lower[lower.size() - 2], lower.back(), q) <= 0) {
        lower.pop_back();
      }
      lower.push_back(q);
    }
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
      while (upper.size() >= 2 &&
             cross(upper[upper.size() - 2], upper.back(), *it) <= 0) {
        upper.pop_back();
      }
      upper.push_back(*it);
    }
    hull.assign(lower.begin(), lower.end() - 1);
    hull.insert(hull.end(), upper.begin(), upper.end() - 1);
  }
  auto seg_dist = [](Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double s = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
    s = std::clamp(s, 0.0, 1.0);
    return std::abs(p - (a + s * ab));
  };
  bool inside = hull.size() >= 3;
  for (std::size_t i = 0; inside && i < hull.size(); ++i) {
    if (cross(hull[i], hull[(i + 1) % hull.size()], p) < -1e-12) inside = false;
  }
  if (inside) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    best = std::min(best, seg_dist(p, hull[i], hull[(i + 1) % hull.size()]));
  }
  return best;
}

}  // namespace chernoff::testing
