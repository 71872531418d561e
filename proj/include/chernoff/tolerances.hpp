#pragma once

namespace chernoff::tol {

// Relative Hermitian-deviation tolerance: ||H - H*|| <= kHermitian * (1 + ||H||).
inline constexpr double kHermitian = 1e-10;

// Smallest singular value accepted before a shifted resolvent is declared singular.
inline constexpr double kSingularity = 1e-12;

// Closed-region membership slack for numerical-range verdicts.
inline constexpr double kMembership = 1e-9;

// Relative slack on bound-report margins: pass iff margin >= -kBoundMargin * (1 + |rhs|).
inline constexpr double kBoundMargin = 1e-10;

// Samples at or below this error level are excluded from rate fits.
inline constexpr double kErrorFloor = 1e-14;

// |z| below this (times the boundary scale) is treated as the origin when
// taking arguments of numerical-range points.
inline constexpr double kZeroPoint = 1e-12;

}  // namespace chernoff::tol
