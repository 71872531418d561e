#pragma once

#include <functional>

#include "chernoff/operator.hpp"
#include "chernoff/tolerances.hpp"

namespace chernoff {

/// Eigendecomposition of a Hermitian operator: eigenvalues ascending,
/// eigenvector columns unitary.  U diag(lambda) U* reconstructs the source.
struct HermitianSpectrum {
  Eigen::VectorXd eigenvalues;
  Matrix eigenvectors;

  Eigen::Index dim() const { return eigenvalues.size(); }
  Matrix reconstruct() const;
};

/// Largest singular value. Throws NonFinite on non-finite input.
double operator_norm(const Operator& a);

/// ||A - A*|| in operator norm.
double hermitian_deviation(const Operator& a);

bool is_hermitian(const Operator& a, double tol = tol::kHermitian);

/// Throws NotHermitian when ||H - H*|| > tol * (1 + ||H||).
HermitianSpectrum hermitian_eig(const Operator& h, double tol = tol::kHermitian);

/// Spectral functional calculus: phi(H) = U diag(phi(lambda)) U*.
/// Throws NonFinite if phi is not finite on the spectrum.
Operator matrix_function(const HermitianSpectrum& s,
                         const std::function<double(double)>& phi);

/// e^{-tA} for t >= 0, scaling-and-squaring with a Pade core.
/// The Hermitian spectral path (matrix_function with s -> e^{-ts}) is the
/// cross-check oracle, not the default.
Operator matrix_exp(const Operator& a, double t);

/// A^n by binary exponentiation; A^0 = identity.
Operator matrix_power(const Operator& a, long n);

/// (zeta I + A)^{-1}. Throws SingularShift when the smallest singular value
/// of zeta I + A is at or below singularity_tol.
Operator resolvent_shift(const Operator& a, Complex zeta,
                         double singularity_tol = tol::kSingularity);

}  // namespace chernoff
