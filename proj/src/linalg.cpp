#include "chernoff/linalg.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace chernoff {

Matrix HermitianSpectrum::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() *
         eigenvectors.adjoint();
}

double operator_norm(const Operator& a) {
  ensure_finite(a.mat(), "operator_norm");
  if (a.mat().isZero(0.0)) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a.mat());
  return svd.singularValues()(0);
}

double hermitian_deviation(const Operator& a) {
  return operator_norm(Operator(a.mat() - a.mat().adjoint()));
}

bool is_hermitian(const Operator& a, double tol) {
  return hermitian_deviation(a) <= tol * (1.0 + operator_norm(a));
}

HermitianSpectrum hermitian_eig(const Operator& h, double tol) {
  const double dev = hermitian_deviation(h);
  const double scale = 1.0 + operator_norm(h);
  if (dev > tol * scale) {
    std::ostringstream msg;
    msg << "hermitian_eig: ||H - H*|| = " << dev << " exceeds " << tol
        << " * (1 + ||H||) = " << tol * scale;
    throw NotHermitian(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.mat());
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eig: eigensolver failed");
  }
  return HermitianSpectrum{solver.eigenvalues(), solver.eigenvectors()};
}

Operator matrix_function(const HermitianSpectrum& s,
                         const std::function<double(double)>& phi) {
  Eigen::VectorXd mapped(s.dim());
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    const double v = phi(s.eigenvalues(i));
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "matrix_function: phi(" << s.eigenvalues(i) << ") is not finite";
      throw NonFinite(msg.str());
    }
    mapped(i) = v;
  }
  return Operator(s.eigenvectors * mapped.asDiagonal() *
                  s.eigenvectors.adjoint());
}

Operator matrix_exp(const Operator& a, double t) {
  if (t < 0.0) throw Error("matrix_exp: t must be >= 0");
  ensure_finite(a.mat(), "matrix_exp");
  if (t == 0.0) return Operator::identity(a.dim());
  Matrix scaled = (-t) * a.mat();
  return Operator(scaled.exp());
}

Operator matrix_power(const Operator& a, long n) {
  if (n < 0) throw Error("matrix_power: n must be >= 0");
  const Eigen::Index d = a.dim();
  Matrix result = Matrix::Identity(d, d);
  Matrix base = a.mat();
  long k = n;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return Operator(std::move(result));
}

Operator resolvent_shift(const Operator& a, Complex zeta,
                         double singularity_tol) {
  ensure_finite(a.mat(), "resolvent_shift");
  const Eigen::Index d = a.dim();
  Matrix shifted = a.mat();
  shifted.diagonal().array() += zeta;
  Eigen::JacobiSVD<Matrix> svd(shifted);
  if (svd.singularValues()(d - 1) <= singularity_tol) {
    std::ostringstream msg;
    msg << "resolvent_shift: zeta = (" << zeta.real() << ", " << zeta.imag()
        << ") is numerically in the spectrum (sigma_min = "
        << svd.singularValues()(d - 1) << ")";
    throw SingularShift(msg.str());
  }
  return Operator(shifted.partialPivLu().solve(Matrix::Identity(d, d)));
}

}  // namespace chernoff
