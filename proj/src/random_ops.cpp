#include "chernoff/random_ops.hpp"

#include <cmath>

#include "chernoff/linalg.hpp"

namespace chernoff {

Operator MatrixRng::ginibre(Eigen::Index d) {
  Matrix m(d, d);
  const double scale = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) {
      m(i, k) = Complex(gauss(), gauss()) * scale;
    }
  }
  return Operator(std::move(m));
}

Operator MatrixRng::hermitian(Eigen::Index d, double lo, double hi) {
  if (!(lo <= hi)) throw Error("MatrixRng::hermitian: need lo <= hi");
  const Operator g = ginibre(d);
  const Operator sym(0.5 * (g.mat() + g.mat().adjoint()));
  const HermitianSpectrum spec = hermitian_eig(sym);
  const double lmin = spec.eigenvalues(0);
  const double lmax = spec.eigenvalues(d - 1);
  if (lmax - lmin < 1e-14) {
    return Operator(0.5 * (lo + hi) * Matrix::Identity(d, d));
  }
  const double a = (hi - lo) / (lmax - lmin);
  return matrix_function(spec, [=](double l) { return lo + a * (l - lmin); });
}

Operator MatrixRng::psd(Eigen::Index d, double spectral_radius, double min_eig) {
  if (min_eig < 0.0 || spectral_radius < min_eig) {
    throw Error("MatrixRng::psd: need 0 <= min_eig <= spectral_radius");
  }
  return hermitian(d, min_eig, spectral_radius);
}

Operator MatrixRng::hermitian_contraction(Eigen::Index d) {
  return hermitian(d, 0.0, 1.0);
}

Operator MatrixRng::equispaced_contraction(Eigen::Index d) {
  if (d < 2) throw Error("MatrixRng::equispaced_contraction: d >= 2");
  const Operator u = unitary(d);
  Eigen::VectorXd vals(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    vals(k) = static_cast<double>(k) / static_cast<double>(d - 1);
  }
  return Operator(u.mat() * vals.asDiagonal() * u.mat().adjoint());
}

Operator MatrixRng::contraction(Eigen::Index d) {
  const Operator g = ginibre(d);
  const double norm = operator_norm(g);
  if (norm == 0.0) return g;
  return Operator(g.mat() / (norm * (1.0 + 1e-12)));
}

Operator MatrixRng::sectorial(Eigen::Index d, double alpha,
                              double spectral_radius, double angle_margin) {
  if (!(alpha >= 0.0 && alpha < 1.5707963267948966)) {
    throw Error("MatrixRng::sectorial: alpha in [0, pi/2)");
  }
  // P^{1/2} (I + i c V) P^{1/2} with c = tan(margin * alpha) keeps every
  // x* H x inside S_{margin * alpha}; the PSD floor keeps 0 out of W(H)
  const Operator p = psd(d, 1.0, 0.1);
  const HermitianSpectrum spec_p = hermitian_eig(p);
  const Matrix sqrt_p =
      matrix_function(spec_p, [](double l) { return std::sqrt(std::max(l, 0.0)); })
          .mat();
  const Operator v = hermitian(d, -1.0, 1.0);
  const double c = std::tan(angle_margin * alpha);
  const Matrix core =
      Matrix::Identity(d, d) + Complex(0.0, c) * v.mat();
  Operator h(sqrt_p * core * sqrt_p);
  const double norm = operator_norm(h);
  return Operator(h.mat() * (spectral_radius / norm));
}

Operator MatrixRng::unitary(Eigen::Index d) {
  const Operator g = ginibre(d);
  Eigen::HouseholderQR<Matrix> qr(g.mat());
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
  }
  return Operator(std::move(q));
}

Vector MatrixRng::unit_vector(Eigen::Index d) {
  Vector v(d);
  for (;;) {
    for (Eigen::Index i = 0; i < d; ++i) v(i) = Complex(gauss(), gauss());
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

}  // namespace chernoff
