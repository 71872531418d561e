#pragma once

#include <cstdint>
#include <random>

#include "chernoff/operator.hpp"

namespace chernoff {

/// Seeded matrix generator. All draws start from i.i.d. complex Gaussian
/// entries (Ginibre) and apply the documented post-processing, so ensembles
/// reproduce across implementations at the distribution level; byte-level
/// determinism holds within one implementation for a fixed seed.
class MatrixRng {
 public:
  explicit MatrixRng(std::uint64_t seed) : rng_(seed) {}

  /// i.i.d. entries (N(0,1) + i N(0,1)) / sqrt(2).
  Operator ginibre(Eigen::Index d);

  /// Hermitian with spectrum affinely mapped onto [lo, hi].
  Operator hermitian(Eigen::Index d, double lo, double hi);

  /// Hermitian PSD with spectrum in [min_eig, spectral_radius].
  Operator psd(Eigen::Index d, double spectral_radius, double min_eig = 0.0);

  /// Hermitian contraction, spectrum in [0, 1] with both endpoints attained.
  Operator hermitian_contraction(Eigen::Index d);

  /// Hermitian contraction with eigenvalues k/(d-1), k = 0..d-1, in a random
  /// eigenbasis.
  Operator equispaced_contraction(Eigen::Index d);

  /// General (non-Hermitian) contraction, ||C|| <= 1.
  Operator contraction(Eigen::Index d);

  /// m-sectorial with W(H) inside S_{angle_margin * alpha}, built as
  /// P^{1/2} (I + i tan(angle_margin * alpha) V) P^{1/2} with P PSD and V a
  /// Hermitian contraction, rescaled to the requested norm. Nonnormal in
  /// general.
  Operator sectorial(Eigen::Index d, double alpha, double spectral_radius,
                     double angle_margin = 0.9);

  /// Haar-like unitary (QR of a Ginibre draw).
  Operator unitary(Eigen::Index d);

  Vector unit_vector(Eigen::Index d);

  std::mt19937_64& engine() { return rng_; }

 private:
  double gauss() { return normal_(rng_); }

  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace chernoff
