#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "chernoff/errors.hpp"

namespace chernoff {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense complex square matrix standing in for a bounded operator on C^d.
/// Entries are validated to be finite on construction; the value is
/// immutable afterwards.
class Operator {
 public:
  /// Wraps a square matrix. Throws NonFinite on NaN/Inf entries and
  /// Error if the matrix is not square or empty.
  explicit Operator(Matrix m);

  static Operator identity(Eigen::Index d);
  static Operator zero(Eigen::Index d);

  Eigen::Index dim() const { return mat_.rows(); }
  const Matrix& mat() const { return mat_; }

  Operator adjoint() const { return Operator(mat_.adjoint()); }

  /// Entrywise comparison within tol (max-abs metric).
  bool approx_equal(const Operator& other, double tol) const;

  /// Interchange format: {"dim": d, "re": [[...]], "im": [[...]]}, row-major.
  std::string to_json_string() const;
  static Operator from_json_string(const std::string& text);
  static Operator load_json(const std::string& path);

 private:
  Matrix mat_;
};

/// Throws NonFinite if any entry of m is NaN or Inf.
void ensure_finite(const Matrix& m, const char* where);

}  // namespace chernoff
