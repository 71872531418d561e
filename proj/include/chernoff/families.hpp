#pragma once

#include <optional>
#include <string>

#include "chernoff/kato.hpp"
#include "chernoff/linalg.hpp"
#include "chernoff/numerical_range.hpp"
#include "chernoff/operator.hpp"

namespace chernoff {

enum class FamilyKind { resolvent, exponential, kato, trotter, symmetrized_kato };

std::string to_string(FamilyKind k);

/// Declared regularity class of a family. Declared by the caller and
/// verified at construction, never inferred.
struct Regularity {
  enum class Kind { self_adjoint, quasi_sectorial, general };
  Kind kind = Kind::general;
  double alpha = 0.0;  // semi-angle, quasi_sectorial only

  static Regularity self_adjoint() { return {Kind::self_adjoint, 0.0}; }
  static Regularity quasi_sectorial(double alpha) {
    return {Kind::quasi_sectorial, alpha};
  }
  static Regularity general() { return {Kind::general, 0.0}; }
};

std::string to_string(const Regularity& r);

/// A parametrized contraction family tau -> F(tau) with F(0) = I and an
/// attached generator H such that S(tau) = (I - F(tau))/tau -> H.
/// Immutable after construction; eval_F / eval_S are pure.
class ChernoffFamily {
 public:
  FamilyKind kind() const { return kind_; }
  const Regularity& regularity() const { return reg_; }
  const Operator& generator() const { return h_; }
  const Operator& part_a() const;
  const Operator& part_b() const;
  const KatoFunction& kato_f() const;
  const KatoFunction& kato_g() const;
  Eigen::Index dim() const { return h_.dim(); }
  const std::string& label() const { return label_; }

  /// F(tau); F(0) = I exactly. Throws NegativeTau.
  Operator eval_F(double tau) const;

  /// S(tau) = (I - F(tau)) / tau. Throws NonPositiveTau.
  Operator eval_S(double tau) const;

  /// e^{-tH} for the attached generator (spectral when H is Hermitian,
  /// Pade scaling-and-squaring otherwise).
  Operator semigroup(double t) const;

  bool generator_is_hermitian() const { return spec_h_.has_value(); }

  friend ChernoffFamily make_resolvent_family(const Operator&, const Regularity&);
  friend ChernoffFamily make_exp_family(const Operator&, const Regularity&);
  friend ChernoffFamily make_kato_family(const KatoFunction&, const Operator&);
  friend ChernoffFamily make_trotter_family(const Operator&, const Operator&);
  friend ChernoffFamily make_symmetrized_family(const KatoFunction&,
                                                const KatoFunction&,
                                                const Operator&, const Operator&);

 private:
  ChernoffFamily(FamilyKind kind, Regularity reg, Operator h);

  FamilyKind kind_;
  Regularity reg_;
  Operator h_;
  std::optional<Operator> a_, b_;
  std::optional<KatoFunction> f_, g_;
  std::optional<HermitianSpectrum> spec_h_, spec_a_, spec_b_;
  std::string label_;
};

/// F(tau) = (I + tau H)^{-1}.
/// self-adjoint regularity requires Hermitian PSD H; quasi-sectorial(alpha)
/// requires W(H) inside S_alpha (checked via the numerical range).
/// Throws RegularityMismatch when the declared class fails its check.
ChernoffFamily make_resolvent_family(const Operator& h, const Regularity& reg);

/// F(tau) = e^{-tau H}; exact family, same regularity checks as above.
ChernoffFamily make_exp_family(const Operator& h, const Regularity& reg);

/// F(tau) = f(tau A) by Hermitian functional calculus; A must be
/// Hermitian PSD. Resulting family is self-adjoint.
ChernoffFamily make_kato_family(const KatoFunction& f, const Operator& a);

/// F(tau) = e^{-tau A} e^{-tau B} with generator H = A + B; A, B Hermitian
/// PSD. The family itself is not self-adjoint (regularity = general).
ChernoffFamily make_trotter_family(const Operator& a, const Operator& b);

/// F(tau) = g(tau B)^{1/2} f(tau A) g(tau B)^{1/2} with generator H = A + B;
/// A, B Hermitian PSD. Self-adjoint PSD contraction family.
ChernoffFamily make_symmetrized_family(const KatoFunction& f,
                                       const KatoFunction& g,
                                       const Operator& a, const Operator& b);

}  // namespace chernoff
