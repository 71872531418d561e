#include "chernoff/families.hpp"

#include <cmath>
#include <sstream>

namespace chernoff {

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::resolvent: return "resolvent";
    case FamilyKind::exponential: return "exponential";
    case FamilyKind::kato: return "kato";
    case FamilyKind::trotter: return "trotter";
    case FamilyKind::symmetrized_kato: return "symmetrized-kato";
  }
  return "?";
}

std::string to_string(const Regularity& r) {
  switch (r.kind) {
    case Regularity::Kind::self_adjoint: return "self-adjoint";
    case Regularity::Kind::quasi_sectorial: {
      std::ostringstream s;
      s << "quasi-sectorial(" << r.alpha << ")";
      return s.str();
    }
    case Regularity::Kind::general: return "general";
  }
  return "?";
}

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Hermitian PSD check used by the constructors; reports which precondition
// failed.
HermitianSpectrum require_hermitian_psd(const Operator& a, const char* role) {
  HermitianSpectrum spec = [&] {
    try {
      return hermitian_eig(a);
    } catch (const NotHermitian& e) {
      throw NotHermitian(std::string(role) + ": " + e.what());
    }
  }();
  const double scale = 1.0 + std::max(std::abs(spec.eigenvalues(0)),
                                      std::abs(spec.eigenvalues(spec.dim() - 1)));
  if (spec.eigenvalues(0) < -tol::kHermitian * scale) {
    std::ostringstream msg;
    msg << role << ": not positive semidefinite (min eigenvalue "
        << spec.eigenvalues(0) << ")";
    throw RegularityMismatch(msg.str());
  }
  return spec;
}

void verify_declared_regularity(const Operator& h, const Regularity& reg) {
  switch (reg.kind) {
    case Regularity::Kind::self_adjoint:
      require_hermitian_psd(h, "generator (self-adjoint regularity)");
      return;
    case Regularity::Kind::quasi_sectorial: {
      const SectorSpec sector(reg.alpha);
      const Containment c = contained_in_sector(range_boundary(h), sector);
      if (!c.contained) {
        std::ostringstream msg;
        msg << "generator: W(H) not inside S_" << reg.alpha
            << " (angular margin " << c.margin << ")";
        throw RegularityMismatch(msg.str());
      }
      return;
    }
    case Regularity::Kind::general:
      return;
  }
}

std::string make_label(FamilyKind k, const Regularity& r) {
  return to_string(k) + "[" + to_string(r) + "]";
}

}  // namespace

ChernoffFamily::ChernoffFamily(FamilyKind kind, Regularity reg, Operator h)
    : kind_(kind), reg_(reg), h_(std::move(h)) {
  label_ = make_label(kind_, reg_);
  if (is_hermitian(h_)) spec_h_ = hermitian_eig(h_);
}

const Operator& ChernoffFamily::part_a() const {
  if (!a_) throw Error("family has no A part");
  return *a_;
}

const Operator& ChernoffFamily::part_b() const {
  if (!b_) throw Error("family has no B part");
  return *b_;
}

const KatoFunction& ChernoffFamily::kato_f() const {
  if (!f_) throw Error("family has no Kato f");
  return *f_;
}

const KatoFunction& ChernoffFamily::kato_g() const {
  if (!g_) throw Error("family has no Kato g");
  return *g_;
}

Operator ChernoffFamily::eval_F(double tau) const {
  if (tau < 0.0) throw NegativeTau("eval_F: tau must be >= 0");
  if (tau == 0.0) return Operator::identity(dim());  // F(0) = I exactly
  switch (kind_) {
    case FamilyKind::resolvent:
      if (spec_h_) {
        return matrix_function(*spec_h_,
                               [tau](double l) { return 1.0 / (1.0 + tau * l); });
      }
      return resolvent_shift(Operator(tau * h_.mat()), Complex(1.0, 0.0));
    case FamilyKind::exponential:
      return semigroup(tau);
    case FamilyKind::kato: {
      const auto& f = f_->eval;
      return matrix_function(*spec_a_,
                             [&](double l) { return clamp01(f(tau * l)); });
    }
    case FamilyKind::trotter: {
      Operator ea = matrix_function(*spec_a_,
                                    [tau](double l) { return std::exp(-tau * l); });
      Operator eb = matrix_function(*spec_b_,
                                    [tau](double l) { return std::exp(-tau * l); });
      return Operator(ea.mat() * eb.mat());
    }
    case FamilyKind::symmetrized_kato: {
      const auto& f = f_->eval;
      const auto& g = g_->eval;
      // g(tau B)^{1/2} evaluated spectrally; identical to taking the
      // operator square root of g(tau B) since both act on B's eigenbasis
      Operator ghalf = matrix_function(
          *spec_b_, [&](double l) { return std::sqrt(clamp01(g(tau * l))); });
      Operator fa = matrix_function(
          *spec_a_, [&](double l) { return clamp01(f(tau * l)); });
      return Operator(ghalf.mat() * fa.mat() * ghalf.mat());
    }
  }
  throw Error("eval_F: unreachable");
}

Operator ChernoffFamily::eval_S(double tau) const {
  if (tau <= 0.0) throw NonPositiveTau("eval_S: tau must be > 0");
  const Matrix f = eval_F(tau).mat();
  return Operator((Matrix::Identity(dim(), dim()) - f) / tau);
}

Operator ChernoffFamily::semigroup(double t) const {
  if (spec_h_) {
    return matrix_function(*spec_h_,
                           [t](double l) { return std::exp(-t * l); });
  }
  return matrix_exp(h_, t);
}

ChernoffFamily make_resolvent_family(const Operator& h, const Regularity& reg) {
  verify_declared_regularity(h, reg);
  return ChernoffFamily(FamilyKind::resolvent, reg, h);
}

ChernoffFamily make_exp_family(const Operator& h, const Regularity& reg) {
  verify_declared_regularity(h, reg);
  return ChernoffFamily(FamilyKind::exponential, reg, h);
}

ChernoffFamily make_kato_family(const KatoFunction& f, const Operator& a) {
  HermitianSpectrum spec = require_hermitian_psd(a, "A");
  ChernoffFamily fam(FamilyKind::kato, Regularity::self_adjoint(), a);
  fam.a_ = a;
  fam.spec_a_ = std::move(spec);
  fam.f_ = f;
  fam.label_ += "{" + f.id + "}";
  return fam;
}

ChernoffFamily make_trotter_family(const Operator& a, const Operator& b) {
  HermitianSpectrum spec_a = require_hermitian_psd(a, "A");
  HermitianSpectrum spec_b = require_hermitian_psd(b, "B");
  // the product family is not self-adjoint even though H = A + B is
  ChernoffFamily fam(FamilyKind::trotter, Regularity::general(),
                     Operator(a.mat() + b.mat()));
  fam.a_ = a;
  fam.b_ = b;
  fam.spec_a_ = std::move(spec_a);
  fam.spec_b_ = std::move(spec_b);
  return fam;
}

ChernoffFamily make_symmetrized_family(const KatoFunction& f,
                                       const KatoFunction& g,
                                       const Operator& a, const Operator& b) {
  HermitianSpectrum spec_a = require_hermitian_psd(a, "A");
  HermitianSpectrum spec_b = require_hermitian_psd(b, "B");
  ChernoffFamily fam(FamilyKind::symmetrized_kato, Regularity::self_adjoint(),
                     Operator(a.mat() + b.mat()));
  fam.a_ = a;
  fam.b_ = b;
  fam.spec_a_ = std::move(spec_a);
  fam.spec_b_ = std::move(spec_b);
  fam.f_ = f;
  fam.g_ = g;
  fam.label_ += "{" + f.id + "," + g.id + "}";
  return fam;
}

}  // namespace chernoff
