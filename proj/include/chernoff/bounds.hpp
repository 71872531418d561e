#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chernoff/approximants.hpp"
#include "chernoff/families.hpp"

#include "json.hpp"

namespace chernoff {

/// Measured left/right sides of one quantitative inequality.
/// pass <=> margin >= -1e-10 * (1 + |rhs|).
struct BoundReport {
  std::string bound_id;
  std::map<std::string, double> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
  std::map<std::string, double> constants;

  nlohmann::ordered_json to_json() const;
};

BoundReport make_report(std::string bound_id,
                        std::map<std::string, double> params, double lhs,
                        double rhs,
                        std::map<std::string, double> constants = {});

/// The fixed checker registry. Every report names one of these ids.
const std::vector<std::string>& bound_registry();
bool is_registered_bound(const std::string& id);

// ---------------------------------------------------------------------------
// Exact inequalities with paper-given right sides
// ---------------------------------------------------------------------------

/// eq-3.1.151: ||F^n - e^{-n(I-F)}|| <= 1/n for Hermitian F with spectrum in
/// [0,1]; both sides via spectral calculus. Throws NotHermitian /
/// SpectrumOutOfRange when the hypothesis fails.
BoundReport check_spectral_bound(const Operator& f, long n);

/// eq-0.5 (sqrt-n lemma): ||e^{n(F-I)} w - F^n w|| <= sqrt(n) ||(F-I) w||
/// for any contraction F. Throws NotContraction / ZeroVector.
BoundReport check_sqrt_n_lemma(const Operator& f, long n, const Vector& w);

// ---------------------------------------------------------------------------
// Quasi-sectorial estimates
// ---------------------------------------------------------------------------

struct KEstimate {
  double k_hat = 0.0;
  long argmax_n = 0;
  std::vector<BoundReport> reports;  // one per n, rhs = k_hat/(n+1)
};

/// eq-2.1.14: K_hat = max_{1<=n<=n_max} (n+1) ||F^n (I - F)||. F must be a
/// quasi-sectorial contraction, certified via the numerical range against
/// D_alpha (alpha = 0 covers non-negative self-adjoint contractions).
/// Throws RegularityMismatch when certification fails.
KEstimate estimate_K(const Operator& f, long n_max, const SectorSpec& sector);

/// eq-6.2.5: ||F^n - e^{n(F-I)}|| <= (2 K_hat + 2)/n^{1/3} with K_hat from
/// estimate_K. Same certification as estimate_K.
BoundReport check_cube_root_bound(const Operator& f, long n, double k_hat,
                                  const SectorSpec& sector);

// ---------------------------------------------------------------------------
// Resolvent-difference constants (grid maxima; the paper leaves them
// unquantified, so reports carry the empirical constant)
// ---------------------------------------------------------------------------

struct ConstantEstimate {
  double value = 0.0;
  std::map<std::string, double> argmax;
  std::vector<BoundReport> reports;
};

/// eq-3.3.1: M_rho_hat = max over 0 < tau <= t (grids within (0,1]) of
/// ||(I + t S(tau))^{-1} - (I + t H)^{-1}|| / (tau/t)^rho.
ConstantEstimate check_resolvent_rate(const ChernoffFamily& fam,
                                      const Operator& h, double rho,
                                      const std::vector<double>& tau_grid,
                                      const std::vector<double>& t_grid);

/// eq-3.3.17: M_1_hat = max over tau in (0,1] of
/// ||(I + S(tau))^{-1} - (I + H)^{-1}|| / tau.
ConstantEstimate check_tau_linear_resolvent(const ChernoffFamily& fam,
                                            const Operator& h,
                                            const std::vector<double>& tau_grid);

/// est-res: L_hat = max over (zeta, tau) of
/// ||(zeta I + S(tau))^{-1} - (zeta I + H)^{-1}|| * dist(zeta, -S_alpha)/tau.
/// Every zeta must lie in the open sector S_{pi-alpha}; throws
/// ZetaOutOfSector otherwise.
ConstantEstimate check_sectorial_resolvent(const ChernoffFamily& fam,
                                           const Operator& h,
                                           const SectorSpec& sector,
                                           const std::vector<Complex>& zetas,
                                           const std::vector<double>& tau_grid);

// ---------------------------------------------------------------------------
// Strict contraction / Lemma 3.2.1 / Trotter-Kato approximants
// ---------------------------------------------------------------------------

struct StrictContractionResult {
  double delta_hat = 0.0;  // min over the probe grid of 1 - ||F(tau)||
  bool pass = false;       // delta_hat > 0
  std::vector<BoundReport> reports;
};

/// eq-3.3.20: 0 <= F(tau) <= (1 - delta) I for tau >= epsilon, measured as
/// delta_hat = min (1 - ||F(tau)||) over the probe grid. Requires a
/// self-adjoint family and a grid inside [epsilon, inf).
StrictContractionResult check_strict_contraction(const ChernoffFamily& fam,
                                                 double epsilon,
                                                 const std::vector<double>& tau_grid);

struct Lemma321Estimate {
  double c_hat = 0.0;
  std::size_t used = 0;
  std::size_t skipped = 0;  // pairs with resolvent difference at the floor
  std::size_t argmax_index = 0;
  std::vector<BoundReport> reports;
};

/// lemma-3.2.1-c: empirical stand-in for the unquantified constant c in
/// ||e^{-K} - e^{-L}|| <= c ||(I+K)^{-1} - (I+L)^{-1}|| over Hermitian PSD
/// pairs. Degenerate pairs (difference <= 1e-13) are skipped and counted.
Lemma321Estimate estimate_lemma321_constant(
    const std::vector<std::pair<Operator, Operator>>& pairs);

struct NonsymTrotterKatoResult {
  std::vector<BoundReport> reports;  // per n; rhs = sum of the three pieces
  std::optional<RateFit> fitted;     // rate of the lhs (empty when at floor)
};

/// trotter-kato-nonsym (eqs. 3.4.1/3.4.2 context): per n,
///   lhs  = ||(f(tA/n) g(tB/n))^n - e^{-tH}||,
///   rhs  = ||F(t/n)^{n-1} - e^{-tH}|| + 2||(I - g(tB/n)) e^{-tH}||
///          + ||(I - f(tA/n)) e^{-tH}||
/// with F the symmetrized family; also fits the decay rate of the lhs.
NonsymTrotterKatoResult check_nonsym_trotter_kato(const KatoFunction& f,
                                                  const KatoFunction& g,
                                                  const Operator& a,
                                                  const Operator& b,
                                                  const std::vector<long>& n_list,
                                                  double t);

}  // namespace chernoff
