#include "chernoff/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chernoff/parallel.hpp"

namespace chernoff {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void certify_quasi_sectorial(const Operator& f, const SectorSpec& sector,
                             const char* who) {
  if (operator_norm(f) > 1.0 + 1e-10) {
    throw NotContraction(std::string(who) + ": ||F|| > 1");
  }
  const Containment c = contained_in_qs_domain(range_boundary(f), sector);
  if (!c.contained) {
    std::ostringstream msg;
    msg << who << ": W(F) not inside D_" << sector.alpha << " (margin "
        << c.margin << ")";
    throw RegularityMismatch(msg.str());
  }
}

void require_unit_interval_grid(const std::vector<double>& grid,
                                const char* who) {
  if (grid.empty()) throw BadGrid(std::string(who) + ": empty grid");
  for (double v : grid) {
    if (!(v > 0.0 && v <= 1.0)) {
      throw BadGrid(std::string(who) + ": grid values must lie in (0, 1]");
    }
  }
}

}  // namespace

nlohmann::ordered_json BoundReport::to_json() const {
  nlohmann::ordered_json j;
  j["bound_id"] = bound_id;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) j["params"][k] = v;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["margin"] = margin;
  j["pass"] = pass;
  j["constants"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : constants) j["constants"][k] = v;
  return j;
}

BoundReport make_report(std::string bound_id,
                        std::map<std::string, double> params, double lhs,
                        double rhs, std::map<std::string, double> constants) {
  BoundReport r;
  r.bound_id = std::move(bound_id);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.pass = r.margin >= -tol::kBoundMargin * (1.0 + std::abs(rhs));
  r.constants = std::move(constants);
  return r;
}

const std::vector<std::string>& bound_registry() {
  static const std::vector<std::string> ids = {
      "eq-0.5",      "eq-2.1.14", "eq-3.1.151",    "eq-3.3.1",
      "eq-3.3.17",   "eq-3.3.20", "eq-6.2.5",      "est-res",
      "lemma-3.2.1-c", "trotter-kato-nonsym"};
  return ids;
}

bool is_registered_bound(const std::string& id) {
  const auto& reg = bound_registry();
  return std::find(reg.begin(), reg.end(), id) != reg.end();
}

BoundReport check_spectral_bound(const Operator& f, long n) {
  if (n < 1) throw Error("check_spectral_bound: n >= 1");
  const HermitianSpectrum spec = hermitian_eig(f);
  const double lo = spec.eigenvalues(0);
  const double hi = spec.eigenvalues(spec.dim() - 1);
  if (lo < -1e-10 || hi > 1.0 + 1e-10) {
    std::ostringstream msg;
    msg << "check_spectral_bound: spectrum [" << lo << ", " << hi
        << "] not inside [0, 1]";
    throw SpectrumOutOfRange(msg.str());
  }
  // ||F^n - e^{-n(I-F)}|| via the spectral calculus of F: both terms act on
  // the same eigenbasis, so the norm is the scalar max over the spectrum
  double lhs = 0.0;
  for (Eigen::Index i = 0; i < spec.dim(); ++i) {
    const double l = clamp01(spec.eigenvalues(i));
    lhs = std::max(lhs, std::abs(std::pow(l, static_cast<double>(n)) -
                                 std::exp(-static_cast<double>(n) * (1.0 - l))));
  }
  return make_report("eq-3.1.151", {{"n", static_cast<double>(n)}}, lhs,
                     1.0 / static_cast<double>(n));
}

BoundReport check_sqrt_n_lemma(const Operator& f, long n, const Vector& w) {
  if (n < 1) throw Error("check_sqrt_n_lemma: n >= 1");
  if (operator_norm(f) > 1.0 + 1e-10) {
    throw NotContraction("check_sqrt_n_lemma: ||F|| > 1");
  }
  if (w.norm() == 0.0) throw ZeroVector("check_sqrt_n_lemma: w = 0");
  const Eigen::Index d = f.dim();
  const Matrix defect = f.mat() - Matrix::Identity(d, d);  // F - I
  const Operator expm = matrix_exp(Operator(-defect), static_cast<double>(n));
  const Vector lhs_vec = expm.mat() * w - matrix_power(f, n).mat() * w;
  const double lhs = lhs_vec.norm();
  const double rhs = std::sqrt(static_cast<double>(n)) * (defect * w).norm();
  return make_report("eq-0.5", {{"n", static_cast<double>(n)}}, lhs, rhs);
}

KEstimate estimate_K(const Operator& f, long n_max, const SectorSpec& sector) {
  if (n_max < 1) throw Error("estimate_K: n_max >= 1");
  certify_quasi_sectorial(f, sector, "estimate_K");
  const Eigen::Index d = f.dim();
  const Matrix one_minus_f = Matrix::Identity(d, d) - f.mat();

  std::vector<double> norms(n_max);
  Matrix power = f.mat();
  for (long n = 1; n <= n_max; ++n) {
    norms[n - 1] = operator_norm(Operator(power * one_minus_f)) * (n + 1);
    if (n < n_max) power = power * f.mat();
  }

  KEstimate est;
  est.argmax_n = 1;
  for (long n = 1; n <= n_max; ++n) {
    if (norms[n - 1] > est.k_hat) {
      est.k_hat = norms[n - 1];
      est.argmax_n = n;
    }
  }
  est.reports.reserve(n_max);
  for (long n = 1; n <= n_max; ++n) {
    est.reports.push_back(make_report(
        "eq-2.1.14",
        {{"n", static_cast<double>(n)}, {"alpha", sector.alpha}},
        norms[n - 1] / (n + 1), est.k_hat / (n + 1),
        {{"K_hat", est.k_hat}}));
  }
  return est;
}

BoundReport check_cube_root_bound(const Operator& f, long n, double k_hat,
                                  const SectorSpec& sector) {
  if (n < 1) throw Error("check_cube_root_bound: n >= 1");
  certify_quasi_sectorial(f, sector, "check_cube_root_bound");
  const Eigen::Index d = f.dim();
  const Matrix one_minus_f = Matrix::Identity(d, d) - f.mat();
  const Operator expm =
      matrix_exp(Operator(one_minus_f), static_cast<double>(n));
  const double lhs =
      operator_norm(Operator(matrix_power(f, n).mat() - expm.mat()));
  const double m_const = 2.0 * k_hat + 2.0;
  const double rhs = m_const / std::cbrt(static_cast<double>(n));
  return make_report("eq-6.2.5",
                     {{"n", static_cast<double>(n)}, {"alpha", sector.alpha}},
                     lhs, rhs, {{"K_hat", k_hat}, {"M", m_const}});
}

ConstantEstimate check_resolvent_rate(const ChernoffFamily& fam,
                                      const Operator& h, double rho,
                                      const std::vector<double>& tau_grid,
                                      const std::vector<double>& t_grid) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw BadGrid("check_resolvent_rate: rho must lie in (0, 1]");
  }
  require_unit_interval_grid(tau_grid, "check_resolvent_rate");
  require_unit_interval_grid(t_grid, "check_resolvent_rate");

  struct Cell {
    double tau, t, lhs, ratio;
  };
  std::vector<Cell> cells;
  for (double t : t_grid) {
    const Operator rh = resolvent_shift(Operator(t * h.mat()), 1.0);
    for (double tau : tau_grid) {
      if (tau > t) continue;  // eq-3.3.1 is stated for 0 < tau <= t
      const Operator s = fam.eval_S(tau);
      const Operator rs = resolvent_shift(Operator(t * s.mat()), 1.0);
      const double lhs = operator_norm(Operator(rs.mat() - rh.mat()));
      cells.push_back({tau, t, lhs, lhs / std::pow(tau / t, rho)});
    }
  }
  if (cells.empty()) {
    throw BadGrid("check_resolvent_rate: no pairs with tau <= t");
  }

  ConstantEstimate est;
  std::size_t best = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].ratio > est.value) {
      est.value = cells[i].ratio;
      best = i;
    }
  }
  est.argmax = {{"tau", cells[best].tau}, {"t", cells[best].t}};
  for (const Cell& c : cells) {
    est.reports.push_back(make_report(
        "eq-3.3.1", {{"tau", c.tau}, {"t", c.t}, {"rho", rho}}, c.lhs,
        est.value * std::pow(c.tau / c.t, rho), {{"M_rho_hat", est.value}}));
  }
  return est;
}

ConstantEstimate check_tau_linear_resolvent(const ChernoffFamily& fam,
                                            const Operator& h,
                                            const std::vector<double>& tau_grid) {
  require_unit_interval_grid(tau_grid, "check_tau_linear_resolvent");
  const Operator rh = resolvent_shift(h, 1.0);

  std::vector<double> lhs(tau_grid.size());
  parallel_for(tau_grid.size(), [&](std::size_t i) {
    const Operator rs = resolvent_shift(fam.eval_S(tau_grid[i]), 1.0);
    lhs[i] = operator_norm(Operator(rs.mat() - rh.mat()));
  });

  ConstantEstimate est;
  std::size_t best = 0;
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    const double ratio = lhs[i] / tau_grid[i];
    if (ratio > est.value) {
      est.value = ratio;
      best = i;
    }
  }
  est.argmax = {{"tau", tau_grid[best]}};
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    est.reports.push_back(make_report("eq-3.3.17", {{"tau", tau_grid[i]}},
                                      lhs[i], est.value * tau_grid[i],
                                      {{"M_1_hat", est.value}}));
  }
  return est;
}

ConstantEstimate check_sectorial_resolvent(const ChernoffFamily& fam,
                                           const Operator& h,
                                           const SectorSpec& sector,
                                           const std::vector<Complex>& zetas,
                                           const std::vector<double>& tau_grid) {
  if (zetas.empty()) throw BadGrid("check_sectorial_resolvent: no zeta values");
  require_unit_interval_grid(tau_grid, "check_sectorial_resolvent");
  constexpr double kPi = 3.14159265358979323846;
  for (const Complex& zeta : zetas) {
    if (zeta == Complex(0.0, 0.0) ||
        std::abs(std::arg(zeta)) >= kPi - sector.alpha) {
      std::ostringstream msg;
      msg << "check_sectorial_resolvent: zeta (" << zeta.real() << ", "
          << zeta.imag() << ") outside the open sector S_(pi - alpha)";
      throw ZetaOutOfSector(msg.str());
    }
  }

  struct Cell {
    Complex zeta;
    double dist, tau, lhs, ratio;
  };
  std::vector<Cell> cells(zetas.size() * tau_grid.size());
  parallel_for(cells.size(), [&](std::size_t idx) {
    const Complex zeta = zetas[idx / tau_grid.size()];
    const double tau = tau_grid[idx % tau_grid.size()];
    const double dist = dist_to_neg_sector(zeta, sector);
    const Operator rz_h = resolvent_shift(h, zeta);
    const Operator rz_s = resolvent_shift(fam.eval_S(tau), zeta);
    const double lhs = operator_norm(Operator(rz_s.mat() - rz_h.mat()));
    cells[idx] = {zeta, dist, tau, lhs, lhs * dist / tau};
  });

  ConstantEstimate est;
  std::size_t best = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].ratio > est.value) {
      est.value = cells[i].ratio;
      best = i;
    }
  }
  est.argmax = {{"zeta_re", cells[best].zeta.real()},
                {"zeta_im", cells[best].zeta.imag()},
                {"tau", cells[best].tau}};
  for (const Cell& c : cells) {
    est.reports.push_back(make_report(
        "est-res",
        {{"zeta_re", c.zeta.real()},
         {"zeta_im", c.zeta.imag()},
         {"tau", c.tau},
         {"alpha", sector.alpha},
         {"dist", c.dist}},
        c.lhs, est.value * c.tau / c.dist, {{"L_hat", est.value}}));
  }
  return est;
}

StrictContractionResult check_strict_contraction(const ChernoffFamily& fam,
                                                 double epsilon,
                                                 const std::vector<double>& tau_grid) {
  if (fam.regularity().kind != Regularity::Kind::self_adjoint) {
    throw RegularityMismatch(
        "check_strict_contraction: family must be self-adjoint");
  }
  if (!(epsilon > 0.0)) throw BadGrid("check_strict_contraction: epsilon > 0");
  if (tau_grid.empty()) throw BadGrid("check_strict_contraction: empty grid");
  for (double tau : tau_grid) {
    if (tau < epsilon - 1e-12) {
      throw BadGrid("check_strict_contraction: grid must lie in [epsilon, inf)");
    }
  }

  std::vector<double> norms(tau_grid.size());
  parallel_for(tau_grid.size(), [&](std::size_t i) {
    norms[i] = operator_norm(fam.eval_F(tau_grid[i]));
  });

  StrictContractionResult res;
  res.delta_hat = 1.0;
  for (double nf : norms) res.delta_hat = std::min(res.delta_hat, 1.0 - nf);
  res.pass = res.delta_hat > 0.0;
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    res.reports.push_back(make_report(
        "eq-3.3.20", {{"tau", tau_grid[i]}, {"epsilon", epsilon}}, norms[i],
        1.0 - res.delta_hat, {{"delta_hat", res.delta_hat}}));
  }
  return res;
}

Lemma321Estimate estimate_lemma321_constant(
    const std::vector<std::pair<Operator, Operator>>& pairs) {
  struct Cell {
    std::size_t index;
    double num, den;
  };
  std::vector<Cell> usable;
  Lemma321Estimate est;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Operator& k = pairs[i].first;
    const Operator& l = pairs[i].second;
    const double den = operator_norm(Operator(
        resolvent_shift(k, 1.0).mat() - resolvent_shift(l, 1.0).mat()));
    if (den <= 1e-13) {  // degenerate pair: 0/0
      ++est.skipped;
      continue;
    }
    const double num = operator_norm(
        Operator(matrix_exp(k, 1.0).mat() - matrix_exp(l, 1.0).mat()));
    usable.push_back({i, num, den});
  }
  est.used = usable.size();
  for (const Cell& c : usable) {
    const double ratio = c.num / c.den;
    if (ratio > est.c_hat) {
      est.c_hat = ratio;
      est.argmax_index = c.index;
    }
  }
  for (const Cell& c : usable) {
    est.reports.push_back(make_report(
        "lemma-3.2.1-c", {{"pair", static_cast<double>(c.index)}}, c.num,
        est.c_hat * c.den,
        {{"ratio", c.num / c.den}, {"resolvent_diff", c.den}}));
  }
  return est;
}

NonsymTrotterKatoResult check_nonsym_trotter_kato(const KatoFunction& f,
                                                  const KatoFunction& g,
                                                  const Operator& a,
                                                  const Operator& b,
                                                  const std::vector<long>& n_list,
                                                  double t) {
  if (n_list.empty()) throw BadGrid("check_nonsym_trotter_kato: empty n_list");
  if (t < 0.0) throw NegativeTau("check_nonsym_trotter_kato: t >= 0");
  const ChernoffFamily sym = make_symmetrized_family(f, g, a, b);
  const HermitianSpectrum spec_a = hermitian_eig(a);
  const HermitianSpectrum spec_b = hermitian_eig(b);
  const Matrix eh = sym.semigroup(t).mat();
  const Eigen::Index d = a.dim();

  NonsymTrotterKatoResult res;
  res.reports.resize(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t i) {
    const long n = n_list[i];
    const double tau = t / n;
    const Matrix fa =
        matrix_function(spec_a, [&](double l) { return clamp01(f.eval(tau * l)); })
            .mat();
    const Matrix gb =
        matrix_function(spec_b, [&](double l) { return clamp01(g.eval(tau * l)); })
            .mat();
    const double lhs =
        operator_norm(Operator(matrix_power(Operator(fa * gb), n).mat() - eh));
    const double piece_sym = operator_norm(
        Operator(matrix_power(sym.eval_F(tau), n - 1).mat() - eh));
    const double piece_g = 2.0 * operator_norm(Operator(
                                     (Matrix::Identity(d, d) - gb) * eh));
    const double piece_f =
        operator_norm(Operator((Matrix::Identity(d, d) - fa) * eh));
    res.reports[i] = make_report(
        "trotter-kato-nonsym", {{"n", static_cast<double>(n)}, {"t", t}}, lhs,
        piece_sym + piece_g + piece_f,
        {{"piece_symmetrized", piece_sym},
         {"piece_g", piece_g},
         {"piece_f", piece_f},
         {"gamma_f", f.gamma},
         {"gamma_g", g.gamma}});
  });

  ErrorCurve curve;
  curve.family_id = "nonsym{" + f.id + "," + g.id + "}";
  curve.t_scalar = t;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    curve.samples.push_back({n_list[i], res.reports[i].lhs, t});
  }
  try {
    res.fitted = fit_rate(curve);
  } catch (const AllBelowFloor&) {
  } catch (const TooFewSamples&) {
  }
  return res;
}

}  // namespace chernoff
