#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_helpers.hpp"

#include "chernoff/bounds.hpp"
#include "chernoff/random_ops.hpp"

using namespace chernoff;
using namespace chernoff::testing;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("registry holds exactly the ten checker ids") {
  const std::vector<std::string> expected = {
      "eq-0.5",        "eq-2.1.14", "eq-3.1.151",         "eq-3.3.1",
      "eq-3.3.17",     "eq-3.3.20", "eq-6.2.5",           "est-res",
      "lemma-3.2.1-c", "trotter-kato-nonsym"};
  CHECK(bound_registry() == expected);
  for (const auto& id : expected) CHECK(is_registered_bound(id));
  CHECK_FALSE(is_registered_bound("eq-0.0"));
}

TEST_CASE("spectral bound: fixed points and the scalar grid oracle") {
  const BoundReport id_report = check_spectral_bound(Operator::identity(3), 7);
  CHECK(id_report.lhs == 0.0);
  CHECK(id_report.pass);

  const BoundReport zero_report = check_spectral_bound(diag({0.0}), 1);
  CHECK(zero_report.lhs ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(zero_report.pass);

  // scalar grid scan shows sup_{l in [0,1]} |l^n - e^{-n(1-l)}| <= 1/n
  for (long n : {1L, 2L, 16L, 256L}) {
    double sup = 0.0;
    for (int k = 0; k <= 20000; ++k) {
      const double l = k / 20000.0;
      sup = std::max(sup, std::abs(std::pow(l, static_cast<double>(n)) -
                                   std::exp(-n * (1.0 - l))));
    }
    CHECK(sup <= 1.0 / n);
  }
}

TEST_CASE("spectral bound passes with margin >= 0 on random contractions") {
  MatrixRng rng(401);
  for (int trial = 0; trial < 25; ++trial) {
    const Operator f = rng.hermitian_contraction(8);
    for (long n : {1L, 3L, 32L, 200L}) {
      const BoundReport r = check_spectral_bound(f, n);
      CHECK(r.margin >= 0.0);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("spectral bound hypothesis checks") {
  CHECK_THROWS_AS(check_spectral_bound(mat2(0, 1, 0, 0), 2), NotHermitian);
  CHECK_THROWS_AS(check_spectral_bound(diag({1.5}), 2), SpectrumOutOfRange);
  CHECK_THROWS_AS(check_spectral_bound(diag({-0.5}), 2), SpectrumOutOfRange);
}

TEST_CASE("sqrt-n lemma: fixed points and a randomized suite") {
  Vector w1(2);
  w1 << 1.0, 0.0;
  const BoundReport at_identity =
      check_sqrt_n_lemma(Operator::identity(2), 4, w1);
  CHECK(at_identity.lhs <= 1e-14);
  CHECK(at_identity.rhs == 0.0);
  CHECK(at_identity.pass);

  Vector w(1);
  w << 1.0;
  const BoundReport scalar = check_sqrt_n_lemma(diag({0.0}), 1, w);
  CHECK(scalar.lhs == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(scalar.rhs == doctest::Approx(1.0));
  CHECK(scalar.pass);

  MatrixRng rng(409);
  std::uniform_int_distribution<int> dims(1, 8);
  std::uniform_int_distribution<long> ns(1, 64);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = dims(rng.engine());
    const Operator f = rng.contraction(d);
    const BoundReport r =
        check_sqrt_n_lemma(f, ns(rng.engine()), rng.unit_vector(d));
    CHECK(r.pass);
  }
}

TEST_CASE("sqrt-n lemma hypothesis checks") {
  Vector w(1);
  w << 1.0;
  CHECK_THROWS_AS(check_sqrt_n_lemma(diag({2.0}), 2, w), NotContraction);
  Vector zero(1);
  zero << 0.0;
  CHECK_THROWS_AS(check_sqrt_n_lemma(diag({0.5}), 2, zero), ZeroVector);
}

TEST_CASE("estimate_K: identity, equispaced oracle, sectorial resolvent") {
  const KEstimate at_identity =
      estimate_K(Operator::identity(4), 16, SectorSpec(0.0));
  CHECK(at_identity.k_hat == 0.0);

  // 33 equispaced eigenvalues in [0,1]: the scalar maximization of
  // (n+1) l^n (1-l) peaks at exactly 1/2 (l = 1/2, n = 1)
  MatrixRng rng(419);
  const Operator u = rng.unitary(33);
  Eigen::VectorXd vals(33);
  for (int k = 0; k < 33; ++k) vals(k) = k / 32.0;
  const Operator f(u.mat() * vals.asDiagonal() * u.mat().adjoint());
  const KEstimate est = estimate_K(f, 64, SectorSpec(0.0));
  CHECK(est.k_hat == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(est.argmax_n == 1);
  CHECK(est.reports.size() == 64);
  for (const BoundReport& r : est.reports) CHECK(r.pass);

  const Operator h = rng.sectorial(8, kPi / 4, 2.0);
  const Operator res = resolvent_shift(Operator(0.5 * h.mat()), 1.0);
  const KEstimate qs = estimate_K(res, 128, SectorSpec(kPi / 4));
  CHECK(qs.k_hat > 0.0);
  CHECK(std::isfinite(qs.k_hat));
}

TEST_CASE("estimate_K refuses uncertified inputs") {
  CHECK_THROWS_AS(estimate_K(diag({-0.5}), 8, SectorSpec(0.0)),
                  RegularityMismatch);
  CHECK_THROWS_AS(estimate_K(diag({2.0}), 8, SectorSpec(0.0)), NotContraction);
}

TEST_CASE("estimators never shrink under grid refinement") {
  MatrixRng rng(421);
  const Operator f = rng.hermitian_contraction(6);
  const double coarse = estimate_K(f, 64, SectorSpec(0.0)).k_hat;
  const double fine = estimate_K(f, 128, SectorSpec(0.0)).k_hat;
  CHECK(fine >= coarse - 1e-10);

  const auto fam = make_resolvent_family(rng.psd(4, 3.0),
                                         Regularity::self_adjoint());
  const Operator h = fam.generator();
  const std::vector<double> coarse_grid = {0.01, 0.1, 1.0};
  std::vector<double> fine_grid = coarse_grid;
  for (double extra : {0.003, 0.03, 0.3, 0.7}) fine_grid.push_back(extra);
  const double m_coarse = check_tau_linear_resolvent(fam, h, coarse_grid).value;
  const double m_fine = check_tau_linear_resolvent(fam, h, fine_grid).value;
  CHECK(m_fine >= m_coarse - 1e-10);
}

TEST_CASE("cube-root bound: identity, self-adjoint cross-check") {
  CHECK(check_cube_root_bound(Operator::identity(3), 5, 0.0, SectorSpec(0.0))
            .pass);

  // for self-adjoint F the spectral bound dominates: lhs <= 1/n
  MatrixRng rng(431);
  for (int trial = 0; trial < 10; ++trial) {
    const Operator f = rng.hermitian_contraction(6);
    for (long n : {1L, 8L, 64L}) {
      const BoundReport r = check_cube_root_bound(f, n, 0.5, SectorSpec(0.0));
      CHECK(r.lhs <= 1.0 / n + 1e-12);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("cube-root bound on quasi-sectorial resolvent contractions") {
  MatrixRng rng(433);
  const SectorSpec sector(kPi / 4);
  const Operator h = rng.sectorial(8, kPi / 4, 2.0);
  const Operator f = resolvent_shift(Operator(0.5 * h.mat()), 1.0);
  const double k_hat = estimate_K(f, 256, sector).k_hat;
  for (long n : {1L, 4L, 32L, 256L}) {
    const BoundReport r = check_cube_root_bound(f, n, k_hat, sector);
    CHECK(r.pass);
  }
}

TEST_CASE("resolvent rate: zero generator and the scalar chain") {
  const auto zero =
      make_exp_family(Operator::zero(3), Regularity::self_adjoint());
  const auto tau_grid = std::vector<double>{0.1, 0.5, 1.0};
  const auto t_grid = std::vector<double>{0.25, 1.0};
  const ConstantEstimate z =
      check_resolvent_rate(zero, Operator::zero(3), 1.0, tau_grid, t_grid);
  CHECK(z.value == 0.0);

  // scalar resolvent family, pairs with tau = t:
  // S(tau) = (1 - (1+tau)^{-1})/tau = (1+tau)^{-1}
  const auto fam = make_resolvent_family(diag({1.0}), Regularity::self_adjoint());
  const ConstantEstimate est =
      check_resolvent_rate(fam, diag({1.0}), 1.0, tau_grid, t_grid);
  for (const BoundReport& r : est.reports) {
    const double tau = r.params.at("tau");
    const double t = r.params.at("t");
    const double s = 1.0 / (1.0 + tau);
    const double expected = std::abs(1.0 / (1.0 + t * s) - 1.0 / (1.0 + t));
    CHECK(r.lhs == doctest::Approx(expected).epsilon(1e-12));
  }

  const auto exp_fam = make_exp_family(diag({1.0}), Regularity::self_adjoint());
  const ConstantEstimate m1 =
      check_resolvent_rate(exp_fam, diag({1.0}), 1.0, tau_grid, t_grid);
  CHECK(std::isfinite(m1.value));
  CHECK(m1.value > 0.0);

  CHECK_THROWS_AS(
      check_resolvent_rate(fam, diag({1.0}), 1.0, {0.5, 2.0}, {1.0}), BadGrid);
  CHECK_THROWS_AS(check_resolvent_rate(fam, diag({1.0}), 1.5, tau_grid, t_grid),
                  BadGrid);
}

TEST_CASE("tau-linear resolvent estimate") {
  const auto tau_grid = std::vector<double>{1e-3, 1e-2, 0.1, 1.0};

  const auto zero =
      make_exp_family(Operator::zero(2), Regularity::self_adjoint());
  CHECK(check_tau_linear_resolvent(zero, Operator::zero(2), tau_grid).value ==
        0.0);

  // scalar exp family: S(tau) = (1 - e^{-tau})/tau
  const auto exp_fam = make_exp_family(diag({1.0}), Regularity::self_adjoint());
  const ConstantEstimate est =
      check_tau_linear_resolvent(exp_fam, diag({1.0}), tau_grid);
  for (const BoundReport& r : est.reports) {
    const double tau = r.params.at("tau");
    const double s = (1.0 - std::exp(-tau)) / tau;
    CHECK(r.lhs ==
          doctest::Approx(std::abs(1.0 / (1.0 + s) - 0.5)).epsilon(1e-10));
  }
  CHECK(est.value > 0.0);

  // diagonal resolvent family: S(tau) = H (1 + tau H)^{-1} entrywise
  const Operator h = diag({0.5, 2.0});
  const auto res_fam = make_resolvent_family(h, Regularity::self_adjoint());
  const ConstantEstimate res_est =
      check_tau_linear_resolvent(res_fam, h, tau_grid);
  for (const BoundReport& r : res_est.reports) {
    const double tau = r.params.at("tau");
    double expected = 0.0;
    for (double l : {0.5, 2.0}) {
      const double s = l / (1.0 + tau * l);
      expected = std::max(expected, std::abs(1.0 / (1.0 + s) - 1.0 / (1.0 + l)));
    }
    CHECK(r.lhs == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("sectorial resolvent estimate and the zeta = 1 cross-check") {
  MatrixRng rng(439);
  const SectorSpec sector(kPi / 4);
  const Operator h = rng.sectorial(6, kPi / 4, 2.0);
  const auto fam =
      make_resolvent_family(h, Regularity::quasi_sectorial(kPi / 4));
  const std::vector<double> tau_grid = {0.01, 0.1, 1.0};
  const std::vector<Complex> zetas = {Complex(1.0, 0.0), Complex(0.5, 0.9),
                                      Complex(0.5, -0.9)};
  const ConstantEstimate est =
      check_sectorial_resolvent(fam, h, sector, zetas, tau_grid);
  CHECK(std::isfinite(est.value));
  CHECK(est.value > 0.0);

  // at zeta = 1 the measured difference matches the tau-linear checker
  const ConstantEstimate linear = check_tau_linear_resolvent(fam, h, tau_grid);
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    CHECK(est.reports[i].lhs ==
          doctest::Approx(linear.reports[i].lhs).epsilon(1e-12));
  }

  CHECK_THROWS_AS(
      check_sectorial_resolvent(fam, h, sector, {Complex(-1.0, 0.0)}, tau_grid),
      ZetaOutOfSector);
}

TEST_CASE("strict contraction below a spectral gap") {
  MatrixRng rng(443);
  const Operator h = rng.psd(5, 4.0, 1.0);  // H >= I
  const auto fam = make_exp_family(h, Regularity::self_adjoint());
  const std::vector<double> grid = {0.5, 1.0, 2.0, 5.0};
  const StrictContractionResult res = check_strict_contraction(fam, 0.5, grid);
  CHECK(res.pass);
  CHECK(res.delta_hat >= 1.0 - std::exp(-0.5) - 1e-12);

  const auto flat =
      make_exp_family(Operator::zero(3), Regularity::self_adjoint());
  const StrictContractionResult degenerate =
      check_strict_contraction(flat, 0.5, grid);
  CHECK_FALSE(degenerate.pass);
  CHECK(degenerate.delta_hat == 0.0);

  const auto clip = make_kato_family(kato_from_registry("clipped-linear"),
                                     rng.psd(4, 3.0, 1.0));
  const StrictContractionResult clipped =
      check_strict_contraction(clip, 1.0, {1.0, 2.0, 4.0});
  CHECK(clipped.pass);
  CHECK(clipped.delta_hat == doctest::Approx(1.0));

  const auto general = make_trotter_family(rng.psd(3, 1.0), rng.psd(3, 1.0));
  CHECK_THROWS_AS(check_strict_contraction(general, 0.5, grid),
                  RegularityMismatch);
  CHECK_THROWS_AS(check_strict_contraction(fam, 0.5, {0.1}), BadGrid);
}

TEST_CASE("lemma 3.2.1 constant: degenerate pair and the scalar ratio") {
  std::vector<std::pair<Operator, Operator>> pairs;
  pairs.emplace_back(diag({1.0}), diag({1.0}));  // K = L, skipped
  pairs.emplace_back(diag({1.0}), diag({2.0}));
  const Lemma321Estimate est = estimate_lemma321_constant(pairs);
  CHECK(est.skipped == 1);
  CHECK(est.used == 1);
  // (e^{-1} - e^{-2}) / (1/2 - 1/3), from the scalar oracle
  CHECK(est.c_hat == doctest::Approx(1.3952649476089776).epsilon(1e-12));
  CHECK(est.argmax_index == 1);
}

TEST_CASE("lemma 3.2.1 constant stays bounded on a random sweep") {
  MatrixRng rng(449);
  std::vector<std::pair<Operator, Operator>> pairs;
  std::uniform_int_distribution<int> dims(1, 8);
  for (int i = 0; i < 200; ++i) {
    const int d = dims(rng.engine());
    pairs.emplace_back(rng.psd(d, 10.0), rng.psd(d, 10.0));
  }
  const Lemma321Estimate est = estimate_lemma321_constant(pairs);
  CHECK(est.used + est.skipped == 200);
  CHECK(std::isfinite(est.c_hat));
  CHECK(est.c_hat > 0.0);
  for (const BoundReport& r : est.reports) CHECK(r.pass);
}

TEST_CASE("nonsymmetric Trotter-Kato: exact cases and the decomposition") {
  MatrixRng rng(457);
  const KatoFunction e = kato_from_registry("exp");
  const std::vector<long> ns = {1, 2, 4, 8};

  const Operator a = rng.psd(4, 2.0);
  const NonsymTrotterKatoResult b0 =
      check_nonsym_trotter_kato(e, e, a, Operator::zero(4), ns, 1.0);
  for (const BoundReport& r : b0.reports) CHECK(r.lhs <= 1e-10);

  const NonsymTrotterKatoResult commuting = check_nonsym_trotter_kato(
      e, e, diag({1.0, 0.5}), diag({0.25, 2.0}), ns, 1.0);
  for (const BoundReport& r : commuting.reports) CHECK(r.lhs <= 1e-10);
}

TEST_CASE("nonsymmetric Trotter-Kato rate on a noncommuting pair") {
  MatrixRng rng(461);
  const KatoFunction r1 = kato_from_registry("resolvent-1");
  const Operator a = rng.psd(4, 2.0);
  const Operator b = rng.psd(4, 1.5);
  std::vector<long> ns;
  for (long n = 8; n <= 1024; n *= 2) ns.push_back(n);
  const NonsymTrotterKatoResult res =
      check_nonsym_trotter_kato(r1, r1, a, b, ns, 1.0);
  for (const BoundReport& r : res.reports) {
    CHECK(r.margin >= -1e-12);  // lhs <= sum of the three pieces
  }
  REQUIRE(res.fitted.has_value());
  CHECK(res.fitted->rho >= 0.9);
}

TEST_CASE("report pass flag follows the margin rule") {
  const BoundReport ok = make_report("eq-0.5", {}, 1.0, 1.0);
  CHECK(ok.pass);
  CHECK(ok.margin == 0.0);
  const BoundReport barely = make_report("eq-0.5", {}, 1.0 + 1e-11, 1.0);
  CHECK(barely.pass);  // within the 1e-10 relative tolerance
  const BoundReport bad = make_report("eq-0.5", {}, 1.1, 1.0);
  CHECK_FALSE(bad.pass);
}

}  // TEST_SUITE
