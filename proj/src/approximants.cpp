#include "chernoff/approximants.hpp"

#include <algorithm>
#include <cmath>

#include "chernoff/parallel.hpp"

namespace chernoff {

namespace {

void require_n(long n) {
  if (n < 1) throw Error("approximant: n must be >= 1");
}

void require_n_list(const std::vector<long>& n_list) {
  if (n_list.empty()) throw BadGrid("n_list must be nonempty");
  long prev = 0;
  for (long n : n_list) {
    if (n < 1 || n <= prev) {
      throw BadGrid("n_list must be ascending with entries >= 1");
    }
    prev = n;
  }
}

}  // namespace

std::vector<long> default_n_list() {
  return {8, 16, 32, 64, 128, 256, 512, 1024};
}

Operator chernoff_power(const ChernoffFamily& fam, double t, long n) {
  require_n(n);
  if (t < 0.0) throw NegativeTau("chernoff_power: t must be >= 0");
  return matrix_power(fam.eval_F(t / n), n);
}

double approximation_error(const ChernoffFamily& fam, double t, long n) {
  const Operator approx = chernoff_power(fam, t, n);
  const Operator exact = fam.semigroup(t);
  return operator_norm(Operator(approx.mat() - exact.mat()));
}

ErrorDecomposition approximation_error_pieces(const ChernoffFamily& fam,
                                              double t, long n) {
  require_n(n);
  if (t < 0.0) throw NegativeTau("approximation_error_pieces: t >= 0");
  if (t == 0.0) return {0.0, 0.0, 0.0};
  const Operator approx = chernoff_power(fam, t, n);
  const Operator exact = fam.semigroup(t);
  const Operator mid = matrix_exp(fam.eval_S(t / n), t);  // e^{-t S(t/n)}
  ErrorDecomposition d;
  d.total = operator_norm(Operator(approx.mat() - exact.mat()));
  d.chernoff_defect = operator_norm(Operator(approx.mat() - mid.mat()));
  d.semigroup_defect = operator_norm(Operator(mid.mat() - exact.mat()));
  return d;
}

SupResult sup_error(const ChernoffFamily& fam, double t_lo, double t_hi,
                    int t_grid_size, long n) {
  require_n(n);
  if (!(0.0 <= t_lo && t_lo <= t_hi)) {
    throw BadInterval("sup_error: need 0 <= t_lo <= t_hi");
  }
  if (t_lo == t_hi) {
    return {approximation_error(fam, t_lo, n), t_lo};
  }
  if (t_grid_size < 2) {
    throw BadInterval("sup_error: grid must have at least 2 points");
  }
  std::vector<double> errs(t_grid_size);
  parallel_for(t_grid_size, [&](std::size_t i) {
    const double t =
        t_lo + (t_hi - t_lo) * static_cast<double>(i) / (t_grid_size - 1);
    errs[i] = approximation_error(fam, t, n);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < errs.size(); ++i) {
    if (errs[i] > errs[best]) best = i;
  }
  const double t_best =
      t_lo + (t_hi - t_lo) * static_cast<double>(best) / (t_grid_size - 1);
  return {errs[best], t_best};
}

ErrorCurve error_curve(const ChernoffFamily& fam, double t,
                       const std::vector<long>& n_list,
                       const std::string& family_id) {
  require_n_list(n_list);
  ErrorCurve curve;
  curve.family_id = family_id.empty() ? fam.label() : family_id;
  curve.t_scalar = t;
  curve.samples.resize(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t i) {
    curve.samples[i] = {n_list[i], approximation_error(fam, t, n_list[i]), t};
  });
  return curve;
}

ErrorCurve error_curve(const ChernoffFamily& fam, const TInterval& interval,
                       const std::vector<long>& n_list,
                       const std::string& family_id) {
  require_n_list(n_list);
  ErrorCurve curve;
  curve.family_id = family_id.empty() ? fam.label() : family_id;
  curve.t_interval = interval;
  curve.samples.resize(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t i) {
    const SupResult s =
        sup_error(fam, interval.lo, interval.hi, interval.grid, n_list[i]);
    curve.samples[i] = {n_list[i], s.sup, s.argmax_t};
  });
  return curve;
}

RateFit fit_rate(const ErrorCurve& curve) {
  std::vector<double> xs, ys;
  for (const ErrorSample& s : curve.samples) {
    if (s.error > tol::kErrorFloor) {
      xs.push_back(std::log(static_cast<double>(s.n)));
      ys.push_back(std::log(s.error));
    }
  }
  if (xs.empty()) {
    throw AllBelowFloor("fit_rate: every sample is at the numerical floor");
  }
  if (xs.size() < 4) {
    throw TooFewSamples("fit_rate: need >= 4 samples above the floor");
  }
  const std::size_t m = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / m;
  double residual = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    residual = std::max(residual,
                        std::abs(ys[i] - (intercept + slope * xs[i])));
  }
  return {std::exp(intercept), -slope, residual};
}

ErrorCurve fitted_error_curve(const ChernoffFamily& fam, double t,
                              const std::vector<long>& n_list,
                              const std::string& family_id) {
  ErrorCurve curve = error_curve(fam, t, n_list, family_id);
  try {
    curve.fitted = fit_rate(curve);
  } catch (const AllBelowFloor&) {
  } catch (const TooFewSamples&) {
  }
  return curve;
}

}  // namespace chernoff
