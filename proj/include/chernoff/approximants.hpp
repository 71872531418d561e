#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chernoff/families.hpp"

namespace chernoff {

struct ErrorSample {
  long n;
  double error;
  double t;  // the sampled t (argmax over the grid for interval curves)
};

struct RateFit {
  double c;         // prefactor in error ~ c / n^rho
  double rho;       // fitted exponent
  double residual;  // max |log-space fit deviation|
};

/// Interval descriptor for sup-over-t curves.
struct TInterval {
  double lo;
  double hi;
  int grid;
};

/// (n, error) samples of ||F(t/n)^n - e^{-tH}|| for one family, with an
/// optional fitted power law.
struct ErrorCurve {
  std::string family_id;
  std::optional<double> t_scalar;
  std::optional<TInterval> t_interval;
  std::vector<ErrorSample> samples;
  std::optional<RateFit> fitted;
};

/// F(t/n)^n.
Operator chernoff_power(const ChernoffFamily& fam, double t, long n);

/// ||F(t/n)^n - e^{-tH}||.
double approximation_error(const ChernoffFamily& fam, double t, long n);

/// The two pieces of the triangle split
/// ||F^n - e^{-tH}|| <= ||F^n - e^{-tS(t/n)}|| + ||e^{-tS(t/n)} - e^{-tH}||
/// alongside the total, for diagnostics.
struct ErrorDecomposition {
  double total;
  double chernoff_defect;   // ||F(t/n)^n - e^{-t S(t/n)}||
  double semigroup_defect;  // ||e^{-t S(t/n)} - e^{-tH}||
};
ErrorDecomposition approximation_error_pieces(const ChernoffFamily& fam,
                                              double t, long n);

struct SupResult {
  double sup;
  double argmax_t;
};

/// Max of approximation_error over a uniform t-grid including both endpoints.
/// Throws BadInterval on an empty or reversed interval or grid < 2
/// (a singleton [t,t] with grid >= 2 is allowed and collapses to t).
SupResult sup_error(const ChernoffFamily& fam, double t_lo, double t_hi,
                    int t_grid_size, long n);

/// One sample per n at fixed t.
ErrorCurve error_curve(const ChernoffFamily& fam, double t,
                       const std::vector<long>& n_list,
                       const std::string& family_id = "");

/// One sup_error sample per n over the interval.
ErrorCurve error_curve(const ChernoffFamily& fam, const TInterval& interval,
                       const std::vector<long>& n_list,
                       const std::string& family_id = "");

/// Default dyadic n list: 2^3 ... 2^10.
std::vector<long> default_n_list();

/// Least squares of log error against log n. Excludes samples at or below
/// the numerical floor (1e-14); throws TooFewSamples (< 4 usable) or
/// AllBelowFloor (every sample at the floor — exact family).
RateFit fit_rate(const ErrorCurve& curve);

/// error_curve + fit_rate, storing the fit on the curve when it succeeds
/// with >= 4 usable samples (AllBelowFloor leaves fitted empty).
ErrorCurve fitted_error_curve(const ChernoffFamily& fam, double t,
                              const std::vector<long>& n_list,
                              const std::string& family_id = "");

}  // namespace chernoff
