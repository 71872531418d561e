#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chernoff/errors.hpp"

namespace chernoff {

/// A validated Kato function: Borel f on [0, inf) with 0 <= f <= 1,
/// f(0) = 1 and f'(+0) = -1, together with the computed constant
/// gamma = sup_{x>0} (1 - f(x)) / x.
struct KatoFunction {
  std::string id;
  std::function<double(double)> eval;
  double gamma = 0.0;
  double derivative_at_zero = 0.0;
};

/// Default validation grid: logarithmic, 400 points covering [1e-8, 1e3].
std::vector<double> default_kato_grid();

/// Validates f on the grid and computes gamma and the one-sided derivative
/// at 0. Throws InvalidKato naming the violated clause.
KatoFunction validate_kato(const std::string& id,
                           std::function<double(double)> f,
                           const std::vector<double>& grid = default_kato_grid());

/// Built-in registry: exp, resolvent-k for k in {1,2,4} (f(s) = (1+s/k)^{-k})
/// and clipped-linear (f(s) = max(0, 1-s)).
const std::vector<std::string>& kato_registry_ids();

/// Looks up and validates a registry function. Throws InvalidKato for
/// unknown ids.
KatoFunction kato_from_registry(const std::string& id);

}  // namespace chernoff
