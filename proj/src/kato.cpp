#include "chernoff/kato.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chernoff {

std::vector<double> default_kato_grid() {
  // log-spaced 1e-8 .. 1e3; the small end pins gamma and f'(+0) well inside
  // the 1e-6 / 1e-4 validation tolerances before cancellation noise bites
  constexpr int n = 400;
  constexpr double lo = 1e-8, hi = 1e3;
  std::vector<double> grid(n);
  const double step = (std::log(hi) - std::log(lo)) / (n - 1);
  for (int i = 0; i < n; ++i) grid[i] = std::exp(std::log(lo) + i * step);
  grid.back() = hi;
  return grid;
}

KatoFunction validate_kato(const std::string& id,
                           std::function<double(double)> f,
                           const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidKato("validate_kato: empty grid");
  std::vector<double> xs(grid);
  std::sort(xs.begin(), xs.end());
  if (xs.front() <= 0.0) {
    throw InvalidKato("validate_kato: grid must be strictly positive");
  }

  const double f0 = f(0.0);
  if (!(std::abs(f0 - 1.0) <= 1e-12)) {
    std::ostringstream msg;
    msg << "Kato function '" << id << "': normalization clause f(0) = 1 "
        << "violated (f(0) = " << f0 << ")";
    throw InvalidKato(msg.str());
  }

  double gamma = -std::numeric_limits<double>::infinity();
  for (double x : xs) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "Kato function '" << id << "': f(" << x << ") is not finite";
      throw InvalidKato(msg.str());
    }
    if (v < -1e-12 || v > 1.0 + 1e-12) {
      std::ostringstream msg;
      msg << "Kato function '" << id << "': range clause 0 <= f <= 1 "
          << "violated (f(" << x << ") = " << v << ")";
      throw InvalidKato(msg.str());
    }
    gamma = std::max(gamma, (1.0 - v) / x);
  }

  // one-sided difference at the smallest grid point; Eq-style limit checked
  // at tolerance 1e-4
  const double x0 = xs.front();
  const double derivative = (f(x0) - 1.0) / x0;
  if (!(std::abs(derivative + 1.0) <= 1e-4)) {
    std::ostringstream msg;
    msg << "Kato function '" << id << "': derivative clause f'(+0) = -1 "
        << "violated (one-sided difference = " << derivative << ")";
    throw InvalidKato(msg.str());
  }

  KatoFunction k;
  k.id = id;
  k.eval = std::move(f);
  k.gamma = gamma;
  k.derivative_at_zero = derivative;
  return k;
}

const std::vector<std::string>& kato_registry_ids() {
  static const std::vector<std::string> ids = {
      "exp", "resolvent-1", "resolvent-2", "resolvent-4", "clipped-linear"};
  return ids;
}

KatoFunction kato_from_registry(const std::string& id) {
  if (id == "exp") {
    return validate_kato(id, [](double s) { return std::exp(-s); });
  }
  if (id == "resolvent-1" || id == "resolvent-2" || id == "resolvent-4") {
    const double k = id.back() - '0';
    return validate_kato(
        id, [k](double s) { return std::pow(1.0 + s / k, -k); });
  }
  if (id == "clipped-linear") {
    return validate_kato(id, [](double s) { return std::max(0.0, 1.0 - s); });
  }
  throw InvalidKato("unknown Kato registry id: " + id);
}

}  // namespace chernoff
