#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chernoff/approximants.hpp"
#include "chernoff/bounds.hpp"
#include "chernoff/families.hpp"

#include "json.hpp"

namespace chernoff {

/// Matrix source in a scenario: an inline interchange-format matrix or a
/// seeded random draw.
struct MatrixSpec {
  std::optional<Operator> inline_matrix;
  struct RandomSpec {
    Eigen::Index d = 0;
    std::optional<std::uint64_t> seed;  // falls back to the scenario seed
    std::string structure;              // psd | sectorial | hermitian-contraction
                                        // | contraction | equispaced
    double spectral_radius = 1.0;
    double min_eigenvalue = 0.0;
    double alpha = 0.0;  // sectorial only
  };
  std::optional<RandomSpec> random;
};

struct FamilySpec {
  std::string kind;  // resolvent | exponential | kato | trotter | symmetrized-kato
  std::optional<MatrixSpec> h, a, b;
  std::optional<std::string> kato_f, kato_g;
  std::string regularity = "general";  // self-adjoint | quasi-sectorial | general
  std::optional<double> alpha;         // quasi-sectorial semi-angle
};

/// One experiment: a family, an n sweep, a t point or interval, and a list
/// of bound ids to verify.
struct Scenario {
  std::string name;
  FamilySpec family;
  std::vector<long> n_list;
  std::optional<double> t_scalar;
  std::optional<TInterval> t_interval;
  std::optional<double> alpha;
  std::vector<std::string> bounds;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  double rho = 1.0;        // exponent for eq-3.3.1
  double epsilon = 0.5;    // threshold for eq-3.3.20
  int lemma_pairs = 100;   // pair count for lemma-3.2.1-c
};

/// Parses and validates. Throws BadScenario with a line-annotated message.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

/// Materializes the family (drawing any random matrices from the seed).
ChernoffFamily build_family(const Scenario& s);

struct ScenarioResult {
  int exit_code = 0;  // 0 all pass, 1 any bound violated
  int bounds_passed = 0;
  int bounds_total = 0;
  std::vector<ErrorCurve> curves;
  std::vector<BoundReport> reports;
  std::string summary;
};

/// Runs the full scenario and writes errors.csv, reports.json and
/// summary.txt into out_dir (created if missing). Byte-identical outputs
/// for a fixed config and seed.
ScenarioResult run_scenario(const Scenario& s,
                            const std::optional<std::string>& out_override = {});

// --- artifact serialization -------------------------------------------------

/// CSV with header family_id,t,n,error[,bound,margin]; 17 significant digits.
std::string error_curves_to_csv(const std::vector<ErrorCurve>& curves);
std::vector<ErrorCurve> error_curves_from_csv(const std::string& csv);

nlohmann::ordered_json reports_to_json(const std::vector<BoundReport>& reports);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_g17(double v);

}  // namespace chernoff
