#include "chernoff/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "chernoff/random_ops.hpp"

namespace chernoff {

namespace {

using nlohmann::json;

// role offsets for sub-seeds derived from the scenario seed
constexpr std::uint64_t kSeedH = 0, kSeedA = 1, kSeedB = 2;
constexpr std::uint64_t kSeedVector = 100, kSeedLemma = 200;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw BadScenario("scenario field '" + field + "': " + why);
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  const double step = (std::log(hi) - std::log(lo)) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = std::exp(std::log(lo) + i * step);
  g.back() = hi;
  return g;
}

MatrixSpec parse_matrix_spec(const json& j, const std::string& field) {
  MatrixSpec spec;
  if (!j.is_object()) fail(field, "expected a matrix object");
  if (j.contains("random")) {
    const json& r = j.at("random");
    MatrixSpec::RandomSpec rs;
    if (!r.contains("d")) fail(field, "random spec needs 'd'");
    rs.d = r.at("d").get<Eigen::Index>();
    if (rs.d < 1) fail(field, "random spec: d must be positive");
    if (!r.contains("structure")) fail(field, "random spec needs 'structure'");
    rs.structure = r.at("structure").get<std::string>();
    static const std::vector<std::string> structures = {
        "psd", "sectorial", "hermitian-contraction", "contraction",
        "equispaced"};
    if (std::find(structures.begin(), structures.end(), rs.structure) ==
        structures.end()) {
      fail(field, "unknown random structure '" + rs.structure + "'");
    }
    if (r.contains("seed")) rs.seed = r.at("seed").get<std::uint64_t>();
    if (r.contains("spectral_radius")) {
      rs.spectral_radius = r.at("spectral_radius").get<double>();
      if (!(rs.spectral_radius > 0)) fail(field, "spectral_radius must be > 0");
    }
    if (r.contains("min_eigenvalue")) {
      rs.min_eigenvalue = r.at("min_eigenvalue").get<double>();
    }
    if (r.contains("alpha")) rs.alpha = r.at("alpha").get<double>();
    if (rs.structure == "sectorial" && !r.contains("alpha")) {
      fail(field, "sectorial random spec needs 'alpha'");
    }
    spec.random = rs;
    return spec;
  }
  try {
    spec.inline_matrix = Operator::from_json_string(j.dump());
  } catch (const Error& e) {
    fail(field, e.what());
  }
  return spec;
}

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream msg;
    msg << "line " << line_of_offset(text, e.byte) << ": " << e.what();
    throw BadScenario(msg.str());
  }

  Scenario s;
  if (!j.contains("name")) fail("name", "required");
  s.name = j.at("name").get<std::string>();

  if (!j.contains("family")) fail("family", "required");
  const json& fam = j.at("family");
  if (!fam.contains("kind")) fail("family.kind", "required");
  s.family.kind = fam.at("kind").get<std::string>();
  static const std::vector<std::string> kinds = {
      "resolvent", "exponential", "kato", "trotter", "symmetrized-kato"};
  if (std::find(kinds.begin(), kinds.end(), s.family.kind) == kinds.end()) {
    fail("family.kind", "unknown kind '" + s.family.kind + "'");
  }
  if (fam.contains("H")) s.family.h = parse_matrix_spec(fam.at("H"), "family.H");
  if (fam.contains("A")) s.family.a = parse_matrix_spec(fam.at("A"), "family.A");
  if (fam.contains("B")) s.family.b = parse_matrix_spec(fam.at("B"), "family.B");
  if (fam.contains("kato_f")) s.family.kato_f = fam.at("kato_f").get<std::string>();
  if (fam.contains("kato_g")) s.family.kato_g = fam.at("kato_g").get<std::string>();
  if (fam.contains("regularity")) {
    s.family.regularity = fam.at("regularity").get<std::string>();
    static const std::vector<std::string> regs = {"self-adjoint",
                                                  "quasi-sectorial", "general"};
    if (std::find(regs.begin(), regs.end(), s.family.regularity) == regs.end()) {
      fail("family.regularity", "unknown value '" + s.family.regularity + "'");
    }
  }
  if (fam.contains("alpha")) s.family.alpha = fam.at("alpha").get<double>();

  if (!j.contains("n_list")) fail("n_list", "required");
  for (const auto& v : j.at("n_list")) s.n_list.push_back(v.get<long>());
  if (s.n_list.empty()) fail("n_list", "must be nonempty");
  for (std::size_t i = 0; i < s.n_list.size(); ++i) {
    if (s.n_list[i] < 1) fail("n_list", "entries must be >= 1");
    if (i > 0 && s.n_list[i] <= s.n_list[i - 1]) {
      fail("n_list", "must be strictly ascending");
    }
  }

  if (!j.contains("t")) fail("t", "required");
  const json& t = j.at("t");
  if (t.is_number()) {
    s.t_scalar = t.get<double>();
    if (*s.t_scalar < 0) fail("t", "must be >= 0");
  } else if (t.is_object()) {
    TInterval iv{};
    iv.lo = t.at("lo").get<double>();
    iv.hi = t.at("hi").get<double>();
    iv.grid = t.contains("grid") ? t.at("grid").get<int>() : 101;
    if (!(0 <= iv.lo && iv.lo <= iv.hi)) fail("t", "need 0 <= lo <= hi");
    if (iv.grid < 2) fail("t.grid", "must be >= 2");
    s.t_interval = iv;
  } else {
    fail("t", "expected a number or {lo, hi, grid}");
  }

  if (j.contains("alpha")) {
    s.alpha = j.at("alpha").get<double>();
    if (!(*s.alpha >= 0 && *s.alpha < std::numbers::pi / 2)) {
      fail("alpha", "must lie in [0, pi/2)");
    }
  }
  if (j.contains("bounds")) {
    for (const auto& v : j.at("bounds")) {
      const std::string id = v.get<std::string>();
      if (!is_registered_bound(id)) fail("bounds", "unknown bound id '" + id + "'");
      s.bounds.push_back(id);
    }
  }
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("out_dir")) s.out_dir = j.at("out_dir").get<std::string>();
  if (j.contains("rho")) {
    s.rho = j.at("rho").get<double>();
    if (!(s.rho > 0 && s.rho <= 1)) fail("rho", "must lie in (0, 1]");
  }
  if (j.contains("epsilon")) {
    s.epsilon = j.at("epsilon").get<double>();
    if (!(s.epsilon > 0)) fail("epsilon", "must be > 0");
  }
  if (j.contains("lemma_pairs")) {
    s.lemma_pairs = j.at("lemma_pairs").get<int>();
    if (s.lemma_pairs < 1) fail("lemma_pairs", "must be >= 1");
  }

  bool needs_seed =
      std::find(s.bounds.begin(), s.bounds.end(), "eq-0.5") != s.bounds.end() ||
      std::find(s.bounds.begin(), s.bounds.end(), "lemma-3.2.1-c") !=
          s.bounds.end();
  for (const auto* m : {&s.family.h, &s.family.a, &s.family.b}) {
    if (*m && (*m)->random && !(*m)->random->seed) needs_seed = true;
  }
  if (needs_seed && !s.seed) {
    fail("seed", "required when seeded random draws are used");
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadScenario("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

namespace {

Operator materialize(const MatrixSpec& spec, const Scenario& s,
                     std::uint64_t role_offset) {
  if (spec.inline_matrix) return *spec.inline_matrix;
  const auto& r = *spec.random;
  const std::uint64_t seed = r.seed ? *r.seed : *s.seed + role_offset;
  MatrixRng rng(seed);
  if (r.structure == "psd") return rng.psd(r.d, r.spectral_radius, r.min_eigenvalue);
  if (r.structure == "sectorial") return rng.sectorial(r.d, r.alpha, r.spectral_radius);
  if (r.structure == "hermitian-contraction") return rng.hermitian_contraction(r.d);
  if (r.structure == "contraction") return rng.contraction(r.d);
  if (r.structure == "equispaced") return rng.equispaced_contraction(r.d);
  throw BadScenario("unknown random structure: " + r.structure);
}

Regularity parse_regularity(const Scenario& s) {
  if (s.family.regularity == "self-adjoint") return Regularity::self_adjoint();
  if (s.family.regularity == "quasi-sectorial") {
    const std::optional<double> alpha =
        s.family.alpha ? s.family.alpha : s.alpha;
    if (!alpha) fail("family.alpha", "required for quasi-sectorial regularity");
    return Regularity::quasi_sectorial(*alpha);
  }
  return Regularity::general();
}

}  // namespace

ChernoffFamily build_family(const Scenario& s) {
  const std::string& kind = s.family.kind;
  if (kind == "resolvent" || kind == "exponential") {
    if (!s.family.h) fail("family.H", "required for " + kind);
    const Operator h = materialize(*s.family.h, s, kSeedH);
    const Regularity reg = parse_regularity(s);
    return kind == "resolvent" ? make_resolvent_family(h, reg)
                               : make_exp_family(h, reg);
  }
  if (kind == "kato") {
    if (!s.family.a && !s.family.h) fail("family.A", "required for kato");
    const Operator a = s.family.a ? materialize(*s.family.a, s, kSeedA)
                                  : materialize(*s.family.h, s, kSeedH);
    if (!s.family.kato_f) fail("family.kato_f", "required for kato");
    return make_kato_family(kato_from_registry(*s.family.kato_f), a);
  }
  if (kind == "trotter" || kind == "symmetrized-kato") {
    if (!s.family.a || !s.family.b) fail("family.A/B", "required for " + kind);
    const Operator a = materialize(*s.family.a, s, kSeedA);
    const Operator b = materialize(*s.family.b, s, kSeedB);
    if (kind == "trotter") return make_trotter_family(a, b);
    if (!s.family.kato_f || !s.family.kato_g) {
      fail("family.kato_f/kato_g", "required for symmetrized-kato");
    }
    return make_symmetrized_family(kato_from_registry(*s.family.kato_f),
                                   kato_from_registry(*s.family.kato_g), a, b);
  }
  throw BadScenario("unknown family kind: " + kind);
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string error_curves_to_csv(const std::vector<ErrorCurve>& curves) {
  std::ostringstream out;
  out << "family_id,t,n,error\n";
  for (const ErrorCurve& c : curves) {
    for (const ErrorSample& s : c.samples) {
      out << csv_quote(c.family_id) << "," << format_g17(s.t) << "," << s.n
          << "," << format_g17(s.error) << "\n";
    }
  }
  return out.str();
}

std::vector<ErrorCurve> error_curves_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line.rfind("family_id,t,n,error", 0) != 0) {
    throw Error("errors.csv: missing header row");
  }
  std::vector<ErrorCurve> curves;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::string id;
    std::size_t pos = 0;
    if (line[0] == '"') {
      pos = 1;
      while (pos < line.size()) {
        if (line[pos] == '"' && pos + 1 < line.size() && line[pos + 1] == '"') {
          id += '"';
          pos += 2;
        } else if (line[pos] == '"') {
          ++pos;
          break;
        } else {
          id += line[pos++];
        }
      }
      if (pos >= line.size() || line[pos] != ',') {
        throw Error("errors.csv: malformed quoted field");
      }
      ++pos;
    } else {
      const std::size_t comma = line.find(',');
      id = line.substr(0, comma);
      pos = comma + 1;
    }
    std::istringstream rest(line.substr(pos));
    std::string t_str, n_str, err_str;
    std::getline(rest, t_str, ',');
    std::getline(rest, n_str, ',');
    std::getline(rest, err_str, ',');
    ErrorSample sample{std::stol(n_str), std::stod(err_str), std::stod(t_str)};
    if (curves.empty() || curves.back().family_id != id) {
      curves.push_back(ErrorCurve{});
      curves.back().family_id = id;
    }
    curves.back().samples.push_back(sample);
  }
  for (ErrorCurve& c : curves) {
    bool same_t = true;
    for (const ErrorSample& s : c.samples) {
      if (s.t != c.samples.front().t) same_t = false;
    }
    if (same_t && !c.samples.empty()) c.t_scalar = c.samples.front().t;
  }
  return curves;
}

nlohmann::ordered_json reports_to_json(const std::vector<BoundReport>& reports) {
  auto arr = nlohmann::ordered_json::array();
  for (const BoundReport& r : reports) arr.push_back(r.to_json());
  return arr;
}

namespace {

struct BoundOutcome {
  std::string id;
  bool pass;
  std::string note;
};

double reference_t(const Scenario& s) {
  return s.t_scalar ? *s.t_scalar : s.t_interval->hi;
}

SectorSpec family_sector(const Scenario& s, const ChernoffFamily& fam,
                         const std::string& bound_id) {
  if (fam.regularity().kind == Regularity::Kind::self_adjoint) {
    return SectorSpec(0.0);
  }
  if (fam.regularity().kind == Regularity::Kind::quasi_sectorial) {
    return SectorSpec(fam.regularity().alpha);
  }
  if (s.alpha) return SectorSpec(*s.alpha);
  throw BadScenario(bound_id +
                    " needs a self-adjoint or quasi-sectorial family "
                    "(or an explicit scenario alpha)");
}

std::vector<Complex> default_zetas(double alpha) {
  constexpr double kPi = std::numbers::pi;
  std::vector<Complex> zetas;
  for (double radius : {0.3, 1.0, 3.0}) {
    for (double frac : {0.0, 0.45, -0.45, 0.9, -0.9}) {
      zetas.push_back(std::polar(radius, frac * (kPi - alpha)));
    }
  }
  return zetas;
}

// runs one bound id, appending its parameter-level reports; returns the
// aggregated verdict
BoundOutcome run_bound(const std::string& id, const Scenario& s,
                       const ChernoffFamily& fam,
                       std::vector<BoundReport>& reports) {
  const double t_ref = reference_t(s);
  auto all_pass = [](const std::vector<BoundReport>& rs, std::size_t from) {
    for (std::size_t i = from; i < rs.size(); ++i) {
      if (!rs[i].pass) return false;
    }
    return true;
  };
  const std::size_t first = reports.size();
  std::ostringstream note;

  if (id == "eq-3.1.151") {
    for (long n : s.n_list) {
      reports.push_back(check_spectral_bound(fam.eval_F(t_ref / n), n));
    }
  } else if (id == "eq-0.5") {
    MatrixRng rng(*s.seed + kSeedVector);
    const Vector w = rng.unit_vector(fam.dim());
    for (long n : s.n_list) {
      reports.push_back(check_sqrt_n_lemma(fam.eval_F(t_ref / n), n, w));
    }
  } else if (id == "eq-2.1.14") {
    const SectorSpec sector = family_sector(s, fam, id);
    const KEstimate est =
        estimate_K(fam.eval_F(t_ref), s.n_list.back(), sector);
    reports.insert(reports.end(), est.reports.begin(), est.reports.end());
    note << "K_hat = " << format_g17(est.k_hat) << " at n = " << est.argmax_n;
  } else if (id == "eq-6.2.5") {
    const SectorSpec sector = family_sector(s, fam, id);
    const Operator f = fam.eval_F(t_ref);
    const KEstimate est = estimate_K(f, s.n_list.back(), sector);
    for (long n : s.n_list) {
      reports.push_back(check_cube_root_bound(f, n, est.k_hat, sector));
    }
    note << "M = 2 K_hat + 2 = " << format_g17(2 * est.k_hat + 2);
  } else if (id == "eq-3.3.1") {
    const ConstantEstimate est =
        check_resolvent_rate(fam, fam.generator(), s.rho,
                             geometric_grid(1e-3, 1.0, 13),
                             geometric_grid(1e-2, 1.0, 9));
    reports.insert(reports.end(), est.reports.begin(), est.reports.end());
    note << "M_rho_hat = " << format_g17(est.value) << " (rho = " << s.rho
         << ")";
  } else if (id == "eq-3.3.17") {
    const ConstantEstimate est = check_tau_linear_resolvent(
        fam, fam.generator(), geometric_grid(1e-3, 1.0, 13));
    reports.insert(reports.end(), est.reports.begin(), est.reports.end());
    note << "M_1_hat = " << format_g17(est.value);
  } else if (id == "est-res") {
    const SectorSpec sector = family_sector(s, fam, id);
    const ConstantEstimate est = check_sectorial_resolvent(
        fam, fam.generator(), sector, default_zetas(sector.alpha),
        geometric_grid(1e-3, 1.0, 13));
    reports.insert(reports.end(), est.reports.begin(), est.reports.end());
    note << "L_hat = " << format_g17(est.value);
  } else if (id == "eq-3.3.20") {
    const double hi = std::max(10.0, 4.0 * s.epsilon);
    const StrictContractionResult res = check_strict_contraction(
        fam, s.epsilon, geometric_grid(s.epsilon, hi, 16));
    reports.insert(reports.end(), res.reports.begin(), res.reports.end());
    note << "delta_hat = " << format_g17(res.delta_hat);
    return {id, res.pass, note.str()};
  } else if (id == "lemma-3.2.1-c") {
    MatrixRng rng(*s.seed + kSeedLemma);
    std::vector<std::pair<Operator, Operator>> pairs;
    pairs.reserve(s.lemma_pairs);
    for (int i = 0; i < s.lemma_pairs; ++i) {
      pairs.emplace_back(rng.psd(fam.dim(), 10.0), rng.psd(fam.dim(), 10.0));
    }
    const Lemma321Estimate est = estimate_lemma321_constant(pairs);
    reports.insert(reports.end(), est.reports.begin(), est.reports.end());
    note << "c_hat = " << format_g17(est.c_hat) << " over " << est.used
         << " pairs (" << est.skipped << " skipped)";
  } else if (id == "trotter-kato-nonsym") {
    if (fam.kind() != FamilyKind::trotter &&
        fam.kind() != FamilyKind::symmetrized_kato) {
      throw BadScenario("trotter-kato-nonsym needs a trotter or "
                        "symmetrized-kato family");
    }
    const KatoFunction f = fam.kind() == FamilyKind::symmetrized_kato
                               ? fam.kato_f()
                               : kato_from_registry("exp");
    const KatoFunction g = fam.kind() == FamilyKind::symmetrized_kato
                               ? fam.kato_g()
                               : kato_from_registry("exp");
    const NonsymTrotterKatoResult res = check_nonsym_trotter_kato(
        f, g, fam.part_a(), fam.part_b(), s.n_list, t_ref);
    reports.insert(reports.end(), res.reports.begin(), res.reports.end());
    if (res.fitted) {
      note << "fitted rho = " << format_g17(res.fitted->rho);
    } else {
      note << "errors at numerical floor";
    }
  } else {
    throw BadScenario("unknown bound id: " + id);
  }
  return {id, all_pass(reports, first), note.str()};
}

}  // namespace

ScenarioResult run_scenario(const Scenario& s,
                            const std::optional<std::string>& out_override) {
  const ChernoffFamily fam = build_family(s);
  ScenarioResult result;

  ErrorCurve curve = s.t_interval
                         ? error_curve(fam, *s.t_interval, s.n_list, s.name)
                         : error_curve(fam, *s.t_scalar, s.n_list, s.name);
  try {
    curve.fitted = fit_rate(curve);
  } catch (const AllBelowFloor&) {
  } catch (const TooFewSamples&) {
  }
  result.curves.push_back(curve);

  std::vector<BoundOutcome> outcomes;
  for (const std::string& id : s.bounds) {
    outcomes.push_back(run_bound(id, s, fam, result.reports));
  }

  int passed = 0;
  for (const BoundOutcome& o : outcomes) passed += o.pass ? 1 : 0;
  result.bounds_passed = passed;
  result.bounds_total = static_cast<int>(outcomes.size());
  result.exit_code = passed == result.bounds_total ? 0 : 1;

  std::ostringstream summary;
  summary << "scenario: " << s.name << "\n";
  summary << "family: " << fam.label() << " (d = " << fam.dim() << ")\n";
  if (s.t_scalar) {
    summary << "t: " << format_g17(*s.t_scalar) << "\n";
  } else {
    summary << "t: sup over [" << format_g17(s.t_interval->lo) << ", "
            << format_g17(s.t_interval->hi) << "], grid "
            << s.t_interval->grid << "\n";
  }
  if (curve.fitted) {
    summary << "fitted rate: error ~ " << format_g17(curve.fitted->c)
            << " / n^" << format_g17(curve.fitted->rho)
            << " (log residual " << format_g17(curve.fitted->residual)
            << ")\n";
  } else {
    summary << "fitted rate: unavailable (errors at numerical floor or too "
               "few samples)\n";
  }
  for (const BoundOutcome& o : outcomes) {
    summary << "bound " << o.id << ": " << (o.pass ? "PASS" : "FAIL");
    if (!o.note.empty()) summary << " [" << o.note << "]";
    summary << "\n";
  }
  int tolerance_warnings = 0;
  for (const BoundReport& r : result.reports) {
    if (r.pass && r.margin < 0.0) ++tolerance_warnings;
  }
  if (tolerance_warnings > 0) {
    summary << "pass-with-warning (negative margin within tolerance): "
            << tolerance_warnings << " reports\n";
  }
  summary << "bounds passed: " << passed << "/" << outcomes.size() << "\n";
  summary << "exit: " << result.exit_code << "\n";
  result.summary = summary.str();

  const std::string out_dir = out_override ? *out_override : s.out_dir;
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream f(out_dir + "/errors.csv");
    f << error_curves_to_csv(result.curves);
  }
  {
    std::ofstream f(out_dir + "/reports.json");
    f << reports_to_json(result.reports).dump(2) << "\n";
  }
  {
    std::ofstream f(out_dir + "/summary.txt");
    f << result.summary;
  }
  return result;
}

}  // namespace chernoff
