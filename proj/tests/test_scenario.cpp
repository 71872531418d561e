#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "test_helpers.hpp"

#include "chernoff/random_ops.hpp"
#include "chernoff/scenario.hpp"

using namespace chernoff;
using namespace chernoff::testing;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("chernoff_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

const char* kExpScenario = R"({
  "name": "exp-exact",
  "family": {
    "kind": "exponential",
    "H": {"random": {"d": 6, "structure": "psd", "spectral_radius": 3.0}},
    "regularity": "self-adjoint"
  },
  "n_list": [1, 2, 4, 8],
  "t": 1.5,
  "bounds": [],
  "seed": 42,
  "out_dir": "OUTDIR"
})";

std::string with_out_dir(const std::string& text, const std::string& dir) {
  std::string out = text;
  const auto pos = out.find("OUTDIR");
  out.replace(pos, 6, dir);
  return out;
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("matrix interchange round-trips exactly") {
  MatrixRng rng(503);
  const Operator a = rng.ginibre(5);
  const Operator back = Operator::from_json_string(a.to_json_string());
  CHECK((a.mat() - back.mat()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("parse rejects malformed scenarios") {
  CHECK_THROWS_AS(parse_scenario("{ not json"), BadScenario);
  try {
    parse_scenario("{\n\"name\": \"x\",\n BROKEN\n}");
  } catch (const BadScenario& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }

  // descending n_list
  std::string bad = kExpScenario;
  bad.replace(bad.find("[1, 2, 4, 8]"), 12, "[4, 2]");
  CHECK_THROWS_AS(parse_scenario(with_out_dir(bad, "/tmp/x")), BadScenario);

  // unknown bound id
  std::string unknown = kExpScenario;
  unknown.replace(unknown.find("\"bounds\": []"), 12,
                  "\"bounds\": [\"eq-9.9\"]");
  CHECK_THROWS_AS(parse_scenario(with_out_dir(unknown, "/tmp/x")), BadScenario);

  // random matrix without any seed
  std::string unseeded = kExpScenario;
  unseeded.replace(unseeded.find("\"seed\": 42,"), 11, "");
  CHECK_THROWS_AS(parse_scenario(with_out_dir(unseeded, "/tmp/x")), BadScenario);
}

TEST_CASE("build_family covers every kind") {
  const char* text = R"({
    "name": "k",
    "family": {"kind": "KIND",
               "A": {"random": {"d": 3, "structure": "psd"}},
               "B": {"random": {"d": 3, "structure": "psd"}},
               "H": {"random": {"d": 3, "structure": "psd"}},
               "kato_f": "exp", "kato_g": "resolvent-1",
               "regularity": "self-adjoint"},
    "n_list": [1, 2],
    "t": 1.0,
    "seed": 7
  })";
  for (const std::string kind :
       {"resolvent", "exponential", "kato", "trotter", "symmetrized-kato"}) {
    std::string t(text);
    t.replace(t.find("KIND"), 4, kind);
    if (kind == "trotter" || kind == "symmetrized-kato") {
      t.replace(t.find("\"regularity\": \"self-adjoint\""), 28,
                "\"regularity\": \"general\"");
    }
    const Scenario s = parse_scenario(t);
    const ChernoffFamily fam = build_family(s);
    CHECK(to_string(fam.kind()) == kind);
    CHECK(fam.dim() == 3);
  }
}

TEST_CASE("run_scenario writes artifacts and the exp family is exact") {
  const auto dir = temp_dir("exp");
  const Scenario s = parse_scenario(with_out_dir(kExpScenario, dir.string()));
  const ScenarioResult res = run_scenario(s);
  CHECK(res.exit_code == 0);
  REQUIRE(res.curves.size() == 1);
  for (const ErrorSample& sample : res.curves[0].samples) {
    CHECK(sample.error <= 1e-10);
  }
  CHECK(std::filesystem::exists(dir / "errors.csv"));
  CHECK(std::filesystem::exists(dir / "reports.json"));
  CHECK(std::filesystem::exists(dir / "summary.txt"));

  // round-trip: the CSV reproduces the in-memory curve exactly
  const auto curves = error_curves_from_csv(slurp(dir / "errors.csv"));
  REQUIRE(curves.size() == 1);
  CHECK(curves[0].family_id == res.curves[0].family_id);
  REQUIRE(curves[0].samples.size() == res.curves[0].samples.size());
  for (std::size_t i = 0; i < curves[0].samples.size(); ++i) {
    CHECK(curves[0].samples[i].n == res.curves[0].samples[i].n);
    CHECK(curves[0].samples[i].error == res.curves[0].samples[i].error);
    CHECK(curves[0].samples[i].t == res.curves[0].samples[i].t);
  }
}

TEST_CASE("format_g17 round-trips doubles") {
  MatrixRng rng(509);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::ldexp(unif(rng.engine()), i % 60 - 30);
    CHECK(std::stod(format_g17(v)) == v);
  }
}

TEST_CASE("two runs produce byte-identical artifacts") {
  const auto dir1 = temp_dir("det1");
  const auto dir2 = temp_dir("det2");
  const char* text = R"({
    "name": "determinism",
    "family": {
      "kind": "resolvent",
      "H": {"random": {"d": 6, "structure": "psd", "spectral_radius": 5.0}},
      "regularity": "self-adjoint"
    },
    "n_list": [1, 2, 4, 8, 16],
    "t": 1.0,
    "bounds": ["eq-3.1.151", "eq-0.5", "eq-3.3.17"],
    "seed": 2024,
    "out_dir": "."
  })";
  const Scenario s = parse_scenario(text);
  run_scenario(s, dir1.string());
  run_scenario(s, dir2.string());
  CHECK(slurp(dir1 / "errors.csv") == slurp(dir2 / "errors.csv"));
  CHECK(slurp(dir1 / "reports.json") == slurp(dir2 / "reports.json"));
  CHECK(slurp(dir1 / "summary.txt") == slurp(dir2 / "summary.txt"));
  CHECK(!slurp(dir1 / "reports.json").empty());
}

TEST_CASE("spectral bound scenario passes across seeds") {
  const auto dir = temp_dir("seeds");
  const char* text = R"({
    "name": "spectral",
    "family": {
      "kind": "resolvent",
      "H": {"random": {"d": 8, "structure": "psd", "spectral_radius": 4.0}},
      "regularity": "self-adjoint"
    },
    "n_list": [1, 2, 4, 8, 16, 32],
    "t": 1.0,
    "bounds": ["eq-3.1.151"],
    "seed": 1,
    "out_dir": "."
  })";
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Scenario s = parse_scenario(text);
    s.seed = seed;
    const ScenarioResult res = run_scenario(s, (dir / "run").string());
    CHECK(res.exit_code == 0);
    CHECK(res.bounds_passed == 1);
  }
}

TEST_CASE("csv quoting survives commas in family ids") {
  ErrorCurve curve;
  curve.family_id = "sym{exp,exp}";
  curve.samples.push_back({2, 0.5, 1.0});
  curve.samples.push_back({4, 0.25, 1.0});
  const std::string csv = error_curves_to_csv({curve});
  const auto back = error_curves_from_csv(csv);
  REQUIRE(back.size() == 1);
  CHECK(back[0].family_id == "sym{exp,exp}");
  CHECK(back[0].samples.size() == 2);
  CHECK(back[0].samples[1].error == 0.25);
}

TEST_CASE("bound suite covers the full registry on one scenario") {
  const auto dir = temp_dir("full");
  const char* text = R"({
    "name": "full-suite",
    "family": {
      "kind": "symmetrized-kato",
      "A": {"random": {"d": 4, "structure": "psd", "spectral_radius": 2.0,
                        "min_eigenvalue": 1.0}},
      "B": {"random": {"d": 4, "structure": "psd", "spectral_radius": 1.5,
                        "min_eigenvalue": 0.5}},
      "kato_f": "exp", "kato_g": "exp",
      "regularity": "self-adjoint"
    },
    "n_list": [1, 2, 4, 8, 16, 32, 64],
    "t": 1.0,
    "bounds": ["eq-3.1.151", "eq-0.5", "eq-2.1.14", "eq-6.2.5", "eq-3.3.1",
               "eq-3.3.17", "eq-3.3.20", "est-res", "lemma-3.2.1-c",
               "trotter-kato-nonsym"],
    "seed": 99,
    "epsilon": 0.5,
    "lemma_pairs": 20,
    "alpha": 0.2,
    "out_dir": "."
  })";
  const Scenario s = parse_scenario(text);
  const ScenarioResult res = run_scenario(s, dir.string());
  CHECK(res.bounds_total == 10);
  CHECK(res.bounds_passed == 10);
  CHECK(res.exit_code == 0);
}

}  // TEST_SUITE
