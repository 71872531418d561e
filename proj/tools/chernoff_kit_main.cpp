#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "chernoff/kato.hpp"
#include "chernoff/numerical_range.hpp"
#include "chernoff/scenario.hpp"

namespace {

using namespace chernoff;

std::optional<std::string> opt_or_none(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

int cmd_rate(const std::string& config, const std::string& out) {
  const Scenario s = load_scenario(config);
  const ScenarioResult res = run_scenario(s, opt_or_none(out));
  const ErrorCurve& curve = res.curves.front();
  if (curve.fitted) {
    std::cout << "fitted rho = " << format_g17(curve.fitted->rho)
              << " (C = " << format_g17(curve.fitted->c) << ", residual = "
              << format_g17(curve.fitted->residual) << ")\n";
  } else {
    std::cout << "fit unavailable (errors at numerical floor)\n";
  }
  return res.exit_code;
}

int cmd_verify(const std::string& config, const std::string& out) {
  const Scenario s = load_scenario(config);
  const ScenarioResult res = run_scenario(s, opt_or_none(out));
  std::cout << "PASS " << res.bounds_passed << "/" << res.bounds_total << "\n";
  return res.exit_code;
}

int cmd_range(const std::string& matrix_path, double alpha, int points,
              const std::string& out) {
  const Operator a = Operator::load_json(matrix_path);
  const SectorSpec sector(alpha);
  const RangeBoundary b = range_boundary(a, points);
  const Containment in_sector = contained_in_sector(b, sector);
  const Containment in_domain = contained_in_qs_domain(b, sector);

  nlohmann::ordered_json verdict;
  verdict["alpha"] = alpha;
  verdict["points"] = points;
  verdict["contained_in_sector"] = in_sector.contained;
  verdict["contained_in_qs_domain"] = in_domain.contained;
  verdict["margins"] = {{"sector", in_sector.margin},
                        {"qs_domain", in_domain.margin}};
  const auto msa = min_semi_angle(b);
  if (msa) {
    verdict["min_semi_angle"] = *msa;
  } else {
    verdict["min_semi_angle"] = nullptr;
  }
  std::cout << verdict.dump(2) << "\n";

  if (!out.empty()) {
    std::filesystem::create_directories(out);
    std::ofstream csv(out + "/boundary.csv");
    csv << "theta,re,im\n";
    for (std::size_t i = 0; i < b.points.size(); ++i) {
      csv << format_g17(b.angles[i]) << "," << format_g17(b.points[i].real())
          << "," << format_g17(b.points[i].imag()) << "\n";
    }
    std::ofstream vj(out + "/verdict.json");
    vj << verdict.dump(2) << "\n";
  }
  return 0;
}

int cmd_kato(const std::string& id) {
  nlohmann::ordered_json report;
  report["id"] = id;
  try {
    const KatoFunction f = kato_from_registry(id);
    report["valid"] = true;
    report["gamma"] = f.gamma;
    report["derivative_at_zero"] = f.derivative_at_zero;
  } catch (const InvalidKato& e) {
    report["valid"] = false;
    report["reason"] = e.what();
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const std::string& config, int seeds, const std::string& out) {
  const Scenario base = load_scenario(config);
  if (!base.seed) {
    throw BadScenario("sweep: scenario must carry a base seed");
  }
  const std::string out_root = out.empty() ? base.out_dir : out;
  int exit_code = 0;
  int passed_runs = 0;
  std::ostringstream summary;
  for (int i = 0; i < seeds; ++i) {
    Scenario s = base;
    s.seed = *base.seed + static_cast<std::uint64_t>(i);
    s.name = base.name + "/seed-" + std::to_string(i);
    const std::string run_dir = out_root + "/seed-" + std::to_string(i);
    const ScenarioResult res = run_scenario(s, run_dir);
    summary << "seed " << *s.seed << ": exit " << res.exit_code << "\n";
    if (res.exit_code == 0) ++passed_runs;
    exit_code = std::max(exit_code, res.exit_code);
  }
  summary << "passed runs: " << passed_runs << "/" << seeds << "\n";
  std::filesystem::create_directories(out_root);
  std::ofstream f(out_root + "/summary.txt");
  f << summary.str();
  std::cout << "PASS " << passed_runs << "/" << seeds << "\n";
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chernoff product formula verification kit"};
  app.require_subcommand(1);

  std::string config, out, matrix_path, kato_id;
  double alpha = 0.0;
  int points = 360;
  int seeds = 1;

  auto* rate = app.add_subcommand("rate", "error curve and fitted rate");
  rate->add_option("--config", config, "scenario JSON")->required();
  rate->add_option("--out", out, "output directory override");

  auto* verify = app.add_subcommand("verify", "run the bound suite");
  verify->add_option("--config", config, "scenario JSON")->required();
  verify->add_option("--out", out, "output directory override");

  auto* range = app.add_subcommand("range", "numerical-range verdict");
  range->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  range->add_option("--alpha", alpha, "sector semi-angle")->required();
  range->add_option("--points", points, "support directions (>= 8)");
  range->add_option("--out", out, "output directory for boundary.csv");

  auto* kato = app.add_subcommand("kato", "Kato function validation report");
  kato->add_option("--id", kato_id, "registry id")->required();

  auto* sweep = app.add_subcommand("sweep", "randomized ensemble over seeds");
  sweep->add_option("--config", config, "scenario JSON")->required();
  sweep->add_option("--seeds", seeds, "number of seeds")->required();
  sweep->add_option("--out", out, "output directory override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(rate)) return cmd_rate(config, out);
    if (app.got_subcommand(verify)) return cmd_verify(config, out);
    if (app.got_subcommand(range)) return cmd_range(matrix_path, alpha, points, out);
    if (app.got_subcommand(kato)) return cmd_kato(kato_id);
    if (app.got_subcommand(sweep)) return cmd_sweep(config, seeds, out);
  } catch (const chernoff::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
