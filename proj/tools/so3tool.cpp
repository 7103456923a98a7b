// so3tool: generate, classify, contract and chart rotation loops.
//
// Exit codes: 0 ok, 1 verify failure, 2 bad input, 3 classifier
// disagreement, 4 loop not null-homotopic, 5 sample outside the chart.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "so3topo/ball_chart.hpp"
#include "so3topo/homotopy.hpp"
#include "so3topo/io.hpp"
#include "so3topo/selfcheck.hpp"
#include "so3topo/torus_chart.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kBadInput = 2,
  kDisagreement = 3,
  kNotNullHomotopic = 4,
  kChartDomain = 5,
};

struct RunConfig {
  so3::Tolerances tol;
  double eps = 0.05;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_angle(const std::string& text) {
  std::string s = text;
  double factor = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    s.erase(s.size() - 2);
    if (s.empty() || s == "+") s = "1";
    if (s == "-") s = "-1";
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("cannot parse angle '" + text + "'");
  }
  if (used != s.size()) throw UsageError("cannot parse angle '" + text + "'");
  return value * factor;
}

so3::Vec3 parse_axis(const std::string& text) {
  std::vector<double> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      parts.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("cannot parse axis '" + text + "'");
    }
  }
  if (parts.size() != 3) throw UsageError("axis needs three comma-separated components");
  const so3::Vec3 v(parts[0], parts[1], parts[2]);
  if (v.norm() < 1e-12) throw UsageError("axis must be nonzero");
  return v.normalized();
}

/// Writes to --out when given, otherwise to stdout.
void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) throw so3::InvalidInput("cannot write " + cfg.out);
  file << text;
}

int cmd_classify(const RunConfig& cfg, const std::string& input) {
  const so3::Loop loop = so3::refine(so3::read_path_json(input).to_loop(cfg.tol), cfg.eps);
  const so3::HomotopyClass by_lift = so3::classify(loop, cfg.tol);
  const so3::HomotopyClass by_parity = so3::crossing_parity(loop, cfg.tol);
  const bool agree = by_lift == by_parity;
  std::cout << so3::to_string(by_lift) << "\n"
            << "lift sign: " << so3::to_string(by_lift) << "\n"
            << "crossing parity: " << so3::to_string(by_parity) << "\n"
            << "agree: " << (agree ? "yes" : "no") << "\n";
  if (!agree) {
    std::cerr << "error: classifiers disagree\n";
    return kDisagreement;
  }
  return kOk;
}

struct GenerateParams {
  std::string kind;
  std::string axis = "0,0,1";
  std::string angle = "2pi";
  std::size_t samples = 200;
  std::size_t waypoints = 3;
  std::string input;
};

int cmd_generate(const RunConfig& cfg, const GenerateParams& p) {
  if (cfg.format != "json") throw UsageError("generate writes path JSON only");
  std::optional<so3::Loop> loop;
  std::optional<so3::RotationPath> open;
  if (p.kind == "axis-loop" || p.kind == "doubled") {
    if (p.kind == "doubled" && !p.input.empty()) {
      loop = so3::read_path_json(p.input).to_loop(cfg.tol);
    } else {
      auto made = so3::axis_rotation_loop(parse_axis(p.axis), parse_angle(p.angle), p.samples,
                                          cfg.tol);
      if (std::holds_alternative<so3::Loop>(made)) {
        loop = std::get<so3::Loop>(std::move(made));
      } else {
        open = std::get<so3::RotationPath>(std::move(made));
      }
    }
    if (p.kind == "doubled") {
      if (!loop) throw UsageError("doubled needs a closed loop (angle a multiple of 2pi)");
      loop = so3::concat(*loop, *loop, cfg.tol);
    }
  } else if (p.kind == "random") {
    loop = so3::random_loop(cfg.seed, p.waypoints, cfg.tol);
  } else {
    throw UsageError("unknown kind '" + p.kind + "' (axis-loop, random, doubled)");
  }
  emit(cfg, (loop ? so3::to_path_json(*loop) : so3::to_path_json(*open)) + "\n");
  return kOk;
}

int cmd_contract(const RunConfig& cfg, const std::string& input) {
  const so3::Loop loop = so3::read_path_json(input).to_loop(cfg.tol);
  so3::HomotopyGrid grid = [&] {
    try {
      return so3::contract(loop, cfg.seed, cfg.tol);
    } catch (const so3::NotNullHomotopic& e) {
      std::cerr << "error: " << e.what() << "\n";
      throw;
    }
  }();
  const so3::HomotopyReport report = so3::verify_homotopy(grid, loop, cfg.tol);

  std::ostringstream body;
  if (cfg.format == "csv") {
    so3::write_grid_csv(body, grid);
  } else {
    nlohmann::json doc;
    doc["rows"] = grid.rows();
    doc["cols"] = grid.cols();
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& q : grid.nodes()) nodes.push_back({q.w(), q.x(), q.y(), q.z()});
    doc["nodes"] = std::move(nodes);
    body << doc.dump() << "\n";
  }
  emit(cfg, body.str());

  std::ostream& log = cfg.out.empty() ? std::cerr : std::cout;
  log << "grid " << grid.rows() << " x " << grid.cols() << " (rows x columns)\n"
      << "max row step " << report.max_row_step << ", max column step "
      << report.max_column_step << " (" << report.worst_step << ")\n"
      << "verify_homotopy: " << (report.passed ? "pass" : "FAIL") << "\n";
  return report.passed ? kOk : kVerifyFailed;
}

int cmd_chart(const RunConfig& cfg, const std::string& input, const std::string& model) {
  const so3::PathDocument doc = so3::read_path_json(input);
  std::ostringstream body;
  if (model == "torus") {
    so3::write_torus_chart_csv(body, doc.path, cfg.tol);
  } else if (model == "ball") {
    so3::write_ball_chart_csv(body, doc.path, cfg.tol);
  } else {
    throw UsageError("unknown chart model '" + model + "' (torus, ball)");
  }
  emit(cfg, body.str());
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  const so3::SelfCheckReport report = so3::run_self_checks(cfg.seed, cfg.tol);
  for (const auto& suite : report.suites) {
    std::cout << (suite.passed ? "PASS " : "FAIL ") << suite.name << ": " << suite.detail << "\n";
  }
  std::cout << "identification sign s = " << report.identification_sign << "\n"
            << report.suites.size() << " suites, "
            << (report.all_passed() ? "all passed" : "FAILURES") << "\n";
  return report.all_passed() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topology of the rotation group: loops, classes, contractions, charts"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::vector<std::string> tol_overrides;
  app.add_option("--eps", cfg.eps, "Refinement step in radians, in (0, 1)");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--tol", tol_overrides, "Tolerance override name=value")->take_all();
  app.add_option("--out", cfg.out, "Output file (default stdout)");
  std::optional<std::string> format;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::string input;
  auto* classify = app.add_subcommand("classify", "Homotopy class of a loop");
  classify->add_option("input", input, "Path JSON file")->required();

  GenerateParams gen;
  auto* generate = app.add_subcommand("generate", "Write a loop as path JSON");
  generate->add_option("kind", gen.kind, "axis-loop, random or doubled")->required();
  generate->add_option("--axis", gen.axis, "Rotation axis x,y,z");
  generate->add_option("--angle", gen.angle, "Total angle (radians, or e.g. 2pi)");
  generate->add_option("--samples", gen.samples, "Sample count")->check(CLI::Range(2, 100000000));
  generate->add_option("--waypoints", gen.waypoints, "Waypoints of a random loop");
  generate->add_option("--input", gen.input, "Loop to double (doubled only)");

  auto* contract = app.add_subcommand("contract", "Null-homotopy grid of a trivial loop");
  contract->add_option("input", input, "Path JSON file")->required();

  std::string model;
  auto* chart = app.add_subcommand("chart", "Chart coordinates of every sample");
  chart->add_option("input", input, "Path JSON file")->required();
  chart->add_option("--model", model, "torus or ball")->required();

  auto* verify = app.add_subcommand("verify", "Run the invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw UsageError("--eps must lie in (0, 1)");
    for (const auto& entry : tol_overrides) {
      const auto eq = entry.find('=');
      if (eq == std::string::npos) throw UsageError("--tol expects name=value");
      double value = 0.0;
      try {
        value = std::stod(entry.substr(eq + 1));
      } catch (const std::exception&) {
        throw UsageError("--tol value is not a number: " + entry);
      }
      if (!cfg.tol.set(entry.substr(0, eq), value)) {
        throw UsageError("unknown tolerance or non-positive value: " + entry);
      }
    }
    if (generate->parsed()) {
      cfg.format = format.value_or("json");
      return cmd_generate(cfg, gen);
    }
    cfg.format = format.value_or("csv");
    if (classify->parsed()) return cmd_classify(cfg, input);
    if (contract->parsed()) return cmd_contract(cfg, input);
    if (chart->parsed()) return cmd_chart(cfg, input, model);
    if (verify->parsed()) return cmd_verify(cfg);
  } catch (const so3::NotNullHomotopic&) {
    return kNotNullHomotopic;
  } catch (const so3::SouthPoleSingular& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kChartDomain;
  } catch (const so3::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
