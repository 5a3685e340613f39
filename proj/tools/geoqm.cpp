// Copyright 2026 The geoqm Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geoqm/commands.hpp"

namespace {

using geoqm::cli::CommandResult;
using nlohmann::json;

struct InputSource {
  std::string path;
  std::string inline_json;
};

json read_json(const InputSource& src, const std::string& what) {
  const bool has_path = !src.path.empty();
  const bool has_inline = !src.inline_json.empty();
  if (has_path == has_inline)
    throw geoqm::io::ParseError("exactly one of --" + what + " PATH or --" + what +
                                "-json TEXT is required");
  std::string text;
  if (has_inline) {
    text = src.inline_json;
  } else if (src.path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(src.path);
    if (!in) throw geoqm::io::ParseError("cannot open " + src.path);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw geoqm::io::ParseError(std::string("invalid JSON: ") + e.what());
  }
}

CommandResult with_input(const InputSource& src, const std::string& what,
                         const std::function<CommandResult(const json&)>& run) {
  try {
    return run(read_json(src, what));
  } catch (const geoqm::io::ParseError& e) {
    return {geoqm::cli::kExitUsage, {}, e.what(), {}};
  }
}

bool write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geoqm: geometry of finite-dimensional quantum states"};
  app.require_subcommand(1);

  std::string output;
  geoqm::cli::Settings settings;
  std::optional<double> tol;
  app.add_option("--output,-o", output, "Output path (default: stdout)");
  app.add_option("--seed", settings.seed, "Seed for randomized inputs");
  app.add_option("--tol", tol, "Positivity tolerance for density certification");

  InputSource input;
  auto add_input = [&input](CLI::App* sub) {
    sub->add_option("--input,-i", input.path, "Input JSON file ('-' for stdin)");
    sub->add_option("--json", input.inline_json, "Inline input JSON");
  };

  auto* classify = app.add_subcommand("classify", "Certify and classify a state");
  add_input(classify);
  std::string weyl_csv;
  classify->add_option("--weyl-csv", weyl_csv, "Batch mode: write idx,a,b,c Weyl reductions");

  auto* decompose = app.add_subcommand("decompose", "Convex decomposition into pure states");
  add_input(decompose);
  std::string mode = "spectral";
  std::vector<double> direction;
  decompose->add_option("--mode", mode, "spectral | bloch")->check(CLI::IsMember({"spectral", "bloch"}));
  decompose->add_option("--direction", direction, "Bloch-mode line direction (3 numbers)")
      ->expected(3)
      ->delimiter(',');

  auto* tensors = app.add_subcommand("tensors", "Evaluate Lambda, R or the distributions at a point");
  add_input(tensors);
  std::string which;
  tensors->add_option("--which", which, "lambda | R | distributions")
      ->required()
      ->check(CLI::IsMember({"lambda", "R", "distributions"}));

  auto* constants = app.add_subcommand("constants", "Dump structure constants as CSV");
  std::size_t n = 3;
  constants->add_option("--n", n, "Hilbert space dimension")->check(CLI::Range(2, 10));

  auto* flow = app.add_subcommand("flow", "Hamiltonian flow or gradient eigensolver");
  InputSource op_src, psi_src;
  geoqm::cli::FlowOptions fo;
  std::string trace_path;
  flow->add_option("--operator", op_src.path, "Operator JSON file");
  flow->add_option("--operator-json", op_src.inline_json, "Inline operator JSON");
  flow->add_option("--psi0", psi_src.path, "Start state JSON file (default: random from --seed)");
  flow->add_option("--psi0-json", psi_src.inline_json, "Inline start state JSON");
  flow->add_option("--mode", fo.mode, "hamiltonian | eigensolve")
      ->check(CLI::IsMember({"hamiltonian", "eigensolve"}));
  flow->add_option("--direction", fo.direction, "ascent | descent (eigensolve)")
      ->check(CLI::IsMember({"ascent", "descent"}));
  flow->add_option("--step", fo.step, "Integrator step or solver step (0 = default)");
  flow->add_option("--max-iter", fo.max_iter, "Solver iteration cap");
  flow->add_option("--t-end", fo.t_end, "Flow end time");
  flow->add_option("--trace", trace_path, "Write the trace CSV here");

  auto* ballgrid = app.add_subcommand("ballgrid", "Qubit Bloch-ball grid classification CSV");
  std::size_t resolution = 13;
  ballgrid->add_option("--resolution", resolution, "Grid points per axis");

  for (auto* sub : {classify, decompose, tensors, constants, flow, ballgrid}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return geoqm::cli::kExitUsage;
  }
  if (tol) settings.tol_psd = *tol;

  CommandResult res;
  if (classify->parsed()) {
    res = with_input(input, "input", [&](const json& j) { return geoqm::cli::cmd_classify(j, settings); });
    if (res.exit_code == 0 && !weyl_csv.empty() && !write_text(weyl_csv, res.trace)) {
      std::cerr << "cannot write " << weyl_csv << "\n";
      return geoqm::cli::kExitUsage;
    }
  } else if (decompose->parsed()) {
    std::optional<std::array<double, 3>> dir;
    if (!direction.empty()) dir = std::array<double, 3>{direction[0], direction[1], direction[2]};
    res = with_input(input, "input",
                     [&](const json& j) { return geoqm::cli::cmd_decompose(j, mode, dir, settings); });
  } else if (tensors->parsed()) {
    res = with_input(input, "input", [&](const json& j) { return geoqm::cli::cmd_tensors(j, which, settings); });
  } else if (constants->parsed()) {
    res = geoqm::cli::cmd_constants(n, settings);
  } else if (flow->parsed()) {
    res = with_input(op_src, "operator", [&](const json& op) {
      std::optional<json> psi;
      if (!psi_src.path.empty() || !psi_src.inline_json.empty()) psi = read_json(psi_src, "psi0");
      return geoqm::cli::cmd_flow(op, psi, fo, settings);
    });
    if (res.exit_code == 0 && !trace_path.empty() && !write_text(trace_path, res.trace)) {
      std::cerr << "cannot write " << trace_path << "\n";
      return geoqm::cli::kExitUsage;
    }
  } else if (ballgrid->parsed()) {
    res = geoqm::cli::cmd_ballgrid(resolution, settings);
  }

  if (!res.diagnostics.empty()) std::cerr << res.diagnostics << (res.diagnostics.back() == '\n' ? "" : "\n");
  if (res.exit_code != 0) return res.exit_code;
  if (!write_text(output, res.output)) {
    std::cerr << "cannot write " << output << "\n";
    return geoqm::cli::kExitUsage;
  }
  return 0;
}
