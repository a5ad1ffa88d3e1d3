// Copyright 2026 The Gleason Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gleason/cli.hpp"

namespace {

using gleason::cli::Command;
using gleason::cli::RunConfig;

// Parses "x,y,z".
std::optional<gleason::Vec3> parse_vec3(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  if (v.size() != 3) throw CLI::ValidationError("direction", "expected x,y,z");
  return gleason::Vec3(v[0], v[1], v[2]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for Gleason-type theorems and finite-context models"};
  app.require_subcommand(1);

  RunConfig cfg;
  try {
    cfg.seed = gleason::cli::default_seed();
  } catch (const gleason::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gleason::cli::kExitUsage;
  }
  int dim = 0;
  std::string a_text;
  std::string b_text;
  bool no_timings = false;

  auto common = [&](CLI::App* sub) {
    // "-h" would collide with the finite-difference step option.
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("--dim", dim, "Hilbert-space dimension")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "RNG seed (default: $GLEASON_SEED or 1)");
    sub->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--output", cfg.output_path, "Report path (gen-data: sample file)");
    sub->add_flag("--no-timings", no_timings, "Omit the timings field");
  };

  struct Sub {
    Command command;
    CLI::App* app;
  };
  std::vector<Sub> subs;

  auto* verify = app.add_subcommand("verify-gleason", "Differential-identity and affine-fit suite for a measure");
  common(verify);
  verify->add_option("--measure", cfg.measure_path, "Measure spec file")->required();
  verify->add_option("--samples", cfg.samples, "Sampled orthonormal pairs / fit samples");
  verify->add_option("--h", cfg.h, "Finite-difference step");
  verify->add_option("--fd-constant", cfg.fd_constant, "C in the tolerance C h^2");
  verify->add_option("--tol", cfg.tolerance, "Fit residual tolerance");
  subs.push_back({Command::VerifyGleason, verify});

  auto* fit = app.add_subcommand("fit", "Affine fit of a measure or a sample file");
  common(fit);
  fit->add_option("--measure", cfg.measure_path, "Measure spec file");
  fit->add_option("--input", cfg.input_path, "Sample file");
  fit->add_option("--samples", cfg.samples, "Samples drawn from --measure");
  fit->add_option("--ranks", cfg.ranks, "Rank classes to sample")->delimiter(',');
  fit->add_option("--tol", cfg.tolerance, "Residual tolerance");
  subs.push_back({Command::Fit, fit});

  auto* recon = app.add_subcommand("reconstruct", "Density operator from a global measure");
  common(recon);
  recon->add_option("--measure", cfg.measure_path, "Measure spec file")->required();
  recon->add_option("--samples", cfg.samples, "Rank-one samples");
  subs.push_back({Command::Reconstruct, recon});

  auto* check = app.add_subcommand("check-model", "Structural checks of an ontological model");
  common(check);
  check->add_option("--model", cfg.model, "Model name")
      ->required()
      ->check(CLI::IsMember(gleason::model_names()));
  check->add_option("--trials", cfg.trials, "Monte-Carlo trials for Born reproduction");
  check->add_option("--samples", cfg.samples, "Samples per structural check");
  check->add_option("--tol", cfg.tolerance, "Affine-fit tolerance");
  subs.push_back({Command::CheckModel, check});

  auto* epr = app.add_subcommand("simulate-epr", "One-bit singlet simulation");
  common(epr);
  epr->add_option("--rounds", cfg.rounds, "Rounds per direction pair");
  epr->add_option("--points", cfg.points, "Direction pairs on the default grid");
  epr->add_option("--a", a_text, "Alice direction x,y,z");
  epr->add_option("--b", b_text, "Bob direction x,y,z");
  epr->add_option("--csv", cfg.csv_path, "CSV output path");
  subs.push_back({Command::SimulateEpr, epr});

  auto* gen = app.add_subcommand("gen-data", "Write (projector, value) samples");
  common(gen);
  gen->add_option("--measure", cfg.measure_path, "Measure spec file")->required();
  gen->add_option("--ranks", cfg.ranks, "Rank classes to sample")->delimiter(',');
  gen->add_option("--count", cfg.count, "Number of samples");
  subs.push_back({Command::GenData, gen});

  try {
    app.parse(argc, argv);
    if (!a_text.empty()) cfg.a = parse_vec3(a_text);
    if (!b_text.empty()) cfg.b = parse_vec3(b_text);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gleason::cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gleason::cli::kExitUsage;
  }
  for (const auto& s : subs) {
    if (s.app->parsed()) cfg.command = s.command;
  }
  if (dim > 0) cfg.dim = dim;
  cfg.timings = !no_timings;

  const gleason::cli::RunResult result = gleason::cli::run(cfg);
  const bool report_to_file =
      cfg.command != Command::GenData && !cfg.output_path.empty() &&
      result.exit_code != gleason::cli::kExitUsage;
  if (!report_to_file) std::cout << result.report.dump(2) << "\n";
  if (result.report.contains("error")) {
    std::cerr << "error: " << result.report["error"].get<std::string>() << "\n";
  }
  return result.exit_code;
}
