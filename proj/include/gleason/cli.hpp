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

// Batch commands behind gleasonctl. Argument parsing lives in the tool; this
// header holds the resolved configuration and the dispatcher so the suites
// can be driven from tests.
//
// Exit status: 0 all checks passed, 1 a check failed, 2 usage error.

#ifndef GLEASON_CLI_HPP
#define GLEASON_CLI_HPP

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "gleason/finite_difference.hpp"
#include "gleason/measure_dsl.hpp"
#include "gleason/ontology.hpp"
#include "gleason/open_set.hpp"
#include "gleason/protocols.hpp"
#include "gleason/report.hpp"
#include "gleason/sample_io.hpp"
#include "gleason/verification.hpp"

namespace gleason::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Seed used when neither --seed nor GLEASON_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 1;

class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Command { VerifyGleason, Fit, Reconstruct, CheckModel, SimulateEpr, GenData };

inline const std::vector<std::pair<std::string, Command>>& command_table() {
  static const std::vector<std::pair<std::string, Command>> table{
      {"verify-gleason", Command::VerifyGleason}, {"fit", Command::Fit},
      {"reconstruct", Command::Reconstruct},      {"check-model", Command::CheckModel},
      {"simulate-epr", Command::SimulateEpr},     {"gen-data", Command::GenData}};
  return table;
}

inline std::string command_name(Command c) {
  for (const auto& [name, cmd] : command_table()) {
    if (cmd == c) return name;
  }
  return "?";
}

struct RunConfig {
  Command command = Command::VerifyGleason;
  std::optional<int> dim;
  int samples = 500;
  long long trials = 100000;
  long long rounds = 1000000;
  int points = 20;
  long long count = 100;
  double h = kFdStep;
  double fd_constant = kFdConstant;
  double tolerance = kFitTolerance;
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
  std::string measure_path;
  std::string input_path;
  std::string output_path;
  std::string csv_path;
  std::string model;
  std::vector<int> ranks{1};
  std::optional<Vec3> a;
  std::optional<Vec3> b;
  bool timings = true;
};

/// Seed from GLEASON_SEED, or kDefaultSeed. A malformed value is a usage
/// error.
inline std::uint64_t default_seed() {
  const char* env = std::getenv("GLEASON_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  std::uint64_t v = 0;
  const std::string_view s(env);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw UsageError("GLEASON_SEED is not an unsigned integer: '" + std::string(s) + "'");
  }
  return v;
}

inline void validate(const RunConfig& c) {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw UsageError(msg);
  };
  need(!c.dim || *c.dim >= 1, "--dim must be positive");
  need(c.samples > 0, "--samples must be positive");
  need(c.trials > 0, "--trials must be positive");
  need(c.rounds > 0, "--rounds must be positive");
  need(c.points > 0, "--points must be positive");
  need(c.count >= 0, "--count must be non-negative");
  need(c.h > 0.0 && c.h <= 1e-2 && c.h >= 1e-5, "--h must lie in [1e-5, 1e-2]");
  need(c.fd_constant > 0.0, "--fd-constant must be positive");
  need(c.tolerance > 0.0, "--tol must be positive");
  need(c.workers >= 1, "--workers must be positive");
  switch (c.command) {
    case Command::VerifyGleason:
    case Command::Reconstruct:
      need(!c.measure_path.empty(), "--measure is required");
      break;
    case Command::Fit:
      need(c.measure_path.empty() != c.input_path.empty(),
           "fit needs exactly one of --measure and --input");
      break;
    case Command::CheckModel:
      need(!c.model.empty(), "--model is required");
      need(c.dim.has_value(), "--dim is required");
      break;
    case Command::SimulateEpr:
      need(c.a.has_value() == c.b.has_value(), "--a and --b go together");
      break;
    case Command::GenData:
      need(!c.measure_path.empty(), "--measure is required");
      need(!c.output_path.empty(), "--output is required");
      break;
  }
  for (int r : c.ranks) need(r >= 1, "--ranks entries must be positive");
  need(!c.ranks.empty(), "--ranks must not be empty");
}

inline Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = command_name(c.command);
  j["dim"] = c.dim ? Json(*c.dim) : Json(nullptr);
  j["samples"] = c.samples;
  j["trials"] = c.trials;
  j["rounds"] = c.rounds;
  j["points"] = c.points;
  j["count"] = c.count;
  j["h"] = c.h;
  j["fd_constant"] = c.fd_constant;
  j["tolerance"] = c.tolerance;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["measure"] = c.measure_path;
  j["input"] = c.input_path;
  j["output"] = c.output_path;
  j["csv"] = c.csv_path;
  j["model"] = c.model;
  j["ranks"] = c.ranks;
  j["a"] = c.a ? Json{(*c.a)(0), (*c.a)(1), (*c.a)(2)} : Json(nullptr);
  j["b"] = c.b ? Json{(*c.b)(0), (*c.b)(1), (*c.b)(2)} : Json(nullptr);
  return j;
}

struct RunResult {
  int exit_code = kExitPass;
  Json report;
};

namespace detail {

/// Loads a spec file; problems with it are usage errors.
inline dsl::ParsedSpec load_spec(const RunConfig& c) {
  try {
    dsl::ParsedSpec spec = dsl::parse_measure_spec(read_text_file(c.measure_path));
    const int d = std::visit([](const auto& m) { return m.dim(); }, spec);
    if (c.dim && *c.dim != d) {
      throw UsageError("--dim " + std::to_string(*c.dim) + " does not match dim " +
                       std::to_string(d) + " in " + c.measure_path);
    }
    return spec;
  } catch (const ParseError& e) {
    throw UsageError(c.measure_path + ":" + e.what());
  } catch (const IoError& e) {
    throw UsageError(e.what());
  }
}

inline Measure load_measure(const RunConfig& c) {
  dsl::ParsedSpec spec = load_spec(c);
  if (auto* m = std::get_if<Measure>(&spec)) return *m;
  throw UsageError(c.measure_path + ": command needs a 'measure' spec, not a 'frame' spec");
}

inline std::vector<CheckReport> verify_gleason(const RunConfig& c, Json& extra) {
  const dsl::ParsedSpec spec = load_spec(c);
  const FrameFunction frame = std::holds_alternative<Measure>(spec)
                                  ? frame_function(std::get<Measure>(spec))
                                  : std::get<FrameFunction>(spec);
  const int d = frame.dim();
  if (d < 3) throw UsageError("verify-gleason needs dimension at least 3");
  std::vector<CheckReport> checks;
  Rng pair_rng = make_rng(c.seed, 0);
  const Lemma1Report lemma =
      verify_lemma1(frame, all_orthonormal_pairs(d), c.samples, c.h, pair_rng, c.fd_constant);
  checks.push_back(lemma.to_report());

  if (const auto* mu = std::get_if<Measure>(&spec)) {
    Rng fit_rng = make_rng(c.seed, 1);
    const OpenSet<Projector> rank1 = all_projectors(d, 1);
    std::vector<FitSample> samples;
    for (int s = 0; s < std::max(c.samples, 2 * d * d); ++s) {
      Projector e = rank1.sample(fit_rng);
      const double v = (*mu)(e);
      samples.push_back({std::move(e), v, 1});
    }
    const FitResult fit = fit_affine(samples);
    checks.push_back(fit_report(fit, c.tolerance));

    double worst = 0.0;
    const int held_out = 100;
    for (int s = 0; s < held_out; ++s) {
      const Projector e = rank1.sample(fit_rng);
      worst = std::max(worst, std::abs(fit.predict(e, 1) - (*mu)(e)));
    }
    CheckReport hold;
    hold.check = "held_out_prediction";
    hold.max_residual = worst;
    hold.tolerance = 10.0 * c.tolerance;
    hold.pass = worst <= hold.tolerance;
    hold.samples = held_out;
    checks.push_back(hold);
    extra["fit"] = fit.to_json();
  }
  return checks;
}

inline std::vector<FitSample> fit_inputs(const RunConfig& c, int& d) {
  std::vector<FitSample> samples;
  if (!c.input_path.empty()) {
    SampleFile file;
    try {
      file = read_samples(c.input_path);
    } catch (const IoError& e) {
      throw UsageError(e.what());
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    if (c.dim && *c.dim != file.dim) throw UsageError("--dim does not match the sample file");
    d = file.dim;
    for (auto& s : file.samples) samples.push_back({s.projector, s.value, s.projector.rank()});
    return samples;
  }
  const Measure mu = load_measure(c);
  d = mu.dim();
  Rng rng = make_rng(c.seed, 0);
  std::uniform_int_distribution<std::size_t> pick(0, c.ranks.size() - 1);
  for (int r : c.ranks) {
    if (r > d) throw UsageError("--ranks entry exceeds the dimension");
  }
  for (int s = 0; s < c.samples; ++s) {
    const int r = c.ranks[pick(rng)];
    Projector e = all_projectors(d, r).sample(rng);
    const double v = mu(e);
    samples.push_back({std::move(e), v, r});
  }
  return samples;
}

inline std::vector<CheckReport> fit(const RunConfig& c, Json& extra) {
  int d = 0;
  const std::vector<FitSample> samples = fit_inputs(c, d);
  extra["dim"] = d;
  try {
    const FitResult result = fit_affine(samples);
    return {fit_report(result, c.tolerance)};
  } catch (const UnderdeterminedError& e) {
    CheckReport r;
    r.check = "affine_fit";
    r.max_residual = std::numeric_limits<double>::infinity();
    r.tolerance = c.tolerance;
    r.samples = static_cast<long long>(samples.size());
    r.details = {{"error", e.what()}, {"null_space_dim", e.null_space_dim()}};
    return {r};
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

inline std::vector<CheckReport> reconstruct(const RunConfig& c, Json& extra) {
  const Measure mu = load_measure(c);
  if (mu.dim() < 3) throw UsageError("reconstruct needs dimension at least 3");
  Rng rng = make_rng(c.seed, 0);
  CheckReport r;
  r.check = "density_reconstruction";
  r.samples = std::max(c.samples, 2 * mu.dim() * mu.dim());
  r.tolerance = 1e-8;
  try {
    const DensityOperator rho = reconstruct_density(mu, rng, static_cast<int>(r.samples));
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.matrix(), Eigen::EigenvaluesOnly);
    r.pass = true;
    r.max_residual = std::abs(rho.matrix().trace().real() - 1.0);
    r.details = {{"min_eigenvalue", eig.eigenvalues().minCoeff()}};
    extra["rho"] = matrix_to_json(rho.matrix());
  } catch (const NotAStateError& e) {
    r.pass = false;
    r.max_residual = std::max(0.0, -e.min_eigenvalue());
    r.details = {{"error", e.what()},
                 {"min_eigenvalue", e.min_eigenvalue()},
                 {"trace", e.trace()}};
  }
  return {r};
}

inline std::vector<CheckReport> check_model(const RunConfig& c, Json& extra) {
  ModelPtr model;
  try {
    model = make_model(c.model, *c.dim);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const int d = model->dim();
  const int n = c.samples;
  std::vector<CheckReport> checks;
  Rng rng = make_rng(c.seed, 0);
  const Vector psi = random_unit_vector(d, rng);
  const OnticState x = model->prepare(psi, PrepContext{}, rng);
  const OmegaFamily family = omega_family(*model);

  checks.push_back(check_outcome_normalization(*model, x, measurement_sampler(*model), n, rng));
  checks.push_back(check_response_consistency(*model, x, n, rng));
  checks.push_back(check_covering(family, x, measurement_sampler(*model), n, rng));
  if (d >= 3) {
    for (int k = 0; k < model->context_bound(); ++k) {
      checks.push_back(check_coarse_grain_closure(family, x, measurement_sampler(*model, 3), k, n, rng));
    }
  }
  checks.push_back(check_membership_consistency(*model, x, measurement_sampler(*model), n, rng));
  if (d >= 3) {
    for (int k = 0; k < model->context_bound(); ++k) {
      if (!sample_in_omega(*model, k, x, rng, 3)) continue;
      AffineContextReport a =
          check_affine_given_context(*model, x, k, omega_sampler(*model, k, x), n, rng, c.tolerance);
      CheckReport r = a.to_report();
      r.parameters["n"] = k;
      checks.push_back(std::move(r));
    }
  }
  const MeasurementTuple m = model->sample_measurement(rng, 2);
  checks.push_back(
      born_reproduction_check(*model, psi, PrepContext{}, m, Context{}, c.trials, rng).to_report());
  if (model->has_sequential()) {
    const SequentialScenario s = random_sequential_scenario(d, 3, rng);
    checks.push_back(sequential_causality_check(*model, x, s, Context{}, 4, rng));
  }
  extra["model"] = model->name();
  return checks;
}

inline std::vector<CheckReport> simulate_epr(const RunConfig& c, Json& extra) {
  std::vector<std::pair<BlochVector, BlochVector>> grid;
  try {
    if (c.a) {
      grid.emplace_back(BlochVector::make(*c.a), BlochVector::make(*c.b));
    } else {
      grid = direction_grid(c.points);
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  std::ostringstream csv;
  csv << kCorrelationCsvHeader << '\n';
  CheckReport corr;
  corr.check = "singlet_correlation";
  corr.tolerance = 5.0;
  corr.pass = true;
  CheckReport marg;
  marg.check = "unbiased_marginals";
  marg.tolerance = 4.0;
  marg.pass = true;
  Json points = Json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& [a, b] = grid[i];
    const std::uint64_t seed = c.seed + i;
    const CorrelationEstimate e = estimate_correlation(a, b, c.rounds, seed, c.workers);
    const double oracle = singlet_born_correlation(a, b);
    // Standard error under the oracle; the empirical one vanishes at |E| = 1.
    const double se = std::sqrt(std::max(1.0 - oracle * oracle, 1.0 / c.rounds) / c.rounds);
    const double z = std::abs(e.mean - oracle) / se;
    const double za = std::abs(e.marginal_a) / std::sqrt(1.0 / c.rounds);
    const double zb = std::abs(e.marginal_b) / std::sqrt(1.0 / c.rounds);
    corr.max_residual = std::max(corr.max_residual, z);
    marg.max_residual = std::max({marg.max_residual, za, zb});
    corr.pass = corr.pass && z <= corr.tolerance;
    marg.pass = marg.pass && za <= marg.tolerance && zb <= marg.tolerance;
    write_correlation_csv_row(csv, a, b, e);
    points.push_back({{"a", {a.x(), a.y(), a.z()}},
                      {"b", {b.x(), b.y(), b.z()}},
                      {"mean", e.mean},
                      {"stderr", e.stderr_mean},
                      {"oracle", oracle},
                      {"marginal_a", e.marginal_a},
                      {"marginal_b", e.marginal_b},
                      {"seed", seed}});
  }
  corr.samples = marg.samples = static_cast<long long>(grid.size()) * c.rounds;
  corr.parameters = marg.parameters = {{"rounds_per_point", c.rounds}, {"points", grid.size()}};
  extra["points"] = points;
  if (!c.csv_path.empty()) {
    try {
      write_text_file(c.csv_path, csv.str());
    } catch (const IoError& e) {
      throw UsageError(e.what());
    }
  }
  return {corr, marg};
}

inline std::vector<CheckReport> gen_data(const RunConfig& c, Json& extra) {
  const Measure mu = load_measure(c);
  const int d = mu.dim();
  for (int r : c.ranks) {
    if (r > d) throw UsageError("--ranks entry exceeds the dimension");
  }
  Rng rng = make_rng(c.seed, 0);
  std::uniform_int_distribution<std::size_t> pick(0, c.ranks.size() - 1);
  std::vector<LabeledSample> samples;
  for (long long s = 0; s < c.count; ++s) {
    const int r = c.ranks[pick(rng)];
    Projector e = all_projectors(d, r).sample(rng);
    const double v = mu(e);
    samples.push_back({std::move(e), v});
  }
  try {
    write_text_file(c.output_path, format_samples(d, samples));
  } catch (const IoError& e) {
    throw UsageError(e.what());
  }
  extra["written"] = c.output_path;
  CheckReport r;
  r.check = "gen_data";
  r.pass = true;
  r.samples = c.count;
  return {r};
}

}  // namespace detail

/// Runs one command. The report is written to output_path when that names
/// a report (every command except gen-data, whose output is the sample file).
inline RunResult run(const RunConfig& config) {
  RunResult result;
  const auto start = std::chrono::steady_clock::now();
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = command_name(config.command);
  report["config"] = config_json(config);
  try {
    validate(config);
    Json extra = Json::object();
    std::vector<CheckReport> checks;
    try {
      switch (config.command) {
        case Command::VerifyGleason: checks = detail::verify_gleason(config, extra); break;
        case Command::Fit: checks = detail::fit(config, extra); break;
        case Command::Reconstruct: checks = detail::reconstruct(config, extra); break;
        case Command::CheckModel: checks = detail::check_model(config, extra); break;
        case Command::SimulateEpr: checks = detail::simulate_epr(config, extra); break;
        case Command::GenData: checks = detail::gen_data(config, extra); break;
      }
    } catch (const UsageError&) {
      throw;
    } catch (const Error& e) {
      CheckReport failed;
      failed.check = "error";
      failed.details = {{"message", e.what()}};
      checks.push_back(failed);
    }
    Json list = Json::array();
    int failures = 0;
    for (const auto& ch : checks) {
      list.push_back(ch.to_json());
      if (!ch.pass) ++failures;
    }
    report["checks"] = list;
    report["results"] = extra;
    report["summary"] = {{"pass", failures == 0},
                         {"checks", checks.size()},
                         {"failed", failures}};
    result.exit_code = failures == 0 ? kExitPass : kExitCheckFailed;
  } catch (const UsageError& e) {
    report["error"] = e.what();
    report["summary"] = {{"pass", false}, {"checks", 0}, {"failed", 0}};
    result.exit_code = kExitUsage;
  }
  if (config.timings) {
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
    report["timings"] = {{"wall_seconds", wall.count()}};
  }
  result.report = std::move(report);
  if (result.exit_code != kExitUsage && config.command != Command::GenData &&
      !config.output_path.empty()) {
    try {
      write_text_file(config.output_path, result.report.dump(2) + "\n");
    } catch (const IoError& e) {
      result.report["error"] = e.what();
      result.exit_code = kExitUsage;
    }
  }
  return result;
}

/// Report with the timing field removed, for determinism comparisons.
inline Json without_timings(Json report) {
  report.erase("timings");
  return report;
}

}  // namespace gleason::cli

#endif  // GLEASON_CLI_HPP
