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

// End-to-end acceptance run. One PASS/FAIL line per criterion; exit status
// is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "gleason/cli.hpp"
#include "gleason/finite_difference.hpp"
#include "gleason/measures.hpp"
#include "gleason/ontology.hpp"
#include "gleason/protocols.hpp"
#include "gleason/verification.hpp"
#include "oracles.hpp"

namespace {

using namespace gleason;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string summary;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double max_abs_entry(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// 1. Density-operator round trip.
Outcome round_trip() {
  const auto t0 = Clock::now();
  Rng rng = make_rng(1001);
  double worst = 0.0;
  int cases = 0;
  for (int d = 3; d <= 6; ++d) {
    for (int s = 0; s < 20; ++s) {
      const DensityOperator rho = random_density_operator(d, rng);
      const DensityOperator back = reconstruct_density(make_born_measure(rho), rng);
      worst = std::max(worst, (back.matrix() - rho.matrix()).norm());
      ++cases;
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << cases << " states, max Frobenius error " << worst << ", " << secs << " s";
  return {worst <= 1e-8 && secs < 30.0, os.str()};
}

// 2. Affine fitter on connected patches (one rank-1 and one rank-2 ball).
Outcome affine_fitter() {
  Rng rng = make_rng(1002);
  std::uniform_real_distribution<double> k_dist(-1.0, 1.0);
  std::uniform_real_distribution<double> scale(0.05, 2.0);
  double eta_err = 0.0, k_err = 0.0, rms = 0.0;
  int cases = 0;
  for (int d = 3; d <= 5; ++d) {
    for (int s = 0; s < 50; ++s) {
      // Gauge-shifted input: the fitter has to land on the traceless part.
      const Matrix eta = scale(rng) * random_hermitian(d, rng);
      const std::map<int, double> k{{1, k_dist(rng)}, {2, k_dist(rng)}};
      const AffineParameters truth{eta, k};
      const AffineMeasure canonical = AffineMeasure::normalized(truth);

      const Projector c1 = projector_from_vector(random_unit_vector(d, rng));
      const Projector c2 = random_complete_tuple(d, std::vector<int>{2, d - 2}, rng)[0];
      const std::vector<OpenSet<Projector>> patches{projector_ball(c1, 0.5, 0.3),
                                                    projector_ball(c2, 0.5, 0.3)};
      std::vector<FitSample> samples;
      for (const auto& patch : patches) {
        for (int i = 0; i < 3 * d * d; ++i) {
          Projector e = patch.sample(rng);
          const double v = affine_eval(truth, e);
          const int r = e.rank();
          samples.push_back({std::move(e), v, r});
        }
      }
      const FitResult fit = fit_affine(samples);
      eta_err = std::max(eta_err, max_abs_entry(fit.eta - canonical.eta()));
      for (const auto& [r, kr] : canonical.constants()) {
        k_err = std::max(k_err, std::abs(fit.constants.at(r) - kr));
      }
      rms = std::max(rms, fit.rms_residual);
      ++cases;
    }
  }
  std::ostringstream os;
  os << cases << " measures, eta error " << eta_err << ", K error " << k_err << ", rms " << rms;
  return {eta_err <= 1e-8 && k_err <= 1e-8 && rms <= 1e-10, os.str()};
}

double oracle_deviation(const RealFunction3& g, const oracle::Tensor3& exact, const Vec3& v, double h) {
  const ThirdDerivTensor t = third_derivative_tensor(g, v, h);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(t(i, j, k) - exact[oracle::at(i, j, k)]));
  return worst;
}

// 3. Separation of frame functions by the differential identities.
Outcome lemma_separation() {
  Rng rng = make_rng(1003);
  const double h = 1e-3;
  bool ok = true;
  double born_max = 0.0, affine_max = 0.0, quartic_ratio = 1e300, conv_ratio = 1e300;
  for (int d = 3; d <= 5; ++d) {
    const auto born = verify_lemma1(frame_function(make_born_measure(random_density_operator(d, rng))),
                                    all_orthonormal_pairs(d), 20, h, rng);
    const auto affine = verify_lemma1(
        frame_function(AffineMeasure::normalized(random_traceless_hermitian(d, rng), {{1, 0.2}}).as_measure()),
        all_orthonormal_pairs(d), 20, h, rng);
    ok = ok && born.pass && affine.pass;
    born_max = std::max(born_max, born.max_third_derivative);
    affine_max = std::max(affine_max, affine.max_third_derivative);
    ok = ok && born.max_third_derivative <= 50.0 * h * h && affine.max_third_derivative <= 50.0 * h * h;

    const DensityOperator rho = random_density_operator(d, rng);
    const auto quartic = verify_lemma1(frame_function(make_quadratic_measure(rho.matrix())),
                                       all_orthonormal_pairs(d), 20, h, rng);
    quartic_ratio = std::min(quartic_ratio, quartic.max_third_derivative / quartic.tolerance);
  }
  ok = ok && quartic_ratio >= 10.0;

  const Vec3 a(0.9, -0.6, 0.7);
  const RealFunction3 ex = [a](const Vec3& v) { return std::exp(a.dot(v)); };
  const RealFunction3 sn = [a](const Vec3& v) { return std::sin(a.dot(v)); };
  std::normal_distribution<double> g;
  for (int s = 0; s < 10; ++s) {
    const Vec3 v = Vec3(g(rng), g(rng), g(rng)).normalized();
    const auto e_exact = oracle::exp_third_derivatives(a, v);
    const auto s_exact = oracle::sin_third_derivatives(a, v);
    conv_ratio = std::min(conv_ratio, oracle_deviation(ex, e_exact, v, 1e-2) /
                                          oracle_deviation(ex, e_exact, v, 5e-3));
    conv_ratio = std::min(conv_ratio, oracle_deviation(sn, s_exact, v, 1e-2) /
                                          oracle_deviation(sn, s_exact, v, 5e-3));
  }
  ok = ok && conv_ratio >= 3.0;
  std::ostringstream os;
  os << "born max " << born_max << ", affine max " << affine_max << " (bound " << 50.0 * h * h
     << "), quartic min ratio " << quartic_ratio << ", halving-h ratio " << conv_ratio;
  return {ok, os.str()};
}

// 4. Overlapping patches must share their constant.
Outcome patch_consistency() {
  Rng rng = make_rng(1004);
  double worst_gap = 0.0;
  bool ok = true;
  for (int s = 0; s < 20; ++s) {
    const int d = 3 + s % 3;
    const auto mu = AffineMeasure::normalized(random_traceless_hermitian(d, rng), {{1, 0.3}}).as_measure();
    const Projector c1 = projector_from_vector(random_unit_vector(d, rng));
    const Projector c2 = conjugate(c1, unitary_exp(random_hermitian(d, rng), 0.2));
    const std::vector<OpenSet<Projector>> patches{projector_ball(c1, 0.6, 0.3), projector_ball(c2, 0.6, 0.3)};
    const PatchReport rep = verify_patch_consistency(mu, patches, 4 * d * d, rng);
    ok = ok && rep.pass && rep.pairs.size() == 1 &&
         rep.pairs[0].kind == PatchPairVerdict::Kind::OverlapConsistent;
    worst_gap = std::max(worst_gap, rep.pairs[0].constant_gap);
  }
  ok = ok && worst_gap <= 1e-8;

  // Engineered violation: constants switch across the bisector of two basis rays.
  int flagged = 0;
  const int engineered = 10;
  for (int s = 0; s < engineered; ++s) {
    const Matrix eta = 0.2 * random_traceless_hermitian(3, rng);
    const Projector c1 = projector_from_vector(Vector::Unit(3, 0));
    const Projector c2 = projector_from_vector(Vector::Unit(3, 1));
    const Measure piecewise(
        3,
        [=](const Projector& e) {
          return trace_product(eta, e.matrix()) + (e.distance(c1) <= e.distance(c2) ? 0.1 : 0.4);
        },
        "piecewise");
    const std::vector<OpenSet<Projector>> patches{projector_ball(c1, 1.2, 2.0), projector_ball(c2, 1.2, 2.0)};
    const PatchReport rep = verify_patch_consistency(piecewise, patches, 60, rng);
    flagged += !rep.pass && rep.pairs[0].kind == PatchPairVerdict::Kind::OverlapViolation;
  }
  ok = ok && flagged == engineered;
  std::ostringstream os;
  os << "overlap max |K1-K2| " << worst_gap << ", violations flagged " << flagged << "/" << engineered;
  return {ok, os.str()};
}

// 5. Structural checks on compliant models and on one violator per check.
Outcome ontology_suite() {
  Rng rng = make_rng(1005);
  bool ok = true;
  double worst = 0.0;
  std::vector<std::string> failures;
  auto compliant = [&](const ModelPtr& model) {
    const int d = model->dim();
    const OnticState x = model->prepare(random_unit_vector(d, rng), PrepContext{}, rng);
    const OmegaFamily family = omega_family(*model);
    std::vector<CheckReport> reps;
    reps.push_back(check_outcome_normalization(*model, x, measurement_sampler(*model), 300, rng));
    reps.push_back(check_response_consistency(*model, x, 300, rng));
    reps.push_back(check_covering(family, x, measurement_sampler(*model), 300, rng));
    for (int k = 0; k < model->context_bound(); ++k) {
      reps.push_back(check_coarse_grain_closure(family, x, measurement_sampler(*model, 3), k, 300, rng));
    }
    reps.push_back(check_membership_consistency(*model, x, measurement_sampler(*model), 300, rng));
    if (model->has_sequential()) {
      reps.push_back(sequential_causality_check(*model, x, random_sequential_scenario(d, 3, rng), Context{}, 4, rng));
    }
    for (const auto& r : reps) {
      worst = std::max(worst, r.max_residual);
      // Zero up to double rounding of sums of probabilities.
      if (!r.pass || r.max_residual > 1e-12) {
        ok = false;
        failures.push_back(model->name() + ":" + r.check);
      }
    }
  };
  for (int d = 3; d <= 5; ++d) {
    compliant(bb_model(d));
    compliant(bb_sequential_model(d));
    compliant(deterministic_patch_model(d));
  }

  int detected = 0;
  auto expect_fail = [&](const CheckReport& r) {
    detected += !r.pass;
    if (r.pass) failures.push_back("undetected:" + r.check);
  };
  {
    const auto m = violate_normalization_model(3);
    const OnticState x = m->prepare(Vector::Unit(3, 0), PrepContext{}, rng);
    expect_fail(check_outcome_normalization(*m, x, measurement_sampler(*m), 100, rng));
  }
  {
    const auto m = violate_response_model(3);
    const OnticState x = m->prepare(Vector::Unit(3, 1), PrepContext{}, rng);
    expect_fail(check_response_consistency(*m, x, 100, rng));
  }
  {
    const auto m = violate_covering_model(3);
    const OnticState x = m->prepare(Vector::Unit(3, 0), PrepContext{}, rng);
    expect_fail(check_covering(omega_family(*m), x, measurement_sampler(*m), 200, rng));
  }
  {
    const auto m = violate_closure_model(3);
    const OnticState x = m->prepare(Vector::Unit(3, 0), PrepContext{}, rng);
    expect_fail(check_coarse_grain_closure(omega_family(*m), x, measurement_sampler(*m, 3), 0, 100, rng));
  }
  {
    const auto m = violate_causality_model(3);
    const OnticState x = m->prepare(random_unit_vector(3, rng), PrepContext{}, rng);
    expect_fail(sequential_causality_check(*m, x, random_sequential_scenario(3, 2, rng), Context{}, 8, rng));
  }
  ok = ok && detected == 5;
  std::ostringstream os;
  os << "compliant max defect " << worst << ", violators detected " << detected << "/5";
  for (const auto& f : failures) os << " [" << f << "]";
  return {ok, os.str()};
}

// 6. Affine response within each context.
Outcome affine_given_context() {
  Rng rng = make_rng(1006);
  double compliant_worst = 0.0;
  double nonaffine_best = 1e300;
  int pairs = 0;
  for (int d = 3; d <= 5; ++d) {
    for (const ModelPtr& model : {bb_model(d), deterministic_patch_model(d)}) {
      for (int s = 0; s < 3; ++s) {
        const OnticState x = model->prepare(random_unit_vector(d, rng), PrepContext{}, rng);
        for (int n = 0; n < model->context_bound(); ++n) {
          if (!sample_in_omega(*model, n, x, rng, 3)) continue;
          const auto rep = check_affine_given_context(*model, x, n, omega_sampler(*model, n, x), 200, rng);
          compliant_worst = std::max(compliant_worst, rep.fit.rms_residual);
          ++pairs;
        }
      }
    }
    const ModelPtr bad = nonaffine_model(d);
    for (int s = 0; s < 3; ++s) {
      const OnticState x = bad->prepare(random_unit_vector(d, rng), PrepContext{}, rng);
      for (int n = 0; n < bad->context_bound(); ++n) {
        if (!sample_in_omega(*bad, n, x, rng, 3)) continue;
        const auto rep = check_affine_given_context(*bad, x, n, omega_sampler(*bad, n, x), 200, rng);
        nonaffine_best = std::min(nonaffine_best, rep.fit.rms_residual);
        ++pairs;
      }
    }
  }
  std::ostringstream os;
  os << pairs << " (x, n) pairs, compliant max residual " << compliant_worst << ", non-affine min residual "
     << nonaffine_best;
  return {compliant_worst <= 1e-8 && nonaffine_best >= 1e-2 && nonaffine_best < 1e300, os.str()};
}

// 7. Monte-Carlo outcome frequencies against the Born rule.
Outcome born_sweep() {
  const auto t0 = Clock::now();
  Rng rng = make_rng(1007);
  int outliers = 0;
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const int d = 2 + s % 5;
    const ModelPtr model = bb_model(d);
    const Vector psi = random_unit_vector(d, rng);
    const MeasurementTuple m = random_measurement(d, rng, 2);
    const auto rep = born_reproduction_check(*model, psi, PrepContext{}, m, Context{}, 100000, rng);
    for (int k = 0; k < m.size(); ++k) {
      // Independent Born value for the z-score.
      const double p = std::clamp(oracle::expectation(psi, m[k].matrix()), 0.0, 1.0);
      const double z = oracle::binomial_z(rep.outcomes[k].frequency, p, 100000);
      worst = std::max(worst, std::abs(z));
      outliers += std::abs(z) > 4.0;
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << "100 scenarios, max |z| " << worst << ", outliers " << outliers << ", " << secs << " s";
  return {outliers <= 1 && secs < 60.0, os.str()};
}

// 8. One-bit singlet simulation.
Outcome epr() {
  const long long n = 1000000;
  double worst_corr = 0.0, worst_marg = 0.0;
  const auto grid = direction_grid(20);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& [a, b] = grid[i];
    const CorrelationEstimate e = estimate_correlation(a, b, n, 5000 + i);
    const double expected = singlet_born_correlation(a, b);
    const double se = std::sqrt(std::max(1.0 - expected * expected, 1.0 / n) / n);
    worst_corr = std::max(worst_corr, std::abs(e.mean - expected) / se);
    const double se_marg = std::sqrt(1.0 / n);
    worst_marg = std::max({worst_marg, std::abs(e.marginal_a) / se_marg, std::abs(e.marginal_b) / se_marg});
  }
  std::ostringstream os;
  os << "20 points at 1e6 rounds, max correlation deviation " << worst_corr << " SE, max marginal "
     << worst_marg << " SE";
  return {worst_corr <= 5.0 && worst_marg <= 4.0, os.str()};
}

// 9. Reports are a function of (seed, workers) only.
Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("gleason-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string specs = GLEASON_SPECS_DIR;
  std::vector<cli::RunConfig> configs;
  auto add = [&](cli::Command c, auto&& tweak) {
    cli::RunConfig cfg;
    cfg.command = c;
    cfg.seed = 424242;
    tweak(cfg);
    configs.push_back(cfg);
  };
  add(cli::Command::VerifyGleason, [&](auto& c) { c.measure_path = specs + "/affine.spec"; c.samples = 50; });
  add(cli::Command::Fit, [&](auto& c) { c.measure_path = specs + "/affine.spec"; c.ranks = {1, 2}; });
  add(cli::Command::Reconstruct, [&](auto& c) { c.measure_path = specs + "/born.spec"; });
  add(cli::Command::CheckModel, [&](auto& c) { c.model = "deterministic"; c.dim = 4; c.samples = 100; c.trials = 20000; });
  add(cli::Command::CheckModel, [&](auto& c) { c.model = "bb"; c.dim = 3; c.samples = 100; c.trials = 20000; });
  add(cli::Command::SimulateEpr, [&](auto& c) { c.rounds = 100000; c.points = 4; c.workers = 3; });
  add(cli::Command::GenData, [&](auto& c) { c.measure_path = specs + "/affine.spec"; c.count = 40; });

  bool ok = true;
  std::ostringstream os;
  int identical = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    std::string outputs[2];
    Json reports[2];
    for (int rep = 0; rep < 2; ++rep) {
      cli::RunConfig cfg = configs[i];
      if (cfg.command == cli::Command::GenData) {
        cfg.output_path = (dir / ("samples" + std::to_string(rep) + ".txt")).string();
      }
      reports[rep] = cli::without_timings(cli::run(cfg).report);
      if (!cfg.output_path.empty()) outputs[rep] = read_text_file(cfg.output_path);
      if (reports[rep].contains("config")) reports[rep]["config"].erase("output");
      if (reports[rep].contains("results")) reports[rep]["results"].erase("written");
    }
    const bool same = reports[0] == reports[1] && outputs[0] == outputs[1] && !reports[0].contains("error");
    identical += same;
    if (!same) os << " [differs: " << cli::command_name(configs[i].command) << "]";
    ok = ok && same;
  }
  fs::remove_all(dir);
  std::ostringstream head;
  head << identical << "/" << configs.size() << " suites identical on rerun" << os.str();
  return {ok, head.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"density-operator round trip", round_trip},
      {"affine fitter on patches", affine_fitter},
      {"frame-function separation", lemma_separation},
      {"patch-constant consistency", patch_consistency},
      {"ontology structural checks", ontology_suite},
      {"affine response given context", affine_given_context},
      {"Born reproduction sweep", born_sweep},
      {"one-bit singlet simulation", epr},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << o.summary << ")" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
