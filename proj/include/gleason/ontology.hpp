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

// Ontological models with a finite amount of contextual information.
//
// A model prepares an ontic state x from a quantum state, draws a discrete
// context index n from P_c(n | x, M, tau), and answers outcome probabilities
// mu(E | x, n). The measurements compatible with n at x form Omega_n(x).
// The checks below test a model against the structural requirements of this
// picture: normalization, covering, closure under coarse graining, Born
// reproduction, affine response within a context, and causality of
// sequential contexts.

#ifndef GLEASON_ONTOLOGY_HPP
#define GLEASON_ONTOLOGY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gleason/hilbert.hpp"
#include "gleason/report.hpp"
#include "gleason/verification.hpp"

namespace gleason {

/// Ontic state. `label` is the discrete part (a basis index, a bin), and
/// `amplitudes` carries any continuous part; models use either or both.
struct OnticState {
  std::int64_t label = 0;
  Vector amplitudes;

  friend bool operator==(const OnticState& a, const OnticState& b) {
    if (a.label != b.label || a.amplitudes.size() != b.amplitudes.size()) return false;
    return a.amplitudes.size() == 0 || a.amplitudes == b.amplitudes;
  }
};

/// Residual measurement context tau. Opaque to the framework.
struct Context {
  std::int64_t label = 0;
};

/// Preparation context. Opaque to the framework.
struct PrepContext {
  std::int64_t label = 0;
};

/// Support of P_c(n | ...): (n, probability) pairs.
using ContextDistribution = std::vector<std::pair<int, double>>;

/// Two-outcome measurements {E_k, 1 - E_k} performed in order. The E_k
/// must commute pairwise.
class SequentialScenario {
 public:
  static SequentialScenario make(std::vector<Projector> effects, double tol = kDefaultTol) {
    if (effects.empty()) throw InvalidArgument("sequential scenario: no measurements");
    const int d = effects.front().dim();
    for (std::size_t i = 0; i < effects.size(); ++i) {
      if (effects[i].dim() != d) throw DimensionMismatch(d, effects[i].dim(), "sequential scenario");
      for (std::size_t j = i + 1; j < effects.size(); ++j) {
        const Matrix& a = effects[i].matrix();
        const Matrix& b = effects[j].matrix();
        if ((a * b - b * a).norm() > tol) {
          throw InvalidArgument("sequential scenario: effects do not commute");
        }
      }
    }
    return SequentialScenario(std::move(effects));
  }

  int size() const { return static_cast<int>(effects_.size()); }
  int dim() const { return effects_.front().dim(); }
  const Projector& operator[](int k) const { return effects_[k]; }
  const std::vector<Projector>& effects() const { return effects_; }

 private:
  explicit SequentialScenario(std::vector<Projector> e) : effects_(std::move(e)) {}
  std::vector<Projector> effects_;
};

class OntologicalModel {
 public:
  virtual ~OntologicalModel() = default;

  virtual std::string name() const = 0;
  virtual int dim() const = 0;
  /// N_ctx: context indices are 0 .. N_ctx - 1.
  virtual int context_bound() const = 0;

  virtual OnticState prepare(const Vector& psi, const PrepContext& prep, Rng& rng) const = 0;
  virtual ContextDistribution context_distribution(const OnticState& x,
                                                   const MeasurementTuple& m,
                                                   const Context& tau) const = 0;
  virtual double response(const Projector& e, const OnticState& x, int n) const = 0;
  virtual bool in_omega(int n, const OnticState& x, const MeasurementTuple& m) const = 0;

  /// Random measurement from the model's measurement space, with at least
  /// `min_outcomes` outcomes.
  virtual MeasurementTuple sample_measurement(Rng& rng, int min_outcomes) const = 0;

  /// Residual contexts the model distinguishes.
  virtual std::vector<Context> declared_contexts() const { return {Context{}}; }

  /// Class label used when fitting mu(. | x, n): projectors sharing a class
  /// share one constant. Rank by default.
  virtual int projector_class(const Projector& e, const OnticState&, int) const {
    return e.rank();
  }

  virtual bool has_sequential() const { return false; }
  /// Distribution of n_k given the first k context indices.
  virtual ContextDistribution step_context(const OnticState&, const SequentialScenario&,
                                           std::span<const int>, const Context&) const {
    throw InvalidArgument(name() + ": model lacks a sequential interface");
  }
  /// mu(E_k | x, n_1, ..., n_M) for step k (0-based).
  virtual double step_response(const SequentialScenario&, int, const OnticState&,
                               std::span<const int>) const {
    throw InvalidArgument(name() + ": model lacks a sequential interface");
  }
};

/// Model assembled from callables. Unset optional callables fall back to the
/// base-class defaults.
struct ModelFunctions {
  std::string name;
  int dim = 0;
  int context_bound = 1;
  std::function<OnticState(const Vector&, const PrepContext&, Rng&)> prepare;
  std::function<ContextDistribution(const OnticState&, const MeasurementTuple&, const Context&)>
      context;
  std::function<double(const Projector&, const OnticState&, int)> response;
  std::function<bool(int, const OnticState&, const MeasurementTuple&)> in_omega;
  std::function<MeasurementTuple(Rng&, int)> sample_measurement;
  std::function<int(const Projector&, const OnticState&, int)> projector_class;
  std::function<ContextDistribution(const OnticState&, const SequentialScenario&,
                                    std::span<const int>, const Context&)>
      step_context;
  std::function<double(const SequentialScenario&, int, const OnticState&, std::span<const int>)>
      step_response;
};

class FunctionalModel final : public OntologicalModel {
 public:
  explicit FunctionalModel(ModelFunctions f) : f_(std::move(f)) {
    if (!f_.prepare || !f_.context || !f_.response || !f_.in_omega || !f_.sample_measurement) {
      throw InvalidArgument("FunctionalModel: missing required callable");
    }
    if (f_.context_bound < 1) throw InvalidArgument("FunctionalModel: context bound must be >= 1");
  }

  std::string name() const override { return f_.name; }
  int dim() const override { return f_.dim; }
  int context_bound() const override { return f_.context_bound; }
  OnticState prepare(const Vector& psi, const PrepContext& p, Rng& rng) const override {
    return f_.prepare(psi, p, rng);
  }
  ContextDistribution context_distribution(const OnticState& x, const MeasurementTuple& m,
                                           const Context& tau) const override {
    return f_.context(x, m, tau);
  }
  double response(const Projector& e, const OnticState& x, int n) const override {
    return f_.response(e, x, n);
  }
  bool in_omega(int n, const OnticState& x, const MeasurementTuple& m) const override {
    return f_.in_omega(n, x, m);
  }
  MeasurementTuple sample_measurement(Rng& rng, int min_outcomes) const override {
    return f_.sample_measurement(rng, min_outcomes);
  }
  int projector_class(const Projector& e, const OnticState& x, int n) const override {
    return f_.projector_class ? f_.projector_class(e, x, n)
                              : OntologicalModel::projector_class(e, x, n);
  }
  bool has_sequential() const override { return f_.step_context && f_.step_response; }
  ContextDistribution step_context(const OnticState& x, const SequentialScenario& s,
                                   std::span<const int> prefix,
                                   const Context& tau) const override {
    if (!has_sequential()) return OntologicalModel::step_context(x, s, prefix, tau);
    return f_.step_context(x, s, prefix, tau);
  }
  double step_response(const SequentialScenario& s, int k, const OnticState& x,
                       std::span<const int> n) const override {
    if (!has_sequential()) return OntologicalModel::step_response(s, k, x, n);
    return f_.step_response(s, k, x, n);
  }

 private:
  ModelFunctions f_;
};

using ModelPtr = std::shared_ptr<const OntologicalModel>;

/// Membership predicate of the Omega_n(x) family, n in [0, context_bound).
struct OmegaFamily {
  std::function<bool(int, const OnticState&, const MeasurementTuple&)> membership;
  int context_bound = 1;
  std::string label;
};

inline OmegaFamily omega_family(const OntologicalModel& model) {
  return {[&model](int n, const OnticState& x, const MeasurementTuple& m) {
            return model.in_omega(n, x, m);
          },
          model.context_bound(), model.name()};
}

using TupleSampler = std::function<MeasurementTuple(Rng&)>;

// ---------------------------------------------------------------------------
// Measurement samplers

/// Uniform random composition of d into `parts` positive ranks.
inline std::vector<int> random_composition(int d, int parts, Rng& rng) {
  if (parts < 1 || parts > d) throw InvalidArgument("random_composition: bad part count");
  std::vector<int> cuts(d - 1);
  std::iota(cuts.begin(), cuts.end(), 1);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(parts - 1);
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> ranks;
  int prev = 0;
  for (int c : cuts) {
    ranks.push_back(c - prev);
    prev = c;
  }
  ranks.push_back(d - prev);
  return ranks;
}

/// Haar-random complete measurement with a uniformly chosen number of
/// outcomes in [min_outcomes, d] and a random rank pattern.
inline MeasurementTuple random_measurement(int d, Rng& rng, int min_outcomes = 2) {
  if (min_outcomes > d) throw InvalidArgument("random_measurement: more outcomes than dimension");
  std::uniform_int_distribution<int> count(std::max(1, min_outcomes), d);
  const std::vector<int> ranks = random_composition(d, count(rng), rng);
  return random_complete_tuple(d, ranks, rng);
}

/// Rejection sampler restricted to Omega_n(x); empty optional when
/// `attempts` draws all miss.
inline std::optional<MeasurementTuple> sample_in_omega(const OntologicalModel& model, int n,
                                                       const OnticState& x, Rng& rng,
                                                       int min_outcomes, int attempts = 1000) {
  for (int a = 0; a < attempts; ++a) {
    MeasurementTuple m = model.sample_measurement(rng, min_outcomes);
    if (model.in_omega(n, x, m)) return m;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Probabilities

/// P(E_k | x, M, tau) = sum_n mu(E_k | x, n) P_c(n | x, M, tau).
inline double response_probability(const OntologicalModel& model, const Projector& e,
                                   const OnticState& x, const MeasurementTuple& m,
                                   const Context& tau) {
  if (m.find(e) < 0) throw InvalidArgument("response_probability: projector is not in M");
  double p = 0.0;
  for (const auto& [n, weight] : model.context_distribution(x, m, tau)) {
    if (weight != 0.0) p += weight * model.response(e, x, n);
  }
  return p;
}

/// Tolerances of the structural checks.
inline constexpr double kContextNormTol = 1e-12;
inline constexpr double kResponseNormTol = 1e-10;
inline constexpr double kNegativityTol = 1e-12;

/// sum_k P(E_k | x, M, tau) = 1 and P >= 0 for sampled M, with P_c itself
/// normalized and supported on at most context_bound indices.
inline CheckReport check_outcome_normalization(const OntologicalModel& model,
                                               const OnticState& x, const TupleSampler& sampler,
                                               int n_samples, Rng& rng) {
  double worst_sum = 0.0;
  double worst_negative = 0.0;
  double worst_context = 0.0;
  int support_violations = 0;
  for (int s = 0; s < n_samples; ++s) {
    const MeasurementTuple m = sampler(rng);
    for (const Context& tau : model.declared_contexts()) {
      const ContextDistribution pc = model.context_distribution(x, m, tau);
      double total = 0.0;
      int support = 0;
      for (const auto& [n, w] : pc) {
        total += w;
        if (w > 0.0) ++support;
        if (n < 0 || n >= model.context_bound()) ++support_violations;
        worst_negative = std::max(worst_negative, -w);
      }
      if (support > model.context_bound()) ++support_violations;
      worst_context = std::max(worst_context, std::abs(total - 1.0));
      double sum = 0.0;
      for (const auto& e : m) {
        const double p = response_probability(model, e, x, m, tau);
        sum += p;
        worst_negative = std::max(worst_negative, -p);
      }
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
  }
  CheckReport r;
  r.check = "outcome_normalization";
  r.parameters = {{"model", model.name()}};
  r.max_residual = std::max({worst_sum, worst_context, worst_negative});
  r.tolerance = kResponseNormTol;
  r.pass = worst_sum <= kResponseNormTol && worst_context <= kContextNormTol &&
           worst_negative <= kNegativityTol && support_violations == 0;
  r.samples = n_samples;
  r.details = {{"max_sum_defect", worst_sum},
               {"max_context_defect", worst_context},
               {"max_negativity", worst_negative},
               {"context_support_violations", support_violations}};
  return r;
}

/// For each n, samples M in Omega_n(x) and checks that mu(. | x, n) is
/// normalized and non-negative on M. Contexts with no sampled members are
/// skipped, as are (E, n) pairs outside Omega_n(x).
inline CheckReport check_response_consistency(const OntologicalModel& model,
                                              const OnticState& x, int samples_per_context,
                                              Rng& rng, int min_outcomes = 2) {
  double worst_sum = 0.0;
  double worst_negative = 0.0;
  long long checked = 0;
  Json skipped = Json::array();
  for (int n = 0; n < model.context_bound(); ++n) {
    for (int s = 0; s < samples_per_context; ++s) {
      const auto m = sample_in_omega(model, n, x, rng, min_outcomes);
      if (!m) {
        skipped.push_back(n);
        break;
      }
      double sum = 0.0;
      for (const auto& e : *m) {
        const double v = model.response(e, x, n);
        sum += v;
        worst_negative = std::max(worst_negative, -v);
      }
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
      ++checked;
    }
  }
  CheckReport r;
  r.check = "response_consistency";
  r.parameters = {{"model", model.name()}, {"min_outcomes", min_outcomes}};
  r.max_residual = std::max(worst_sum, worst_negative);
  r.tolerance = kResponseNormTol;
  r.pass = worst_sum <= kResponseNormTol && worst_negative <= kResponseNormTol;
  r.samples = checked;
  r.details = {{"max_normalization_defect", worst_sum},
               {"max_negativity", worst_negative},
               {"contexts_without_members", skipped}};
  return r;
}

/// Fraction of sampled M claimed by at least one Omega_n(x).
inline CheckReport check_covering(const OmegaFamily& family, const OnticState& x,
                                  const TupleSampler& sampler, int n_samples, Rng& rng) {
  int covered = 0;
  for (int s = 0; s < n_samples; ++s) {
    const MeasurementTuple m = sampler(rng);
    for (int n = 0; n < family.context_bound; ++n) {
      if (family.membership(n, x, m)) {
        ++covered;
        break;
      }
    }
  }
  const double fraction = n_samples > 0 ? static_cast<double>(covered) / n_samples : 1.0;
  CheckReport r;
  r.check = "covering";
  r.parameters = {{"family", family.label}};
  r.max_residual = 1.0 - fraction;
  r.tolerance = 0.0;
  r.pass = covered == n_samples;
  r.samples = n_samples;
  r.details = {{"covered_fraction", fraction}};
  return r;
}

/// Every adjacent coarse graining of a member M of Omega_n(x) with three or
/// more outcomes must again be a member. Non-members among the samples are
/// skipped.
inline CheckReport check_coarse_grain_closure(const OmegaFamily& family, const OnticState& x,
                                              const TupleSampler& sampler, int n, int n_samples,
                                              Rng& rng) {
  int members = 0;
  int violations = 0;
  Json examples = Json::array();
  for (int s = 0; s < n_samples; ++s) {
    const MeasurementTuple m = sampler(rng);
    if (m.size() < 3 || !family.membership(n, x, m)) continue;
    ++members;
    for (int i = 0; i + 1 < m.size(); ++i) {
      if (!family.membership(n, x, coarse_grain(m, i, i + 1))) {
        ++violations;
        if (examples.size() < 5) examples.push_back({{"ranks", m.ranks()}, {"merged", {i, i + 1}}});
      }
    }
  }
  CheckReport r;
  r.check = "coarse_grain_closure";
  r.parameters = {{"family", family.label}, {"n", n}};
  r.max_residual = violations;
  r.tolerance = 0.0;
  r.pass = violations == 0;
  r.samples = members;
  r.details = {{"violations", violations}, {"examples", examples}};
  return r;
}

/// membership(n, x, M) holds exactly when some declared tau gives n
/// positive context probability.
inline CheckReport check_membership_consistency(const OntologicalModel& model,
                                                const OnticState& x, const TupleSampler& sampler,
                                                int n_probes, Rng& rng) {
  int mismatches = 0;
  for (int s = 0; s < n_probes; ++s) {
    const MeasurementTuple m = sampler(rng);
    std::vector<bool> supported(model.context_bound(), false);
    for (const Context& tau : model.declared_contexts()) {
      for (const auto& [n, w] : model.context_distribution(x, m, tau)) {
        if (w > 0.0 && n >= 0 && n < model.context_bound()) supported[n] = true;
      }
    }
    for (int n = 0; n < model.context_bound(); ++n) {
      if (model.in_omega(n, x, m) != supported[n]) ++mismatches;
    }
  }
  CheckReport r;
  r.check = "membership_consistency";
  r.parameters = {{"model", model.name()}};
  r.max_residual = mismatches;
  r.tolerance = 0.0;
  r.pass = mismatches == 0;
  r.samples = n_probes;
  return r;
}

// ---------------------------------------------------------------------------
// Born reproduction

struct OutcomeStatistic {
  double frequency = 0.0;
  double born = 0.0;
  double z = 0.0;
};

struct BornReproduction {
  std::vector<OutcomeStatistic> outcomes;
  long long trials = 0;
  double max_abs_z = 0.0;
  double z_threshold = 4.0;
  bool pass = false;

  CheckReport to_report() const {
    CheckReport r;
    r.check = "born_reproduction";
    r.parameters = {{"z_threshold", z_threshold}};
    r.max_residual = max_abs_z;
    r.tolerance = z_threshold;
    r.pass = pass;
    r.samples = trials;
    Json rows = Json::array();
    for (const auto& o : outcomes) {
      rows.push_back({{"frequency", o.frequency},
                      {"born", o.born},
                      {"z", CheckReport::finite_or_string(o.z)}});
    }
    r.details = {{"outcomes", rows}};
    return r;
  }
};

/// Binomial z-score of an observed frequency. When the Born value is 0 or 1
/// the model standard error vanishes; the empirical one is used instead, and
/// a frequency contradicting a certain outcome gets an infinite score.
inline double binomial_z(double frequency, double p, long long trials) {
  const double se = std::sqrt(std::max(0.0, p * (1.0 - p)) / trials);
  const double diff = frequency - p;
  if (se > 0.0) return diff / se;
  if (diff == 0.0) return 0.0;
  const double empirical = std::sqrt(frequency * (1.0 - frequency) / trials);
  if (empirical > 0.0) return diff / empirical;
  return diff > 0 ? std::numeric_limits<double>::infinity()
                  : -std::numeric_limits<double>::infinity();
}

/// Monte-Carlo estimate of the outcome distribution: x ~ prepare, n ~ P_c,
/// outcome ~ mu(. | x, n), compared against <psi|E_k|psi>.
inline BornReproduction born_reproduction_check(const OntologicalModel& model, const Vector& psi,
                                                const PrepContext& prep,
                                                const MeasurementTuple& m, const Context& tau,
                                                long long trials, Rng& rng,
                                                double z_threshold = 4.0) {
  if (trials <= 0) throw InvalidArgument("born_reproduction_check: trials must be positive");
  const int k_out = m.size();
  std::vector<long long> counts(k_out, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Responses for the most recent (x, n), reused while the state repeats.
  OnticState cached_x;
  int cached_n = -1;
  std::vector<double> cached;
  for (long long t = 0; t < trials; ++t) {
    const OnticState x = model.prepare(psi, prep, rng);
    const ContextDistribution pc = model.context_distribution(x, m, tau);
    double u = unit(rng);
    int n = pc.empty() ? -1 : pc.back().first;
    for (const auto& [idx, w] : pc) {
      if (u < w) {
        n = idx;
        break;
      }
      u -= w;
    }
    if (n < 0) continue;
    if (n != cached_n || !(x == cached_x)) {
      cached.assign(k_out, 0.0);
      for (int k = 0; k < k_out; ++k) cached[k] = model.response(m[k], x, n);
      cached_x = x;
      cached_n = n;
    }
    double v = unit(rng);
    for (int k = 0; k < k_out; ++k) {
      if (v < cached[k]) {
        ++counts[k];
        break;
      }
      v -= cached[k];
    }
  }

  BornReproduction out;
  out.trials = trials;
  out.z_threshold = z_threshold;
  const Vector unit_psi = psi / psi.norm();
  for (int k = 0; k < k_out; ++k) {
    OutcomeStatistic s;
    s.frequency = static_cast<double>(counts[k]) / trials;
    s.born = std::clamp((unit_psi.adjoint() * m[k].matrix() * unit_psi)(0, 0).real(), 0.0, 1.0);
    s.z = binomial_z(s.frequency, s.born, trials);
    out.max_abs_z = std::max(out.max_abs_z, std::abs(s.z));
    out.outcomes.push_back(s);
  }
  out.pass = out.max_abs_z <= z_threshold;
  return out;
}

// ---------------------------------------------------------------------------
// Affine response given a context

struct AffineContextReport {
  FitResult fit;
  double tolerance = kFitTolerance;
  int measurements = 0;
  bool pass = false;

  CheckReport to_report() const {
    CheckReport r;
    r.check = "affine_given_context";
    r.parameters = {{"measurements", measurements}};
    r.max_residual = fit.rms_residual;
    r.tolerance = tolerance;
    r.pass = pass;
    r.samples = fit.samples;
    r.details = fit.to_json();
    return r;
  }
};

/// Fits mu(E | x, n) = tr(eta E) + K_class over every component of
/// `n_measurements` sampled members of Omega_n(x) with at least three
/// outcomes. Passes when the rms residual is at most `tolerance`.
inline AffineContextReport check_affine_given_context(const OntologicalModel& model,
                                                      const OnticState& x, int n,
                                                      const TupleSampler& sampler,
                                                      int n_measurements, Rng& rng,
                                                      double tolerance = kFitTolerance) {
  std::vector<FitSample> samples;
  int drawn = 0;
  for (int attempts = 0; drawn < n_measurements; ++attempts) {
    if (attempts > 1000 * n_measurements) {
      throw InvalidArgument("check_affine_given_context: sampler rarely hits Omega_n(x)");
    }
    const MeasurementTuple m = sampler(rng);
    if (m.size() < 3 || !model.in_omega(n, x, m)) continue;
    ++drawn;
    for (const auto& e : m) {
      samples.push_back({e, model.response(e, x, n), model.projector_class(e, x, n)});
    }
  }
  AffineContextReport report;
  report.fit = fit_affine(samples);
  report.tolerance = tolerance;
  report.measurements = drawn;
  report.pass = report.fit.rms_residual <= tolerance;
  return report;
}

/// Sampler of members of Omega_n(x) with at least `min_outcomes` outcomes.
inline TupleSampler omega_sampler(const OntologicalModel& model, int n, const OnticState& x,
                                  int min_outcomes = 3) {
  return [&model, n, x, min_outcomes](Rng& rng) {
    auto m = sample_in_omega(model, n, x, rng, min_outcomes);
    if (!m) throw MembershipError(model.name() + ": Omega_n(x) not hit by the sampler");
    return *m;
  };
}

inline TupleSampler measurement_sampler(const OntologicalModel& model, int min_outcomes = 2) {
  return [&model, min_outcomes](Rng& rng) { return model.sample_measurement(rng, min_outcomes); };
}

// ---------------------------------------------------------------------------
// Sequential causality

namespace detail {

/// Common eigenbasis of commuting projectors, from a generic combination.
inline Matrix common_eigenbasis(const SequentialScenario& s, Rng& rng) {
  std::uniform_real_distribution<double> coef(1.0, 2.0);
  Matrix combo = Matrix::Zero(s.dim(), s.dim());
  for (const auto& e : s.effects()) combo += coef(rng) * e.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(combo);
  return eig.eigenvectors();
}

/// Projector onto a random nonempty proper subset of the basis columns.
inline Projector random_diagonal_projector(const Matrix& basis, Rng& rng) {
  const int d = static_cast<int>(basis.cols());
  std::uniform_int_distribution<int> size(1, std::max(1, d - 1));
  std::vector<int> cols(d);
  std::iota(cols.begin(), cols.end(), 0);
  std::shuffle(cols.begin(), cols.end(), rng);
  const int r = size(rng);
  Matrix p = Matrix::Zero(d, d);
  for (int c = 0; c < r; ++c) p += basis.col(cols[c]) * basis.col(cols[c]).adjoint();
  return Projector::assume_valid(p, r);
}

inline double distribution_gap(const ContextDistribution& a, const ContextDistribution& b,
                               int bound) {
  std::vector<double> pa(bound, 0.0);
  std::vector<double> pb(bound, 0.0);
  for (const auto& [n, w] : a) {
    if (n >= 0 && n < bound) pa[n] += w;
  }
  for (const auto& [n, w] : b) {
    if (n >= 0 && n < bound) pb[n] += w;
  }
  double gap = 0.0;
  for (int n = 0; n < bound; ++n) gap = std::max(gap, std::abs(pa[n] - pb[n]));
  return gap;
}

}  // namespace detail

inline constexpr double kCausalityTol = 1e-12;

/// Compares P_c(n_k | x, n_1..n_{k-1}) across scenarios that agree on the
/// first k measurements and differ afterwards, and mu(E_k | x, n) across
/// variations of n_{k+1}, ..., n_M. Both must be unchanged.
inline CheckReport sequential_causality_check(const OntologicalModel& model, const OnticState& x,
                                              const SequentialScenario& scenario,
                                              const Context& tau, int variants, Rng& rng) {
  if (!model.has_sequential()) {
    throw InvalidArgument(model.name() + ": model lacks a sequential interface");
  }
  const int steps = scenario.size();
  const int bound = model.context_bound();
  const Matrix basis = detail::common_eigenbasis(scenario, rng);

  // Every index tuple with entries below the bound; small by construction.
  std::vector<std::vector<int>> tuples{{}};
  for (int k = 0; k < steps; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& t : tuples) {
      for (int n = 0; n < bound; ++n) {
        auto u = t;
        u.push_back(n);
        next.push_back(std::move(u));
      }
    }
    tuples = std::move(next);
  }

  double context_gap = 0.0;
  double response_gap = 0.0;
  for (int k = 0; k < steps; ++k) {
    for (int v = 0; v < variants; ++v) {
      std::vector<Projector> changed = scenario.effects();
      for (int j = k + 1; j < steps; ++j) changed[j] = detail::random_diagonal_projector(basis, rng);
      const SequentialScenario alt = SequentialScenario::make(std::move(changed));
      for (const auto& t : tuples) {
        const std::span<const int> prefix(t.data(), k);
        context_gap = std::max(context_gap,
                               detail::distribution_gap(model.step_context(x, scenario, prefix, tau),
                                                        model.step_context(x, alt, prefix, tau),
                                                        bound));
      }
    }
    for (const auto& t : tuples) {
      const double base = model.step_response(scenario, k, x, t);
      for (const auto& u : tuples) {
        if (!std::equal(t.begin(), t.begin() + k + 1, u.begin())) continue;
        response_gap = std::max(response_gap, std::abs(model.step_response(scenario, k, x, u) - base));
      }
    }
  }
  CheckReport r;
  r.check = "sequential_causality";
  r.parameters = {{"model", model.name()}, {"steps", steps}, {"variants", variants}};
  r.max_residual = std::max(context_gap, response_gap);
  r.tolerance = kCausalityTol;
  r.pass = r.max_residual <= kCausalityTol;
  r.samples = static_cast<long long>(tuples.size());
  r.details = {{"max_context_deviation", context_gap}, {"max_response_deviation", response_gap}};
  return r;
}

/// Commuting scenario of `steps` random projectors diagonal in one
/// Haar-random basis.
inline SequentialScenario random_sequential_scenario(int d, int steps, Rng& rng) {
  const Matrix basis = haar_random_unitary(d, rng);
  std::vector<Projector> effects;
  for (int k = 0; k < steps; ++k) effects.push_back(detail::random_diagonal_projector(basis, rng));
  return SequentialScenario::make(std::move(effects));
}

}  // namespace gleason

#endif  // GLEASON_ONTOLOGY_HPP
