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

// Shipped ontological models and the one-bit singlet simulation.

#ifndef GLEASON_PROTOCOLS_HPP
#define GLEASON_PROTOCOLS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "gleason/hilbert.hpp"
#include "gleason/ontology.hpp"

namespace gleason {

namespace detail {

inline Vector checked_state(const Vector& psi, int d, const char* who) {
  if (psi.size() != d) throw DimensionMismatch(d, static_cast<int>(psi.size()), who);
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw NormalizationError(std::string(who) + ": zero state vector");
  return psi / norm;
}

inline double expectation(const Vector& psi, const Matrix& e) {
  return (psi.adjoint() * e * psi)(0, 0).real();
}

/// Beltrametti-Bugajski callables; fixtures override individual entries.
inline ModelFunctions bb_functions(int d) {
  ModelFunctions f;
  f.name = "bb";
  f.dim = d;
  f.context_bound = 1;
  f.prepare = [d](const Vector& psi, const PrepContext&, Rng&) {
    return OnticState{0, checked_state(psi, d, "bb.prepare")};
  };
  f.context = [d](const OnticState&, const MeasurementTuple& m, const Context&) {
    if (m.dim() != d) throw DimensionMismatch(d, m.dim(), "bb.context");
    return ContextDistribution{{0, 1.0}};
  };
  f.response = [](const Projector& e, const OnticState& x, int) {
    return expectation(x.amplitudes, e.matrix());
  };
  f.in_omega = [d](int n, const OnticState&, const MeasurementTuple& m) {
    return n == 0 && m.dim() == d;
  };
  f.sample_measurement = [d](Rng& rng, int min_outcomes) {
    return random_measurement(d, rng, min_outcomes);
  };
  f.step_context = [](const OnticState&, const SequentialScenario&, std::span<const int>,
                      const Context&) { return ContextDistribution{{0, 1.0}}; };
  f.step_response = [](const SequentialScenario& s, int k, const OnticState& x,
                       std::span<const int>) { return expectation(x.amplitudes, s[k].matrix()); };
  return f;
}

}  // namespace detail

/// Ontic state = quantum state, one context, mu(E | psi, 0) = <psi|E|psi>.
inline ModelPtr bb_model(int d) {
  if (d < 2) throw InvalidArgument("bb_model: d must be >= 2");
  return std::make_shared<FunctionalModel>(detail::bb_functions(d));
}

/// Same model with a sequential lift: n_1 = 0 and n_{k+1} records whether
/// step k produced E_k, so P_c(n_{k+1} | ...) is the Lueders probability of
/// E_k after the recorded outcomes, and mu(E_k | psi, n) is evaluated in the
/// updated state. Inconsistent histories have probability zero and response
/// zero.
inline ModelPtr bb_sequential_model(int d) {
  if (d < 2) throw InvalidArgument("bb_sequential_model: d must be >= 2");
  ModelFunctions f = detail::bb_functions(d);
  f.name = "bb-sequential";
  f.context_bound = 2;
  // Updated state after steps 0 .. upto-1, outcomes read from n[1 .. upto].
  auto updated = [d](const SequentialScenario& s, const Vector& psi, std::span<const int> n,
                     int upto) -> std::optional<Vector> {
    Vector v = psi;
    for (int j = 0; j < upto; ++j) {
      const Matrix& e = s[j].matrix();
      v = n[j + 1] == 1 ? Vector(e * v) : Vector(v - e * v);
      const double norm = v.norm();
      if (norm < 1e-150) return std::nullopt;
      v /= norm;
    }
    (void)d;
    return v;
  };
  f.step_context = [updated](const OnticState& x, const SequentialScenario& s,
                             std::span<const int> prefix, const Context&) {
    const int k = static_cast<int>(prefix.size());
    if (k == 0) return ContextDistribution{{0, 1.0}};
    const auto v = updated(s, x.amplitudes, prefix, k - 1);
    if (!v) return ContextDistribution{{0, 1.0}};
    const double p = std::clamp(detail::expectation(*v, s[k - 1].matrix()), 0.0, 1.0);
    return ContextDistribution{{0, 1.0 - p}, {1, p}};
  };
  f.step_response = [updated](const SequentialScenario& s, int k, const OnticState& x,
                              std::span<const int> n) {
    const auto v = updated(s, x.amplitudes, n, k);
    return v ? detail::expectation(*v, s[k].matrix()) : 0.0;
  };
  return std::make_shared<FunctionalModel>(std::move(f));
}

/// Outcome-deterministic model on the coarse grainings of a fixed basis.
/// x is a basis index drawn with Born weights, there is one context, and
/// mu(E | x, 0) = 1 when E contains basis vector x, else 0. Queries outside
/// the coarse grainings of the basis raise MembershipError. Each projector
/// is its own fit class, so the fitted eta is 0 and K is 0 or 1.
inline ModelPtr deterministic_patch_model(const MeasurementTuple& basis) {
  const int d = basis.dim();
  if (basis.size() != d || !is_complete_tuple(basis)) {
    throw InvalidArgument("deterministic_patch_model: basis must be a complete rank-one tuple");
  }
  if (d > 30) throw InvalidArgument("deterministic_patch_model: dimension above 30");
  Matrix b(d, d);
  for (int k = 0; k < d; ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(basis[k].matrix());
    b.col(k) = eig.eigenvectors().col(d - 1);
  }
  // Bitmask of basis vectors spanned by E, or nothing if E is not a sum of
  // basis projectors.
  auto mask_of = [b, d](const Projector& e) -> std::optional<int> {
    if (e.dim() != d) return std::nullopt;
    int mask = 0;
    Matrix rebuilt = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
      const double w = detail::expectation(b.col(k), e.matrix());
      if (std::abs(w - 1.0) <= 1e-9) {
        mask |= 1 << k;
        rebuilt += b.col(k) * b.col(k).adjoint();
      } else if (std::abs(w) > 1e-9) {
        return std::nullopt;
      }
    }
    if (mask == 0 || (rebuilt - e.matrix()).norm() > 1e-8) return std::nullopt;
    return mask;
  };
  auto member = [mask_of, d](const MeasurementTuple& m) {
    if (m.dim() != d) return false;
    int seen = 0;
    for (const auto& e : m) {
      const auto mask = mask_of(e);
      if (!mask || (seen & *mask) != 0) return false;
      seen |= *mask;
    }
    return seen == (1 << d) - 1;
  };

  ModelFunctions f;
  f.name = "deterministic";
  f.dim = d;
  f.context_bound = 1;
  f.prepare = [b, d](const Vector& psi, const PrepContext&, Rng& rng) {
    const Vector v = detail::checked_state(psi, d, "deterministic.prepare");
    std::vector<double> weights(d);
    for (int k = 0; k < d; ++k) weights[k] = std::norm(b.col(k).dot(v));
    std::discrete_distribution<int> pick(weights.begin(), weights.end());
    return OnticState{pick(rng), Vector()};
  };
  f.context = [member](const OnticState&, const MeasurementTuple& m, const Context&) {
    if (!member(m)) throw MembershipError("deterministic: measurement outside the basis patch");
    return ContextDistribution{{0, 1.0}};
  };
  f.response = [mask_of](const Projector& e, const OnticState& x, int n) {
    if (n != 0) throw MembershipError("deterministic: context index out of range");
    const auto mask = mask_of(e);
    if (!mask) throw MembershipError("deterministic: projector outside the basis patch");
    return ((*mask >> x.label) & 1) ? 1.0 : 0.0;
  };
  f.in_omega = [member](int n, const OnticState&, const MeasurementTuple& m) {
    return n == 0 && member(m);
  };
  f.sample_measurement = [b, d](Rng& rng, int min_outcomes) {
    std::uniform_int_distribution<int> count(std::max(1, min_outcomes), d);
    const std::vector<int> ranks = random_composition(d, count(rng), rng);
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Projector> parts;
    int next = 0;
    for (int r : ranks) {
      Matrix p = Matrix::Zero(d, d);
      for (int i = 0; i < r; ++i, ++next) p += b.col(order[next]) * b.col(order[next]).adjoint();
      parts.push_back(Projector::assume_valid(p, r));
    }
    return MeasurementTuple(std::move(parts));
  };
  f.projector_class = [mask_of](const Projector& e, const OnticState&, int) {
    const auto mask = mask_of(e);
    if (!mask) throw MembershipError("deterministic: projector outside the basis patch");
    return *mask;
  };
  return std::make_shared<FunctionalModel>(std::move(f));
}

/// Computational-basis instance of the deterministic model.
inline ModelPtr deterministic_patch_model(int d) {
  std::vector<Projector> basis;
  for (int k = 0; k < d; ++k) basis.push_back(projector_from_vector(Vector::Unit(d, k)));
  return deterministic_patch_model(MeasurementTuple(std::move(basis)));
}

/// mu(E | psi, 0) = <psi|E|psi>^2: quadratic in E, so not affine.
inline ModelPtr nonaffine_model(int d) {
  ModelFunctions f = detail::bb_functions(d);
  f.name = "nonaffine";
  f.response = [](const Projector& e, const OnticState& x, int) {
    const double p = detail::expectation(x.amplitudes, e.matrix());
    return p * p;
  };
  return std::make_shared<FunctionalModel>(std::move(f));
}

/// mu(E | x, 0) = rank(E) / d regardless of the state. Structurally sound,
/// wrong statistics.
inline ModelPtr uniform_model(int d) {
  ModelFunctions f = detail::bb_functions(d);
  f.name = "uniform";
  f.response = [d](const Projector& e, const OnticState&, int) {
    return static_cast<double>(e.rank()) / d;
  };
  return std::make_shared<FunctionalModel>(std::move(f));
}

// ---------------------------------------------------------------------------
// Fixtures that each break one structural requirement.

/// Context probabilities (0.3, 0.6): the outcome probabilities sum to 0.9.
inline ModelPtr violate_normalization_model(int d) {
  ModelFunctions f = detail::bb_functions(d);
  f.name = "violate-normalization";
  f.context_bound = 2;
  f.context = [](const OnticState&, const MeasurementTuple&, const Context&) {
    return ContextDistribution{{0, 0.3}, {1, 0.6}};
  };
  f.in_omega = [d](int n, const OnticState&, const MeasurementTuple& m) {
    return (n == 0 || n == 1) && m.dim() == d;
  };
  return std::make_shared<FunctionalModel>(std::move(f));
}

/// mu(E | psi, 0) = <psi|E|psi> + 0.05: responses overshoot by 0.05 per outcome.
inline ModelPtr violate_response_model(int d) {
  ModelFunctions f = detail::bb_functions(d);
  f.name = "violate-response";
  f.response = [](const Projector& e, const OnticState& x, int) {
    return detail::expectation(x.amplitudes, e.matrix()) + 0.05;
  };
  return std::make_shared<FunctionalModel>(std::move(f));
}

/// Only all-rank-one measurements belong to any Omega_n.
inline ModelPtr violate_covering_model(int d) {
  ModelFunctions f = detail::bb_functions(d);
  f.name = "violate-covering";
  auto rank_one = [d](const MeasurementTuple& m) {
    if (m.dim() != d) return false;
    for (const auto& e : m) {
      if (e.rank() != 1) return false;
    }
    return true;
  };
  f.context = [rank_one](const OnticState&, const MeasurementTuple& m, const Context&) {
    return rank_one(m) ? ContextDistribution{{0, 1.0}} : ContextDistribution{};
  };
  f.in_omega = [rank_one](int n, const OnticState&, const MeasurementTuple& m) {
    return n == 0 && rank_one(m);
  };
  return std::make_shared<FunctionalModel>(std::move(f));
}

/// n = 0 when the first outcome has rank one, else n = 1. Covers everything,
/// but merging the first two outcomes moves a member of Omega_0 out of it.
inline ModelPtr violate_closure_model(int d) {
  ModelFunctions f = detail::bb_functions(d);
  f.name = "violate-closure";
  f.context_bound = 2;
  auto index = [](const MeasurementTuple& m) { return m[0].rank() == 1 ? 0 : 1; };
  f.context = [index](const OnticState&, const MeasurementTuple& m, const Context&) {
    return ContextDistribution{{index(m), 1.0}};
  };
  f.in_omega = [index, d](int n, const OnticState&, const MeasurementTuple& m) {
    return m.dim() == d && n == index(m);
  };
  return std::make_shared<FunctionalModel>(std::move(f));
}

/// Sequential lift whose first context index is drawn with the probability
/// of the second measurement, so step 1 depends on the future.
inline ModelPtr violate_causality_model(int d) {
  auto base = bb_sequential_model(d);
  ModelFunctions f = detail::bb_functions(d);
  f.name = "violate-causality";
  f.context_bound = 2;
  f.step_context = [base](const OnticState& x, const SequentialScenario& s,
                          std::span<const int> prefix, const Context& tau) {
    if (!prefix.empty() || s.size() < 2) return base->step_context(x, s, prefix, tau);
    const double q = std::clamp(detail::expectation(x.amplitudes, s[1].matrix()), 0.0, 1.0);
    return ContextDistribution{{0, 1.0 - q}, {1, q}};
  };
  f.step_response = [base](const SequentialScenario& s, int k, const OnticState& x,
                           std::span<const int> n) { return base->step_response(s, k, x, n); };
  return std::make_shared<FunctionalModel>(std::move(f));
}

inline const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names{
      "bb", "bb-sequential", "deterministic", "nonaffine", "uniform",
      "violate-normalization", "violate-response", "violate-covering", "violate-closure",
      "violate-causality"};
  return names;
}

inline ModelPtr make_model(const std::string& name, int d) {
  if (name == "bb") return bb_model(d);
  if (name == "bb-sequential") return bb_sequential_model(d);
  if (name == "deterministic") return deterministic_patch_model(d);
  if (name == "nonaffine") return nonaffine_model(d);
  if (name == "uniform") return uniform_model(d);
  if (name == "violate-normalization") return violate_normalization_model(d);
  if (name == "violate-response") return violate_response_model(d);
  if (name == "violate-covering") return violate_covering_model(d);
  if (name == "violate-closure") return violate_closure_model(d);
  if (name == "violate-causality") return violate_causality_model(d);
  throw InvalidArgument("unknown model '" + name + "'");
}

// ---------------------------------------------------------------------------
// One-bit singlet simulation

/// Unit measurement direction.
class BlochVector {
 public:
  /// Normalizes `v`; zero or non-finite input is rejected.
  static BlochVector make(const Vec3& v) {
    const double n = v.norm();
    if (!std::isfinite(n) || n == 0.0) throw DomainError("BlochVector: zero-norm direction");
    return BlochVector(v / n);
  }

  const Vec3& vec() const { return v_; }
  double x() const { return v_(0); }
  double y() const { return v_(1); }
  double z() const { return v_(2); }

 private:
  explicit BlochVector(Vec3 v) : v_(std::move(v)) {}
  Vec3 v_;
};

/// One round. The communicated bit is a single bool.
struct EPRSample {
  int outcome_a = 0;
  int outcome_b = 0;
  bool communicated_bit = false;
  Vec3 lambda1 = Vec3::Zero();
  Vec3 lambda2 = Vec3::Zero();
};

inline int sign_of(double v) { return v >= 0.0 ? 1 : -1; }

/// Alice: A = -sgn(a.l1), sends bit = (1 - sgn(a.l1) sgn(a.l2)) / 2.
/// Bob: c' = 1 - 2 bit, B = sgn(b.(l1 + c' l2)). sgn(0) = +1.
inline EPRSample toner_bacon_round(const BlochVector& a, const BlochVector& b, const Vec3& lambda1,
                                   const Vec3& lambda2) {
  for (const Vec3* l : {&lambda1, &lambda2}) {
    const double n = l->norm();
    if (!std::isfinite(n) || n == 0.0) throw DomainError("toner_bacon_round: zero-norm lambda");
    if (std::abs(n - 1.0) > 1e-9) throw NormalizationError("toner_bacon_round: lambda is not unit");
  }
  EPRSample s;
  s.lambda1 = lambda1;
  s.lambda2 = lambda2;
  const int s1 = sign_of(a.vec().dot(lambda1));
  const int s2 = sign_of(a.vec().dot(lambda2));
  s.outcome_a = -s1;
  s.communicated_bit = s1 * s2 == -1;
  const int c = 1 - 2 * static_cast<int>(s.communicated_bit);
  s.outcome_b = sign_of(b.vec().dot(lambda1 + c * lambda2));
  return s;
}

/// Uniform point on the unit sphere.
inline Vec3 random_unit_vec3(Rng& rng) {
  std::normal_distribution<double> normal;
  for (;;) {
    Vec3 v(normal(rng), normal(rng), normal(rng));
    const double n = v.norm();
    if (n > 1e-12) return v / n;
  }
}

struct CorrelationEstimate {
  double mean = 0.0;
  double stderr_mean = 0.0;
  double marginal_a = 0.0;
  double marginal_b = 0.0;
  double stderr_a = 0.0;
  double stderr_b = 0.0;
  long long rounds = 0;
  std::uint64_t seed = 0;
  int workers = 1;
};

/// Runs `rounds` independent rounds split into contiguous chunks, one per
/// worker, worker w drawing from stream (seed, w). Integer tallies make the
/// result independent of thread scheduling.
inline CorrelationEstimate estimate_correlation(const BlochVector& a, const BlochVector& b,
                                                long long rounds, std::uint64_t seed,
                                                int workers = 1) {
  if (rounds <= 0) throw InvalidArgument("estimate_correlation: rounds must be positive");
  if (workers < 1) throw InvalidArgument("estimate_correlation: workers must be positive");
  struct Tally {
    long long ab = 0, a = 0, b = 0;
  };
  std::vector<Tally> tallies(workers);
  auto run = [&](int w) {
    const long long base = rounds / workers;
    const long long count = base + (w < rounds % workers ? 1 : 0);
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(w));
    Tally t;
    for (long long i = 0; i < count; ++i) {
      const Vec3 l1 = random_unit_vec3(rng);
      const Vec3 l2 = random_unit_vec3(rng);
      const EPRSample s = toner_bacon_round(a, b, l1, l2);
      t.ab += s.outcome_a * s.outcome_b;
      t.a += s.outcome_a;
      t.b += s.outcome_b;
    }
    tallies[w] = t;
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }
  Tally total;
  for (const auto& t : tallies) {
    total.ab += t.ab;
    total.a += t.a;
    total.b += t.b;
  }
  CorrelationEstimate e;
  const double n = static_cast<double>(rounds);
  e.rounds = rounds;
  e.seed = seed;
  e.workers = workers;
  e.mean = total.ab / n;
  e.marginal_a = total.a / n;
  e.marginal_b = total.b / n;
  e.stderr_mean = std::sqrt(std::max(0.0, 1.0 - e.mean * e.mean) / n);
  e.stderr_a = std::sqrt(std::max(0.0, 1.0 - e.marginal_a * e.marginal_a) / n);
  e.stderr_b = std::sqrt(std::max(0.0, 1.0 - e.marginal_b * e.marginal_b) / n);
  return e;
}

namespace detail {

inline Matrix spin_projector(const Vec3& n, int sign) {
  Matrix sigma(2, 2);
  sigma << Complex(n(2), 0), Complex(n(0), -n(1)), Complex(n(0), n(1)), Complex(-n(2), 0);
  return 0.5 * (Matrix::Identity(2, 2) + static_cast<double>(sign) * sigma);
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace detail

/// E[AB] on the singlet, sum over s, t of s t tr(rho P_a^s (x) P_b^t).
inline double singlet_born_correlation(const BlochVector& a, const BlochVector& b) {
  Vector psi = Vector::Zero(4);
  psi(1) = 1.0 / std::numbers::sqrt2;
  psi(2) = -1.0 / std::numbers::sqrt2;
  const Matrix rho = psi * psi.adjoint();
  double e = 0.0;
  for (int s : {1, -1}) {
    for (int t : {1, -1}) {
      const Matrix joint =
          detail::kron(detail::spin_projector(a.vec(), s), detail::spin_projector(b.vec(), t));
      e += s * t * trace_product(rho, joint);
    }
  }
  return e;
}

/// `count` direction pairs: a on a spherical spiral, b obtained from a by a
/// rotation through angles spread evenly over [0, pi].
inline std::vector<std::pair<BlochVector, BlochVector>> direction_grid(int count) {
  std::vector<std::pair<BlochVector, BlochVector>> grid;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = count > 1 ? 1.0 - 2.0 * (i + 0.5) / count : 0.0;
    const double r = std::sqrt(1.0 - z * z);
    const Vec3 a(r * std::cos(golden * i), r * std::sin(golden * i), z);
    Vec3 axis = a.cross(Vec3::UnitX());
    if (axis.norm() < 0.1) axis = a.cross(Vec3::UnitY());
    axis.normalize();
    const double theta = count > 1 ? std::numbers::pi * i / (count - 1) : 0.0;
    const Vec3 b = a * std::cos(theta) + axis.cross(a) * std::sin(theta);
    grid.emplace_back(BlochVector::make(a), BlochVector::make(b));
  }
  return grid;
}

inline constexpr const char* kCorrelationCsvHeader = "a_x,a_y,a_z,b_x,b_y,b_z,N,mean,stderr,seed";

inline void write_correlation_csv_row(std::ostream& os, const BlochVector& a, const BlochVector& b,
                                      const CorrelationEstimate& e) {
  os.precision(17);
  os << a.x() << ',' << a.y() << ',' << a.z() << ',' << b.x() << ',' << b.y() << ',' << b.z()
     << ',' << e.rounds << ',' << e.mean << ',' << e.stderr_mean << ',' << e.seed << '\n';
}

}  // namespace gleason

#endif  // GLEASON_PROTOCOLS_HPP
