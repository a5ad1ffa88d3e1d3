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

// Numerical verification of the local Gleason-type statements:
//
//  * verify_lemma1: on sampled orthonormal pairs, additivity of a frame
//    function forces vanishing third derivatives; checked by finite
//    differences on real 3-D sections through each pair.
//  * fit_affine: least-squares recovery of mu(E) = tr(eta E) + K_class over
//    a generalized Gell-Mann basis, with explicit detection of
//    unidentifiable directions.
//  * verify_patch_consistency: per-patch constants must agree wherever two
//    patches overlap.
//  * reconstruct_density: the global case, rho = eta + K 1.

#ifndef GLEASON_VERIFICATION_HPP
#define GLEASON_VERIFICATION_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/QR>

#include "gleason/finite_difference.hpp"
#include "gleason/hilbert.hpp"
#include "gleason/measures.hpp"
#include "gleason/open_set.hpp"
#include "gleason/report.hpp"

namespace gleason {

/// Generalized Gell-Mann matrices: d^2 - 1 traceless Hermitian matrices with
/// tr(G_a G_b) = 2 delta_ab. Order: symmetric, antisymmetric, diagonal.
inline std::vector<Matrix> gell_mann_basis(int d) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(d) * d - 1);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix m = Matrix::Zero(d, d);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      basis.push_back(std::move(m));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix m = Matrix::Zero(d, d);
      m(j, k) = Complex(0.0, -1.0);
      m(k, j) = Complex(0.0, 1.0);
      basis.push_back(std::move(m));
    }
  }
  for (int l = 1; l < d; ++l) {
    Matrix m = Matrix::Zero(d, d);
    const double norm = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) m(j, j) = norm;
    m(l, l) = -l * norm;
    basis.push_back(std::move(m));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Frame-function differential identities

struct Lemma1Report {
  double max_rotation_residual = 0.0;
  double max_third_derivative = 0.0;
  double max_radial_residual = 0.0;
  double tolerance = 0.0;
  double step = 0.0;
  int samples = 0;
  bool pass = false;

  double max_residual() const {
    return std::max({max_rotation_residual, max_third_derivative, max_radial_residual});
  }

  CheckReport to_report() const {
    CheckReport r;
    r.check = "lemma1_third_derivatives";
    r.parameters = {{"h", step}, {"tolerance_constant", tolerance / (step * step)}};
    r.max_residual = max_residual();
    r.tolerance = tolerance;
    r.pass = pass;
    r.samples = samples;
    r.details = {{"max_rotation_residual", max_rotation_residual},
                 {"max_third_derivative", max_third_derivative},
                 {"max_radial_residual", max_radial_residual},
                 {"regularity_assumption", "pointwise smooth (distributional derivatives not checked)"}};
    return r;
  }
};

/// For each sampled pair (phi1, phi2), builds the real section spanned by
/// phi1, phi2 and a random unit vector orthogonal to both, then measures the
/// rotation identity at (e1, e2), the third-derivative tensor at e1 and e2,
/// and the radial constraint. Passes when all stay below tau(h) = c h^2.
inline Lemma1Report verify_lemma1(const FrameFunction& f, const OpenSet<OrthoPair>& pairs,
                                  int n_samples, double h, Rng& rng,
                                  double c = kFdConstant) {
  if (n_samples <= 0) throw InvalidArgument("verify_lemma1: empty sample set");
  if (f.dim() < 3) throw InvalidArgument("verify_lemma1: dimension must be at least 3");
  Lemma1Report report;
  report.step = h;
  report.tolerance = fd_tolerance(h, c);
  report.samples = n_samples;
  const Vec3 e1 = Vec3::UnitX();
  const Vec3 e2 = Vec3::UnitY();
  std::normal_distribution<double> gauss;
  for (int s = 0; s < n_samples; ++s) {
    const OrthoPair p = pairs.sample(rng);
    const std::vector<Vector> span{p.first, p.second};
    const auto complement = orthogonal_complement(span, f.dim());
    Vector chi = Vector::Zero(f.dim());
    for (const auto& b : complement) chi += gauss(rng) * b;
    chi.normalize();
    const RealSection section = RealSection::make(p.first, p.second, chi);
    const RealFunction3 g = restrict_to_section(f, section);

    report.max_rotation_residual = std::max(
        report.max_rotation_residual, std::abs(rotation_identity_residual(g, e1, e2, h)));
    for (const Vec3& at : {e1, e2}) {
      report.max_third_derivative =
          std::max(report.max_third_derivative, third_derivative_tensor(g, at, h).max_abs());
      report.max_radial_residual =
          std::max(report.max_radial_residual, std::abs(radial_constraint_residual(g, at, h)));
    }
  }
  report.pass = report.max_residual() <= report.tolerance;
  return report;
}

// ---------------------------------------------------------------------------
// Affine fit

/// One observation mu(E) = value, attributed to constant class `class_id`.
struct FitSample {
  Projector projector;
  double value = 0.0;
  int class_id = 0;
};

struct FitOptions {
  /// Relative pivot threshold of the rank-revealing QR.
  double rank_tol = 1e-10;
  /// Largest residual accepted for the constant-only model when the design
  /// is rank deficient.
  double degenerate_tol = 1e-10;
};

struct FitResult {
  Matrix eta;                         // traceless Hermitian
  std::map<int, double> constants;    // class id -> K
  std::map<int, int> class_ranks;     // class id -> rank of its projectors
  double rms_residual = 0.0;
  double max_residual = 0.0;
  int samples = 0;
  int null_space_dim = 0;             // nonzero only for degenerate fits
  bool degenerate = false;            // eta fixed to 0, constants only

  double predict(const Projector& e, int class_id) const {
    auto it = constants.find(class_id);
    if (it == constants.end()) {
      throw DomainError("FitResult: unknown class " + std::to_string(class_id));
    }
    return trace_product(eta, e.matrix()) + it->second;
  }

  /// Valid when every class id equals its rank.
  AffineMeasure to_affine() const {
    for (const auto& [id, rank] : class_ranks) {
      if (id != rank) throw InvalidArgument("FitResult: classes are not rank classes");
    }
    return AffineMeasure::normalized(eta, constants);
  }

  Json to_json() const {
    Json k = Json::object();
    for (const auto& [id, v] : constants) k[std::to_string(id)] = v;
    Json ranks = Json::object();
    for (const auto& [id, r] : class_ranks) ranks[std::to_string(id)] = r;
    return {{"eta", matrix_to_json(eta)},
            {"constants", k},
            {"class_ranks", ranks},
            {"rms_residual", rms_residual},
            {"max_residual", max_residual},
            {"samples", samples},
            {"degenerate", degenerate},
            {"null_space_dim", null_space_dim}};
  }
};

/// Least squares over the traceless Hermitian basis plus one indicator
/// column per class. A rank-deficient design is accepted only when the data
/// are constant on every class (then eta = 0); otherwise UnderdeterminedError
/// reports the null-space dimension.
inline FitResult fit_affine(std::span<const FitSample> samples, const FitOptions& options = {}) {
  if (samples.empty()) throw InvalidArgument("fit_affine: no samples");
  const int d = samples.front().projector.dim();
  std::map<int, int> column_of;
  FitResult result;
  for (const auto& s : samples) {
    if (s.projector.dim() != d) throw DimensionMismatch(d, s.projector.dim(), "fit_affine");
    auto [it, inserted] = result.class_ranks.emplace(s.class_id, s.projector.rank());
    if (!inserted && it->second != s.projector.rank()) {
      throw InvalidArgument("fit_affine: class " + std::to_string(s.class_id) +
                            " mixes projector ranks");
    }
  }
  const auto basis = gell_mann_basis(d);
  const int n_basis = static_cast<int>(basis.size());
  for (const auto& [id, rank] : result.class_ranks) {
    const int col = n_basis + static_cast<int>(column_of.size());
    column_of.emplace(id, col);
  }
  const int n = static_cast<int>(samples.size());
  const int p = n_basis + static_cast<int>(column_of.size());

  RealMatrix a = RealMatrix::Zero(n, p);
  RealVector b(n);
  for (int row = 0; row < n; ++row) {
    const auto& s = samples[row];
    for (int k = 0; k < n_basis; ++k) a(row, k) = trace_product(basis[k], s.projector.matrix());
    a(row, column_of.at(s.class_id)) = 1.0;
    b(row) = s.value;
  }
  result.samples = n;

  Eigen::ColPivHouseholderQR<RealMatrix> qr(a);
  qr.setThreshold(options.rank_tol);
  const int rank = static_cast<int>(qr.rank());

  RealVector x = RealVector::Zero(p);
  if (rank < p) {
    // Constant-only model: K_c is the class mean.
    std::map<int, std::pair<double, int>> sums;
    for (const auto& s : samples) {
      auto& [sum, count] = sums[s.class_id];
      sum += s.value;
      ++count;
    }
    for (const auto& [id, sc] : sums) x(column_of.at(id)) = sc.first / sc.second;
    const double worst = (a * x - b).cwiseAbs().maxCoeff();
    if (worst > options.degenerate_tol) {
      throw UnderdeterminedError(p - rank, "design rank " + std::to_string(rank) + " of " +
                                               std::to_string(p) + " columns");
    }
    result.degenerate = true;
    result.null_space_dim = p - rank;
  } else {
    x = qr.solve(b);
  }

  Matrix eta = Matrix::Zero(d, d);
  for (int k = 0; k < n_basis; ++k) eta += x(k) * basis[k];
  result.eta = hermitian_part(eta);
  for (const auto& [id, col] : column_of) result.constants[id] = x(col);
  const RealVector r = a * x - b;
  result.rms_residual = std::sqrt(r.squaredNorm() / n);
  result.max_residual = r.cwiseAbs().maxCoeff();
  return result;
}

/// Rank-class form: each sample's class is its projector rank, which must be
/// one of `rank_classes`.
inline FitResult fit_affine(std::span<const std::pair<Projector, double>> samples,
                            std::span<const int> rank_classes,
                            const FitOptions& options = {}) {
  std::vector<FitSample> tagged;
  tagged.reserve(samples.size());
  for (const auto& [e, value] : samples) {
    if (std::find(rank_classes.begin(), rank_classes.end(), e.rank()) == rank_classes.end()) {
      throw InvalidArgument("fit_affine: rank " + std::to_string(e.rank()) +
                            " is not a declared rank class");
    }
    tagged.push_back({e, value, e.rank()});
  }
  return fit_affine(tagged, options);
}

/// Fit tolerance used by the command-line suites and model checks.
inline constexpr double kFitTolerance = 1e-8;

inline CheckReport fit_report(const FitResult& fit, double tolerance = kFitTolerance) {
  CheckReport r;
  r.check = "affine_fit";
  r.max_residual = fit.rms_residual;
  r.tolerance = tolerance;
  r.pass = fit.rms_residual <= tolerance;
  r.samples = fit.samples;
  r.details = fit.to_json();
  return r;
}

// ---------------------------------------------------------------------------
// Patch consistency

struct PatchPairVerdict {
  enum class Kind { NoOverlap, OverlapConsistent, OverlapViolation };

  int first = 0;
  int second = 0;
  int overlap_samples = 0;
  bool ranks_equal = false;
  double constant_gap = 0.0;
  bool constants_equal = false;
  Kind kind = Kind::NoOverlap;

  std::string describe() const {
    switch (kind) {
      case Kind::NoOverlap:
        return constants_equal ? "no overlap, constants equal, consistent with theorem"
                               : "no overlap, constants differ, consistent with theorem";
      case Kind::OverlapConsistent:
        return "overlap with equal K: consistent with theorem";
      case Kind::OverlapViolation:
        return "overlap with unequal K: hypothesis violation detected";
    }
    return "";
  }
};

struct PatchReport {
  std::vector<FitResult> patch_fits;
  FitResult joint_fit;
  std::vector<PatchPairVerdict> pairs;
  double tolerance = 0.0;
  bool pass = false;

  CheckReport to_report() const {
    CheckReport r;
    r.check = "patch_consistency";
    r.tolerance = tolerance;
    r.pass = pass;
    r.samples = joint_fit.samples;
    double worst = 0.0;
    Json verdicts = Json::array();
    for (const auto& p : pairs) {
      if (p.overlap_samples > 0) worst = std::max(worst, p.constant_gap);
      verdicts.push_back({{"patches", {p.first, p.second}},
                          {"overlap_samples", p.overlap_samples},
                          {"ranks_equal", p.ranks_equal},
                          {"constant_gap", p.constant_gap},
                          {"verdict", p.describe()}});
    }
    r.max_residual = worst;
    r.details = {{"pairs", verdicts}, {"joint_fit", joint_fit.to_json()}};
    return r;
  }
};

/// Samples each patch, fits each alone and all jointly (shared eta, one
/// constant per patch), and for every patch pair decides whether the
/// samples witness an overlap. Overlapping patches must agree on the
/// constant within `tol`.
inline PatchReport verify_patch_consistency(const Measure& mu,
                                            std::span<const OpenSet<Projector>> patches,
                                            int samples_per_patch, Rng& rng,
                                            double tol = kFitTolerance) {
  if (patches.size() < 2) throw InvalidArgument("verify_patch_consistency: need two patches");
  if (samples_per_patch <= 0) throw InvalidArgument("verify_patch_consistency: empty sample set");
  std::vector<std::vector<FitSample>> per_patch(patches.size());
  std::vector<FitSample> joint;
  for (std::size_t i = 0; i < patches.size(); ++i) {
    for (int s = 0; s < samples_per_patch; ++s) {
      Projector e = patches[i].sample(rng);
      const double v = mu(e);
      per_patch[i].push_back({e, v, static_cast<int>(i)});
      joint.push_back({std::move(e), v, static_cast<int>(i)});
    }
  }
  PatchReport report;
  report.tolerance = tol;
  for (const auto& samples : per_patch) report.patch_fits.push_back(fit_affine(samples));
  report.joint_fit = fit_affine(joint);

  report.pass = true;
  for (std::size_t i = 0; i < patches.size(); ++i) {
    for (std::size_t j = i + 1; j < patches.size(); ++j) {
      PatchPairVerdict v;
      v.first = static_cast<int>(i);
      v.second = static_cast<int>(j);
      for (const auto& s : per_patch[i]) v.overlap_samples += patches[j].contains(s.projector);
      for (const auto& s : per_patch[j]) v.overlap_samples += patches[i].contains(s.projector);
      v.ranks_equal = per_patch[i].front().projector.rank() == per_patch[j].front().projector.rank();
      v.constant_gap = std::abs(report.joint_fit.constants.at(v.first) -
                                report.joint_fit.constants.at(v.second));
      v.constants_equal = v.ranks_equal && v.constant_gap <= tol;
      if (v.overlap_samples == 0) {
        v.kind = PatchPairVerdict::Kind::NoOverlap;
      } else if (v.constants_equal) {
        v.kind = PatchPairVerdict::Kind::OverlapConsistent;
      } else {
        v.kind = PatchPairVerdict::Kind::OverlapViolation;
        report.pass = false;
      }
      report.pairs.push_back(v);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Global reconstruction

/// Fits mu over Haar-random rank-`rank` projectors and returns
/// rho = eta + (K / rank) 1. Throws NotAStateError when rho has trace away
/// from 1 or eigenvalues below -eig_tol.
inline DensityOperator reconstruct_density(const Measure& mu, Rng& rng, int n_samples = 0,
                                           int rank = 1, double trace_tol = 1e-9,
                                           double eig_tol = 1e-8) {
  const int d = mu.dim();
  if (d < 3) throw InvalidArgument("reconstruct_density: dimension must be at least 3");
  if (rank < 1 || rank >= d) throw InvalidArgument("reconstruct_density: rank out of range");
  if (n_samples <= 0) n_samples = 3 * d * d;
  const OpenSet<Projector> all = all_projectors(d, rank);
  std::vector<FitSample> samples;
  samples.reserve(n_samples);
  for (int s = 0; s < n_samples; ++s) {
    Projector e = all.sample(rng);
    const double v = mu(e);
    samples.push_back({std::move(e), v, rank});
  }
  const FitResult fit = fit_affine(samples);
  const Matrix rho = fit.eta + (fit.constants.at(rank) / rank) * identity_matrix(d);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  const double tr = rho.trace().real();
  if (min_eig < -eig_tol || std::abs(tr - 1.0) > trace_tol) throw NotAStateError(min_eig, tr);
  return DensityOperator::make(rho, trace_tol, eig_tol);
}

// ---------------------------------------------------------------------------
// Pair form versus complete-triple form

struct EquivalenceReport {
  FitResult pair_fit;       // classes 0, 1 over (E1, E2)
  FitResult completed_fit;  // classes 0, 1, 2 over (E1, E2, 1 - E1 - E2)
  double eta_difference = 0.0;
};

/// Samples incomplete pairs (E1, E2) of ranks r1, r2, completes each with
/// E3 = 1 - E1 - E2 and mu(E3) := 1 - mu(E1) - mu(E2), and fits both forms.
/// For a pair-additive measure the two traceless parts coincide.
inline EquivalenceReport theorem_equivalence_check(const Measure& mu, int r1, int r2,
                                                   int n_samples, Rng& rng) {
  const int d = mu.dim();
  if (r1 < 1 || r2 < 1 || r1 + r2 >= d) {
    throw InvalidArgument("theorem_equivalence_check: need r1 + r2 < d");
  }
  const std::vector<int> ranks{r1, r2, d - r1 - r2};
  std::vector<FitSample> pairs;
  std::vector<FitSample> completed;
  for (int s = 0; s < n_samples; ++s) {
    const MeasurementTuple m = random_complete_tuple(d, ranks, rng);
    const double v1 = mu(m[0]);
    const double v2 = mu(m[1]);
    pairs.push_back({m[0], v1, 0});
    pairs.push_back({m[1], v2, 1});
    completed.push_back({m[0], v1, 0});
    completed.push_back({m[1], v2, 1});
    completed.push_back({m[2], 1.0 - v1 - v2, 2});
  }
  EquivalenceReport report;
  report.pair_fit = fit_affine(pairs);
  report.completed_fit = fit_affine(completed);
  report.eta_difference = (report.pair_fit.eta - report.completed_fit.eta).norm();
  return report;
}

}  // namespace gleason

#endif  // GLEASON_VERIFICATION_HPP
