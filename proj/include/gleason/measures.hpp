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

// Probability measures over projectors and frame functions over vectors.

#ifndef GLEASON_MEASURES_HPP
#define GLEASON_MEASURES_HPP

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gleason/hilbert.hpp"

namespace gleason {

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityOperator {
 public:
  static DensityOperator make(Matrix rho, double trace_tol = 1e-12,
                              double eig_tol = 1e-10) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
      throw InvalidArgument("density operator must be square");
    }
    if (!is_hermitian(rho, trace_tol)) {
      throw InvalidArgument("density operator is not Hermitian");
    }
    rho = hermitian_part(rho);
    const double tr = rho.trace().real();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho, Eigen::EigenvaluesOnly);
    const double min_eig = eig.eigenvalues().minCoeff();
    if (std::abs(tr - 1.0) > trace_tol || min_eig < -eig_tol) {
      throw NotAStateError(min_eig, tr);
    }
    return DensityOperator(std::move(rho));
  }

  const Matrix& matrix() const { return rho_; }
  int dim() const { return static_cast<int>(rho_.rows()); }

 private:
  explicit DensityOperator(Matrix rho) : rho_(std::move(rho)) {}
  Matrix rho_;
};

/// Hilbert-Schmidt random state G G^dagger / tr(G G^dagger).
inline DensityOperator random_density_operator(int d, Rng& rng) {
  Matrix g(d, d);
  for (int c = 0; c < d; ++c) g.col(c) = complex_gaussian_vector(d, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator::make(hermitian_part(rho));
}

inline DensityOperator pure_state(const Vector& psi) {
  return DensityOperator::make(projector_from_vector(psi).matrix());
}

/// Born probability tr(E rho).
inline double born_measure(const DensityOperator& rho, const Projector& e) {
  if (rho.dim() != e.dim()) throw DimensionMismatch(rho.dim(), e.dim(), "born_measure");
  return trace_product(e.matrix(), rho.matrix());
}

/// Evaluable map from projectors to reals with an optional partial domain.
/// Outside the domain evaluation is an error, never an implicit zero.
class Measure {
 public:
  using Evaluator = std::function<double(const Projector&)>;
  using Domain = std::function<bool(const Projector&)>;

  Measure(int dim, Evaluator eval, std::string name, Domain domain = {},
          std::optional<Projector> witness = std::nullopt)
      : dim_(dim),
        eval_(std::move(eval)),
        domain_(std::move(domain)),
        witness_(std::move(witness)),
        name_(std::move(name)) {}

  double operator()(const Projector& e) const {
    if (e.dim() != dim_) throw DimensionMismatch(dim_, e.dim(), name_);
    if (domain_ && !domain_(e)) {
      throw DomainError(name_ + ": projector outside the declared domain");
    }
    return eval_(e);
  }

  bool in_domain(const Projector& e) const {
    return e.dim() == dim_ && (!domain_ || domain_(e));
  }

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::optional<Projector>& witness() const { return witness_; }

 private:
  int dim_;
  Evaluator eval_;
  Domain domain_;
  std::optional<Projector> witness_;
  std::string name_;
};

/// Function on C^d, typically the radial extension of mu(phi phi^dagger).
class FrameFunction {
 public:
  using Evaluator = std::function<double(const Vector&)>;

  FrameFunction(int dim, Evaluator eval, std::string name)
      : dim_(dim), eval_(std::move(eval)), name_(std::move(name)) {}

  double operator()(const Vector& phi) const {
    if (phi.size() != dim_) {
      throw DimensionMismatch(dim_, static_cast<int>(phi.size()), name_);
    }
    return eval_(phi);
  }

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }

 private:
  int dim_;
  Evaluator eval_;
  std::string name_;
};

/// Degree-2 homogeneous extension f(phi / |phi|) |phi|^2 of a function given
/// on the unit sphere. Undefined at the origin.
inline FrameFunction radial_extension(int dim,
                                      std::function<double(const Vector&)> on_sphere,
                                      std::string name = "frame") {
  auto eval = [f = std::move(on_sphere)](const Vector& phi) {
    const double n2 = phi.squaredNorm();
    if (!(n2 > 0.0)) throw DomainError("frame function undefined at the origin");
    return f(phi / std::sqrt(n2)) * n2;
  };
  return FrameFunction(dim, std::move(eval), std::move(name));
}

/// f(phi) = mu(phi phi^dagger), radially extended.
inline FrameFunction frame_function(const Measure& mu) {
  return radial_extension(
      mu.dim(),
      [mu](const Vector& unit) {
        return mu(Projector::assume_valid(unit * unit.adjoint(), 1));
      },
      "frame(" + mu.name() + ")");
}

inline Measure make_born_measure(const DensityOperator& rho) {
  return Measure(rho.dim(),
                 [rho](const Projector& e) { return born_measure(rho, e); },
                 "born");
}

/// mu(E) = sum_k c_k tr(E sigma)^k for Hermitian sigma.
inline Measure make_polynomial_measure(const Matrix& sigma,
                                       std::vector<double> coefficients,
                                       std::string name = "polynomial") {
  if (!is_hermitian(sigma)) throw InvalidArgument("polynomial measure: sigma must be Hermitian");
  const int d = static_cast<int>(sigma.rows());
  return Measure(
      d,
      [sigma, c = std::move(coefficients)](const Projector& e) {
        const double t = trace_product(e.matrix(), sigma);
        double value = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) value = value * t + *it;
        return value;
      },
      std::move(name));
}

/// mu(E) = tr(E rho)^2, the standard non-additive counterexample.
inline Measure make_quadratic_measure(const Matrix& rho) {
  return make_polynomial_measure(rho, {0.0, 0.0, 1.0}, "quadratic");
}

/// Affine data in an arbitrary gauge: mu(E) = tr(eta E) + K[rank(E)].
struct AffineParameters {
  Matrix eta;
  std::map<int, double> constants;
};

/// tr(eta E) + K_{class(rank E)} with eta traceless (canonical gauge).
class AffineMeasure {
 public:
  /// Moves tr(eta)/d times the identity out of eta into the constants.
  static AffineMeasure normalized(const Matrix& eta,
                                  std::map<int, double> constants) {
    if (!is_hermitian(eta)) throw InvalidArgument("affine measure: eta must be Hermitian");
    const int d = static_cast<int>(eta.rows());
    const double lambda = eta.trace().real() / d;
    Matrix traceless = hermitian_part(eta) - lambda * identity_matrix(d);
    for (auto& [rank, k] : constants) {
      if (rank < 1 || rank > d) throw InvalidArgument("affine measure: rank class out of range");
      k += lambda * rank;
    }
    return AffineMeasure(std::move(traceless), std::move(constants));
  }

  static AffineMeasure normalized(const AffineParameters& p) {
    return normalized(p.eta, p.constants);
  }

  double operator()(const Projector& e) const {
    if (e.dim() != dim()) throw DimensionMismatch(dim(), e.dim(), "affine_eval");
    auto it = constants_.find(e.rank());
    if (it == constants_.end()) {
      throw DomainError("affine_eval: rank " + std::to_string(e.rank()) +
                        " is not a declared rank class");
    }
    return trace_product(eta_, e.matrix()) + it->second;
  }

  /// (eta + lambda 1, K_r - lambda r): same measure, different gauge.
  AffineParameters shifted(double lambda) const {
    AffineParameters p{eta_ + lambda * identity_matrix(dim()), constants_};
    for (auto& [rank, k] : p.constants) k -= lambda * rank;
    return p;
  }

  bool has_class(int rank) const { return constants_.count(rank) > 0; }

  Measure as_measure() const {
    AffineMeasure self = *this;
    return Measure(
        dim(), [self](const Projector& e) { return self(e); }, "affine",
        [self](const Projector& e) { return self.has_class(e.rank()); });
  }

  const Matrix& eta() const { return eta_; }
  const std::map<int, double>& constants() const { return constants_; }
  int dim() const { return static_cast<int>(eta_.rows()); }

 private:
  AffineMeasure(Matrix eta, std::map<int, double> constants)
      : eta_(std::move(eta)), constants_(std::move(constants)) {}

  Matrix eta_;
  std::map<int, double> constants_;
};

inline double affine_eval(const AffineMeasure& a, const Projector& e) { return a(e); }

/// Evaluates parameters in whatever gauge they are given.
inline double affine_eval(const AffineParameters& p, const Projector& e) {
  auto it = p.constants.find(e.rank());
  if (it == p.constants.end()) {
    throw DomainError("affine_eval: undeclared rank class " + std::to_string(e.rank()));
  }
  return trace_product(p.eta, e.matrix()) + it->second;
}

/// Random traceless Hermitian matrix with unit Frobenius norm.
inline Matrix random_traceless_hermitian(int d, Rng& rng) {
  Matrix h = random_hermitian(d, rng);
  h -= (h.trace().real() / d) * identity_matrix(d);
  return h / h.norm();
}

/// mu(E1) + mu(E2) - mu(E1 + E2) for an orthogonal pair.
inline double additivity_residual(const Measure& mu, const Projector& e1,
                                  const Projector& e2, double tol = kDefaultTol) {
  if (e1.dim() != e2.dim()) throw DimensionMismatch(e1.dim(), e2.dim(), "additivity_residual");
  if ((e1.matrix() * e2.matrix()).norm() > tol) {
    throw InvalidArgument("additivity_residual: projectors are not orthogonal");
  }
  const Projector sum =
      Projector::assume_valid(e1.matrix() + e2.matrix(), e1.rank() + e2.rank());
  return mu(e1) + mu(e2) - mu(sum);
}

}  // namespace gleason

#endif  // GLEASON_MEASURES_HPP
