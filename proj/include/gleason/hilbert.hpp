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

// Dense complex linear algebra for projectors, projective measurements and
// Haar-random sampling. Everything else in the toolkit is built on these
// value types.

#ifndef GLEASON_HILBERT_HPP
#define GLEASON_HILBERT_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gleason/errors.hpp"

namespace gleason {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

/// Random engine used throughout. Every sampling routine takes an explicit
/// engine so that runs are reproducible from a seed.
using Rng = std::mt19937_64;

/// Structural tolerance for Frobenius-norm invariants (d <= 16).
inline constexpr double kDefaultTol = 1e-9;
inline constexpr int kMaxVerificationDim = 16;

inline Matrix identity_matrix(int d) { return Matrix::Identity(d, d); }

inline bool is_hermitian(const Matrix& m, double tol = kDefaultTol) {
  return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tol;
}

/// Hermitian part (M + M^dagger) / 2.
inline Matrix hermitian_part(const Matrix& m) {
  return (m + m.adjoint()) * 0.5;
}

/// Real part of tr(A B) without forming the product.
inline double trace_product(const Matrix& a, const Matrix& b) {
  // tr(AB) = sum_ij A_ij B_ji
  return (a.array() * b.transpose().array()).sum().real();
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

/// Hermitian idempotent matrix labelling a measurement outcome.
class Projector {
 public:
  /// Validates Hermiticity, idempotency and integer trace within `tol`.
  static Projector from_matrix(Matrix m, double tol = kDefaultTol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
      throw InvalidArgument("projector must be a non-empty square matrix");
    }
    if (!is_hermitian(m, tol)) {
      throw InvalidArgument("projector is not Hermitian");
    }
    if ((m * m - m).norm() > tol) {
      throw InvalidArgument("projector is not idempotent");
    }
    const double tr = m.trace().real();
    const double rounded = std::round(tr);
    if (std::abs(tr - rounded) > tol || rounded < 1.0) {
      throw InvalidArgument("projector trace " + std::to_string(tr) +
                            " is not a positive integer");
    }
    return Projector(std::move(m), static_cast<int>(rounded));
  }

  /// Wraps a matrix already known to be a rank-`rank` projector.
  static Projector assume_valid(Matrix m, int rank) {
    return Projector(std::move(m), rank);
  }

  const Matrix& matrix() const { return matrix_; }
  int rank() const { return rank_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  /// Frobenius distance to another projector of the same dimension.
  double distance(const Projector& other) const {
    return (matrix_ - other.matrix_).norm();
  }

  bool approx_equal(const Projector& other, double tol = kDefaultTol) const {
    return dim() == other.dim() && distance(other) <= tol;
  }

 private:
  Projector(Matrix m, int rank) : matrix_(std::move(m)), rank_(rank) {}

  Matrix matrix_;
  int rank_;
};

inline Projector identity_projector(int d) {
  return Projector::assume_valid(identity_matrix(d), d);
}

/// Rank-one projector phi phi^dagger of a unit vector.
inline Projector projector_from_vector(const Vector& phi,
                                       double tol_norm = kDefaultTol) {
  if (phi.size() == 0) throw InvalidArgument("empty vector");
  const double norm = phi.norm();
  if (std::abs(norm - 1.0) > tol_norm) {
    throw NormalizationError("vector has norm " + std::to_string(norm) +
                             ", expected 1");
  }
  return Projector::assume_valid(phi * phi.adjoint(), 1);
}

/// Ordered list of projectors on a common space. Completeness and
/// orthogonality are not enforced here; see is_complete_tuple.
class MeasurementTuple {
 public:
  explicit MeasurementTuple(std::vector<Projector> projectors)
      : projectors_(std::move(projectors)) {
    if (projectors_.empty()) {
      throw InvalidArgument("measurement tuple must not be empty");
    }
    const int d = projectors_.front().dim();
    for (const auto& p : projectors_) {
      if (p.dim() != d) throw DimensionMismatch(d, p.dim(), "measurement tuple");
    }
  }

  int size() const { return static_cast<int>(projectors_.size()); }
  int dim() const { return projectors_.front().dim(); }
  const Projector& operator[](int k) const { return projectors_[k]; }
  const std::vector<Projector>& projectors() const { return projectors_; }
  auto begin() const { return projectors_.begin(); }
  auto end() const { return projectors_.end(); }

  std::vector<int> ranks() const {
    std::vector<int> r;
    r.reserve(projectors_.size());
    for (const auto& p : projectors_) r.push_back(p.rank());
    return r;
  }

  /// Index of the component equal to `e` within `tol`, or -1.
  int find(const Projector& e, double tol = kDefaultTol) const {
    for (int k = 0; k < size(); ++k) {
      if (projectors_[k].approx_equal(e, tol)) return k;
    }
    return -1;
  }

 private:
  std::vector<Projector> projectors_;
};

/// Largest pairwise overlap max_{i != j} ||E_i E_j||_F.
inline double max_pairwise_overlap(const MeasurementTuple& m) {
  double worst = 0.0;
  for (int i = 0; i < m.size(); ++i) {
    for (int j = i + 1; j < m.size(); ++j) {
      worst = std::max(worst, (m[i].matrix() * m[j].matrix()).norm());
    }
  }
  return worst;
}

inline double completeness_defect(const MeasurementTuple& m) {
  Matrix sum = Matrix::Zero(m.dim(), m.dim());
  for (const auto& p : m) sum += p.matrix();
  return (sum - identity_matrix(m.dim())).norm();
}

inline bool is_complete_tuple(const MeasurementTuple& m,
                              double tol = kDefaultTol) {
  return completeness_defect(m) <= tol && max_pairwise_overlap(m) <= tol;
}

/// Merges outcomes i and j into E_i + E_j, placed at min(i, j); the
/// remaining components keep their relative order.
inline MeasurementTuple coarse_grain(const MeasurementTuple& m, int i, int j) {
  if (i < 0 || j < 0 || i >= m.size() || j >= m.size()) {
    throw InvalidArgument("coarse_grain: index out of range");
  }
  if (i == j) throw InvalidArgument("coarse_grain: indices must differ");
  const int lo = std::min(i, j);
  const int hi = std::max(i, j);
  std::vector<Projector> out;
  out.reserve(m.size() - 1);
  for (int k = 0; k < m.size(); ++k) {
    if (k == lo) {
      out.push_back(Projector::assume_valid(m[i].matrix() + m[j].matrix(),
                                            m[i].rank() + m[j].rank()));
    } else if (k != hi) {
      out.push_back(m[k]);
    }
  }
  return MeasurementTuple(std::move(out));
}

/// Vector of i.i.d. standard complex Gaussians, E|z|^2 = 1.
inline Vector complex_gaussian_vector(int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Vector v(d);
  for (int k = 0; k < d; ++k) v(k) = Complex(normal(rng), normal(rng));
  return v;
}

inline Vector random_unit_vector(int d, Rng& rng) {
  Vector v = complex_gaussian_vector(d, rng);
  return v / v.norm();
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of R's diagonal moved into Q.
inline Matrix haar_random_unitary(int d, Rng& rng) {
  if (d < 1) throw InvalidArgument("haar_random_unitary: d must be >= 1");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix z(d, d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) z(r, c) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    const Complex phase = mag > 0.0 ? diag / mag : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return q;
}

/// Partitions the columns of `unitary` into consecutive blocks of the given
/// ranks and returns the corresponding projectors.
inline MeasurementTuple tuple_from_unitary(const Matrix& unitary,
                                           std::span<const int> ranks) {
  const int d = static_cast<int>(unitary.rows());
  int total = 0;
  for (int r : ranks) {
    if (r < 1) throw InvalidArgument("ranks must be positive");
    total += r;
  }
  if (total != d) {
    throw InvalidArgument("rank sum " + std::to_string(total) +
                          " does not equal dimension " + std::to_string(d));
  }
  std::vector<Projector> out;
  int col = 0;
  for (int r : ranks) {
    const auto block = unitary.middleCols(col, r);
    out.push_back(Projector::assume_valid(block * block.adjoint(), r));
    col += r;
  }
  return MeasurementTuple(std::move(out));
}

inline MeasurementTuple random_complete_tuple(int d, std::span<const int> ranks,
                                              Rng& rng) {
  const int total = std::accumulate(ranks.begin(), ranks.end(), 0);
  if (total != d) {
    throw InvalidArgument("rank sum " + std::to_string(total) +
                          " does not equal dimension " + std::to_string(d));
  }
  return tuple_from_unitary(haar_random_unitary(d, rng), ranks);
}

/// Spectral split of a projector into rank-one projectors. Eigenvalues are
/// separated at 0.5, which sits midway in the {0, 1} spectrum.
inline std::vector<Projector> decompose_rank1(const Projector& e) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(e.matrix());
  if (eig.info() != Eigen::Success) {
    throw InvalidArgument("decompose_rank1: eigendecomposition failed");
  }
  std::vector<Projector> out;
  for (int k = 0; k < e.dim(); ++k) {
    if (eig.eigenvalues()(k) > 0.5) {
      out.push_back(projector_from_vector(eig.eigenvectors().col(k).normalized()));
    }
  }
  if (static_cast<int>(out.size()) != e.rank()) {
    throw InvalidArgument("decompose_rank1: spectrum inconsistent with rank " +
                          std::to_string(e.rank()));
  }
  return out;
}

/// Orthonormal basis of the complement of span(vectors) in C^dim.
inline std::vector<Vector> orthogonal_complement(std::span<const Vector> vectors,
                                                 int dim,
                                                 double tol = kDefaultTol) {
  const int k = static_cast<int>(vectors.size());
  if (k > dim) throw InvalidArgument("more vectors than the dimension");
  if (k == 0) {
    std::vector<Vector> basis;
    for (int i = 0; i < dim; ++i) basis.push_back(Vector::Unit(dim, i));
    return basis;
  }
  Matrix a(dim, k);
  for (int c = 0; c < k; ++c) {
    if (vectors[c].size() != dim) {
      throw DimensionMismatch(dim, static_cast<int>(vectors[c].size()),
                              "orthogonal_complement");
    }
    a.col(c) = vectors[c];
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0 || s(k - 1) / s(0) <= tol) {
    throw InvalidArgument("orthogonal_complement: input vectors are linearly dependent");
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  const Matrix q = qr.householderQ();
  std::vector<Vector> basis;
  for (int c = k; c < dim; ++c) basis.push_back(q.col(c));
  return basis;
}

/// Three mutually orthogonal real 3-vectors.
struct RealTriple {
  Vec3 u;
  Vec3 v;
  Vec3 w;

  static RealTriple make(const Vec3& u, const Vec3& v, const Vec3& w,
                         double tol = kDefaultTol) {
    if (std::abs(u.dot(v)) > tol || std::abs(u.dot(w)) > tol ||
        std::abs(v.dot(w)) > tol) {
      throw InvalidArgument("RealTriple: vectors are not pairwise orthogonal");
    }
    return RealTriple{u, v, w};
  }
};

/// Random Hermitian matrix from the Gaussian unitary ensemble, scaled to unit
/// Frobenius norm.
inline Matrix random_hermitian(int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix h(d, d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) h(r, c) = Complex(normal(rng), normal(rng));
  }
  h = hermitian_part(h);
  return h / h.norm();
}

/// exp(i t H) for Hermitian H, via its eigendecomposition.
inline Matrix unitary_exp(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const auto& vals = eig.eigenvalues();
  Vector phases(vals.size());
  for (int k = 0; k < vals.size(); ++k) {
    phases(k) = std::polar(1.0, t * vals(k));
  }
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

/// U E U^dagger, preserving the rank label.
inline Projector conjugate(const Projector& e, const Matrix& u) {
  return Projector::assume_valid(u * e.matrix() * u.adjoint(), e.rank());
}

inline MeasurementTuple conjugate(const MeasurementTuple& m, const Matrix& u) {
  std::vector<Projector> out;
  out.reserve(m.size());
  for (const auto& p : m) out.push_back(conjugate(p, u));
  return MeasurementTuple(std::move(out));
}

}  // namespace gleason

#endif  // GLEASON_HILBERT_HPP
