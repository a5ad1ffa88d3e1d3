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

// Operational open sets: a sampler paired with a membership predicate.
// Arbitrary open subsets of projector manifolds are not finitely
// representable, so callers declare the set by how to draw from it and how
// to test membership. Connectedness is declared by the caller and can be
// spot-checked by sampling geodesic paths between members.

#ifndef GLEASON_OPEN_SET_HPP
#define GLEASON_OPEN_SET_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gleason/hilbert.hpp"

namespace gleason {

template <class T>
struct OpenSet {
  std::function<T(Rng&)> sample;
  std::function<bool(const T&)> contains;
  std::string label;
};

/// Ordered pair of orthonormal vectors.
struct OrthoPair {
  Vector first;
  Vector second;
};

namespace detail {

inline constexpr int kMaxRejections = 10000;

template <class T>
T draw_inside(const std::function<T(Rng&)>& propose,
              const std::function<bool(const T&)>& contains, Rng& rng,
              const char* what) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    T candidate = propose(rng);
    if (contains(candidate)) return candidate;
  }
  throw InvalidArgument(std::string(what) + ": sampler failed to hit the set");
}

/// Largest component-wise Frobenius distance between tuples of equal shape.
inline double tuple_distance(const MeasurementTuple& a,
                             const MeasurementTuple& b) {
  if (a.size() != b.size() || a.dim() != b.dim()) return HUGE_VAL;
  double worst = 0.0;
  for (int k = 0; k < a.size(); ++k) {
    if (a[k].rank() != b[k].rank()) return HUGE_VAL;
    worst = std::max(worst, a[k].distance(b[k]));
  }
  return worst;
}

/// Unitary whose columns are eigenvectors of the tuple's projectors, grouped
/// by component.
inline Matrix adapted_basis(const MeasurementTuple& m) {
  const int d = m.dim();
  Matrix v(d, d);
  int col = 0;
  for (const auto& p : m) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(p.matrix());
    // Eigenvalues ascend, so the rank-many unit eigenvalues come last.
    v.middleCols(col, p.rank()) = eig.eigenvectors().rightCols(p.rank());
    col += p.rank();
  }
  if (col != d) throw InvalidArgument("adapted_basis: tuple is not complete");
  // Re-orthonormalize against rounding.
  Eigen::HouseholderQR<Matrix> qr(v);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    if (std::abs(diag) > 0.0) q.col(k) *= diag / std::abs(diag);
  }
  return q;
}

}  // namespace detail

/// exp(t log W) for unitary W, using the (diagonal) Schur form of a normal
/// matrix.
inline Matrix unitary_power(const Matrix& w, double t) {
  Eigen::ComplexSchur<Matrix> schur(w);
  const Matrix& q = schur.matrixU();
  const Matrix& tri = schur.matrixT();
  Vector phases(w.rows());
  for (int k = 0; k < w.rows(); ++k) {
    phases(k) = std::polar(1.0, t * std::arg(tri(k, k)));
  }
  return q * phases.asDiagonal() * q.adjoint();
}

/// Point at parameter t in [0, 1] on a unitary path from complete tuple `a`
/// to complete tuple `b` of the same rank pattern.
inline MeasurementTuple tuple_geodesic(const MeasurementTuple& a,
                                       const MeasurementTuple& b, double t) {
  const Matrix va = detail::adapted_basis(a);
  Matrix vb = detail::adapted_basis(b);
  // Align each block of b to a by the unitary polar factor of the block
  // overlap, so the path does not pick up spurious in-block rotations.
  int col = 0;
  for (const auto& p : a) {
    const int r = p.rank();
    const Matrix overlap = va.middleCols(col, r).adjoint() * vb.middleCols(col, r);
    Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
    vb.middleCols(col, r) = vb.middleCols(col, r) * svd.matrixV() *
                            svd.matrixU().adjoint();
    col += r;
  }
  return conjugate(a, unitary_power(vb * va.adjoint(), t));
}

/// Ball of complete tuples around `center`: unitary orbits exp(i s H) M
/// with s <= step, accepted when every component lies within `radius`
/// (Frobenius) of the corresponding center component.
inline OpenSet<MeasurementTuple> tuple_ball(MeasurementTuple center,
                                            double radius, double step) {
  auto contains = [center, radius](const MeasurementTuple& m) {
    return detail::tuple_distance(center, m) < radius;
  };
  auto propose = [center, step](Rng& rng) {
    const Matrix h = random_hermitian(center.dim(), rng);
    std::uniform_real_distribution<double> s(0.0, step);
    return conjugate(center, unitary_exp(h, s(rng)));
  };
  OpenSet<MeasurementTuple> set;
  set.contains = contains;
  set.sample = [propose, contains](Rng& rng) {
    return detail::draw_inside<MeasurementTuple>(propose, contains, rng,
                                                 "tuple_ball");
  };
  set.label = "tuple_ball(r=" + std::to_string(radius) + ")";
  return set;
}

/// Ball of projectors of the center's rank, same construction as tuple_ball.
inline OpenSet<Projector> projector_ball(Projector center, double radius,
                                         double step) {
  auto contains = [center, radius](const Projector& e) {
    return e.dim() == center.dim() && e.rank() == center.rank() &&
           e.distance(center) < radius;
  };
  auto propose = [center, step](Rng& rng) {
    const Matrix h = random_hermitian(center.dim(), rng);
    std::uniform_real_distribution<double> s(0.0, step);
    return conjugate(center, unitary_exp(h, s(rng)));
  };
  OpenSet<Projector> set;
  set.contains = contains;
  set.sample = [propose, contains](Rng& rng) {
    return detail::draw_inside<Projector>(propose, contains, rng,
                                          "projector_ball");
  };
  set.label = "projector_ball(r=" + std::to_string(radius) + ")";
  return set;
}

/// Every rank-r projector on C^d, Haar distributed.
inline OpenSet<Projector> all_projectors(int d, int rank) {
  OpenSet<Projector> set;
  set.contains = [d, rank](const Projector& e) {
    return e.dim() == d && e.rank() == rank;
  };
  set.sample = [d, rank](Rng& rng) {
    const std::vector<int> ranks{rank, d - rank};
    if (rank == d) return identity_projector(d);
    return random_complete_tuple(d, ranks, rng)[0];
  };
  set.label = "all_rank" + std::to_string(rank);
  return set;
}

/// Every ordered orthonormal pair in C^d, Haar distributed.
inline OpenSet<OrthoPair> all_orthonormal_pairs(int d) {
  OpenSet<OrthoPair> set;
  set.contains = [d](const OrthoPair& p) {
    return p.first.size() == d && p.second.size() == d &&
           std::abs(p.first.norm() - 1.0) < kDefaultTol &&
           std::abs(p.second.norm() - 1.0) < kDefaultTol &&
           std::abs(p.first.dot(p.second)) < kDefaultTol;
  };
  set.sample = [d](Rng& rng) {
    const Matrix u = haar_random_unitary(d, rng);
    return OrthoPair{u.col(0), u.col(1)};
  };
  set.label = "all_pairs";
  return set;
}

/// Orthonormal pairs whose rank-one projectors are within `radius` of the
/// center's.
inline OpenSet<OrthoPair> pair_ball(OrthoPair center, double radius,
                                    double step) {
  const Projector c1 = projector_from_vector(center.first);
  const Projector c2 = projector_from_vector(center.second);
  auto contains = [c1, c2, radius](const OrthoPair& p) {
    if (p.first.size() != c1.dim() || p.second.size() != c1.dim()) return false;
    if (std::abs(p.first.dot(p.second)) > kDefaultTol) return false;
    const Matrix e1 = p.first * p.first.adjoint();
    const Matrix e2 = p.second * p.second.adjoint();
    return (e1 - c1.matrix()).norm() < radius &&
           (e2 - c2.matrix()).norm() < radius;
  };
  auto propose = [center, step](Rng& rng) {
    const Matrix h = random_hermitian(static_cast<int>(center.first.size()), rng);
    std::uniform_real_distribution<double> s(0.0, step);
    const Matrix u = unitary_exp(h, s(rng));
    return OrthoPair{u * center.first, u * center.second};
  };
  OpenSet<OrthoPair> set;
  set.contains = contains;
  set.sample = [propose, contains](Rng& rng) {
    return detail::draw_inside<OrthoPair>(propose, contains, rng, "pair_ball");
  };
  set.label = "pair_ball(r=" + std::to_string(radius) + ")";
  return set;
}

/// Fraction of sampled member pairs whose connecting unitary path stays in
/// the set at `steps` interior points. A heuristic witness for a declared
/// connected set, not a proof.
inline double connected_spot_check(const OpenSet<MeasurementTuple>& set,
                                   Rng& rng, int pairs, int steps) {
  if (pairs <= 0) return 1.0;
  int connected = 0;
  for (int p = 0; p < pairs; ++p) {
    const MeasurementTuple a = set.sample(rng);
    const MeasurementTuple b = set.sample(rng);
    bool inside = true;
    for (int s = 1; s < steps && inside; ++s) {
      inside = set.contains(tuple_geodesic(a, b, static_cast<double>(s) / steps));
    }
    if (inside) ++connected;
  }
  return static_cast<double>(connected) / pairs;
}

}  // namespace gleason

#endif  // GLEASON_OPEN_SET_HPP
