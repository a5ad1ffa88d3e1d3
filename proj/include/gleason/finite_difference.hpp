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

// Central-difference estimators on real three-dimensional sections of a
// frame function. A section fixes three orthonormal complex vectors b_k
// (phases included) and looks at g(v) = f(v_1 b_1 + v_2 b_2 + v_3 b_3) for
// real v, so every derivative below is an ordinary real derivative.

#ifndef GLEASON_FINITE_DIFFERENCE_HPP
#define GLEASON_FINITE_DIFFERENCE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "gleason/hilbert.hpp"
#include "gleason/measures.hpp"

namespace gleason {

using RealFunction3 = std::function<double(const Vec3&)>;

/// Default step and the constant C of the tolerance tau(h) = C h^2 used for
/// unit-scale functions.
inline constexpr double kFdStep = 1e-3;
inline constexpr double kFdConstant = 50.0;

inline double fd_tolerance(double h, double c = kFdConstant) { return c * h * h; }

class RealSection {
 public:
  /// The three vectors must be orthonormal within `tol`.
  static RealSection make(const Vector& b1, const Vector& b2, const Vector& b3,
                          double tol = kDefaultTol) {
    const std::array<Vector, 3> b{b1, b2, b3};
    for (int i = 0; i < 3; ++i) {
      if (b[i].size() != b1.size()) {
        throw DimensionMismatch(static_cast<int>(b1.size()), static_cast<int>(b[i].size()),
                                "RealSection");
      }
      for (int j = 0; j < 3; ++j) {
        const Complex ip = b[i].dot(b[j]);
        if (std::abs(ip - Complex(i == j ? 1.0 : 0.0, 0.0)) > tol) {
          throw InvalidArgument("RealSection: basis is not orthonormal");
        }
      }
    }
    return RealSection(b);
  }

  Vector point(const Vec3& v) const {
    return v(0) * basis_[0] + v(1) * basis_[1] + v(2) * basis_[2];
  }

  const std::array<Vector, 3>& basis() const { return basis_; }

 private:
  explicit RealSection(std::array<Vector, 3> b) : basis_(std::move(b)) {}
  std::array<Vector, 3> basis_;
};

inline RealFunction3 restrict_to_section(const FrameFunction& f, const RealSection& s) {
  return [f, s](const Vec3& v) { return f(s.point(v)); };
}

/// (g(x + h dir) - g(x - h dir)) / 2h, the derivative of g along dir.
inline double directional_derivative(const RealFunction3& g, const Vec3& x,
                                     const Vec3& dir, double h) {
  return (g(x + h * dir) - g(x - h * dir)) / (2.0 * h);
}

/// Central-difference estimate of (w . d/dv - v . d/dw)[g(v) + g(w)]
/// = w . grad g(v) - v . grad g(w). Vanishes (up to O(h^2)) when g(v) + g(w)
/// is invariant under rotations in the v-w plane.
inline double rotation_identity_residual(const RealFunction3& g, const Vec3& v,
                                         const Vec3& w, double h = kFdStep,
                                         double tol = kDefaultTol) {
  if (std::abs(v.dot(w)) > tol * std::max(1.0, v.norm() * w.norm())) {
    throw InvalidArgument("rotation_identity_residual: v and w are not orthogonal");
  }
  return directional_derivative(g, v, w, h) - directional_derivative(g, w, v, h);
}

/// The 27 third partial derivatives at a point.
struct ThirdDerivTensor {
  std::array<double, 27> entries{};
  double step = 0.0;

  double operator()(int i, int j, int k) const { return entries[9 * i + 3 * j + k]; }
  double& operator()(int i, int j, int k) { return entries[9 * i + 3 * j + k]; }

  double max_abs() const {
    double m = 0.0;
    for (double e : entries) m = std::max(m, std::abs(e));
    return m;
  }

  /// Largest difference between index permutations of one entry.
  double symmetry_defect() const {
    double m = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          const double x = (*this)(i, j, k);
          for (double y : {(*this)(i, k, j), (*this)(j, i, k), (*this)(j, k, i),
                           (*this)(k, i, j), (*this)(k, j, i)}) {
            m = std::max(m, std::abs(x - y));
          }
        }
      }
    }
    return m;
  }

  /// Contraction sum_ijk a_i b_j c_k T_ijk.
  double contract(const Vec3& a, const Vec3& b, const Vec3& c) const {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) s += a(i) * b(j) * c(k) * (*this)(i, j, k);
    return s;
  }
};

/// Third derivatives by nesting three central first differences:
/// D_i D_j D_k g(v) = sum over signs s of s_i s_j s_k g(v + h(s_i e_i +
/// s_j e_j + s_k e_k)) / (8 h^3). Truncation error is O(h^2) for C^5 g.
/// Expects |v| = 1 and h in [1e-5, 1e-2].
inline ThirdDerivTensor third_derivative_tensor(const RealFunction3& g, const Vec3& v,
                                                double h = kFdStep) {
  ThirdDerivTensor t;
  t.step = h;
  const double scale = 1.0 / (8.0 * h * h * h);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        double sum = 0.0;
        for (int si = -1; si <= 1; si += 2) {
          for (int sj = -1; sj <= 1; sj += 2) {
            for (int sk = -1; sk <= 1; sk += 2) {
              Vec3 x = v;
              x(i) += si * h;
              x(j) += sj * h;
              x(k) += sk * h;
              sum += si * sj * sk * g(x);
            }
          }
        }
        t(i, j, k) = sum * scale;
      }
    }
  }
  return t;
}

/// Residual of the radial constraint v . grad g(v) - 2 g(v).
inline double radial_constraint_residual(const RealFunction3& g, const Vec3& v,
                                         double h = kFdStep) {
  return directional_derivative(g, v, v, h) - 2.0 * g(v);
}

/// Complex-space version: phi . df/dphi + phi* . df/dphi* - 2 f, which for
/// real-valued f equals the derivative along the real ray through phi.
inline double radial_constraint_residual(const FrameFunction& f, const Vector& phi,
                                         double h = kFdStep) {
  const double d = (f(phi * (1.0 + h)) - f(phi * (1.0 - h))) / (2.0 * h);
  return d - 2.0 * f(phi);
}

}  // namespace gleason

#endif  // GLEASON_FINITE_DIFFERENCE_HPP
