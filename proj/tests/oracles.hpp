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

// Reference values computed without the library: closed-form derivatives,
// explicit sums instead of Eigen reductions, textbook moments.

#ifndef GLEASON_TESTS_ORACLES_HPP
#define GLEASON_TESTS_ORACLES_HPP

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;
using Tensor3 = std::array<double, 27>;

inline int at(int i, int j, int k) { return 9 * i + 3 * j + k; }

/// Re tr(A B) by explicit double loop.
inline double trace_product(const Matrix& a, const Matrix& b) {
  Complex s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
  return s.real();
}

/// <v|A|v> by explicit loops.
inline double expectation(const Eigen::VectorXcd& v, const Matrix& a) {
  Complex s = 0.0;
  for (int i = 0; i < v.size(); ++i)
    for (int j = 0; j < v.size(); ++j) s += std::conj(v(i)) * a(i, j) * v(j);
  return s.real();
}

// g(v) = v1^3 / |v| ---------------------------------------------------------

inline double cubic_over_norm(const Vec3& v) { return v(0) * v(0) * v(0) / v.norm(); }

inline Vec3 cubic_over_norm_gradient(const Vec3& v) {
  const double r = v.norm();
  const double r3 = r * r * r;
  const double c = v(0) * v(0) * v(0);
  return Vec3(3.0 * v(0) * v(0) / r - c * v(0) / r3, -c * v(1) / r3, -c * v(2) / r3);
}

/// w . grad g(v) - v . grad g(w) for g = v1^3/|v|.
inline double cubic_over_norm_rotation(const Vec3& v, const Vec3& w) {
  return w.dot(cubic_over_norm_gradient(v)) - v.dot(cubic_over_norm_gradient(w));
}

// g(v) = v1^2 ---------------------------------------------------------------

inline double square_first(const Vec3& v) { return v(0) * v(0); }

inline double square_first_rotation(const Vec3& v, const Vec3& w) {
  return w(0) * 2.0 * v(0) - v(0) * 2.0 * w(0);
}

// g(v) = exp(a . v) and sin(a . v) --------------------------------------------

inline Tensor3 exp_third_derivatives(const Vec3& a, const Vec3& v) {
  Tensor3 t{};
  const double e = std::exp(a.dot(v));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) t[at(i, j, k)] = a(i) * a(j) * a(k) * e;
  return t;
}

inline Tensor3 sin_third_derivatives(const Vec3& a, const Vec3& v) {
  Tensor3 t{};
  const double c = -std::cos(a.dot(v));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) t[at(i, j, k)] = a(i) * a(j) * a(k) * c;
  return t;
}

// g(v) = (v^T A v)^2 with A real symmetric ---------------------------------

/// d^3 g / dv_i dv_j dv_k = 8 [A_jk (Av)_i + A_ik (Av)_j + A_ij (Av)_k].
inline Tensor3 quartic_third_derivatives(const Eigen::Matrix3d& a, const Vec3& v) {
  const Vec3 av = a * v;
  Tensor3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        t[at(i, j, k)] = 8.0 * (a(j, k) * av(i) + a(i, k) * av(j) + a(i, j) * av(k));
  return t;
}

inline double max_abs(const Tensor3& t) {
  double m = 0.0;
  for (double x : t) m = std::max(m, std::abs(x));
  return m;
}

// Haar moments ---------------------------------------------------------------

/// E|U_ij|^2 = 1/d.
inline double haar_second_moment(int d) { return 1.0 / d; }

/// E|U_ij|^4 = 2 / (d (d + 1)).
inline double haar_fourth_moment(int d) { return 2.0 / (d * (d + 1.0)); }

// Binomial statistics ----------------------------------------------------------

inline double binomial_z(double freq, double p, long long n) {
  return (freq - p) / std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

// Singlet ---------------------------------------------------------------------

/// -a . b.
inline double singlet_correlation(const Vec3& a, const Vec3& b) { return -a.dot(b); }

}  // namespace oracle

#endif  // GLEASON_TESTS_ORACLES_HPP
