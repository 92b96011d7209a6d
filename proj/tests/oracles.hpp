// Copyright 2026 The clwe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only reference implementations. These deliberately avoid the library's
// code paths: plain loops, full sorts, grid searches.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace clwe::testing {

using Mat = Eigen::MatrixXd;

inline Mat random_gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed,
                           double sigma = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
  }
  return m;
}

inline Mat random_rotation(Eigen::Index d, std::uint64_t seed) {
  Eigen::HouseholderQR<Mat> qr(random_gaussian(d, d, seed));
  return qr.householderQ();
}

inline Mat unit_rows(Mat m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
    s = std::sqrt(s);
    if (s > 0) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) /= s;
    }
  }
  return m;
}

inline double dot_rows(const Mat& a, Eigen::Index i, const Mat& b, Eigen::Index j) {
  double s = 0.0;
  for (Eigen::Index c = 0; c < a.cols(); ++c) s += a(i, c) * b(j, c);
  return s;
}

// CSLS evaluated term by term with full sorts.
inline Mat brute_force_csls(const Mat& q, const Mat& t, std::size_t k) {
  const auto nq = q.rows();
  const auto nt = t.rows();
  std::vector<double> rt(static_cast<std::size_t>(nq)), rs(static_cast<std::size_t>(nt));
  for (Eigen::Index i = 0; i < nq; ++i) {
    std::vector<double> sims;
    for (Eigen::Index j = 0; j < nt; ++j) sims.push_back(dot_rows(q, i, t, j));
    std::sort(sims.begin(), sims.end(), std::greater<>());
    const std::size_t kk = std::min<std::size_t>(k, sims.size());
    rt[static_cast<std::size_t>(i)] = std::accumulate(sims.begin(), sims.begin() + kk, 0.0) / kk;
  }
  for (Eigen::Index j = 0; j < nt; ++j) {
    std::vector<double> sims;
    for (Eigen::Index i = 0; i < nq; ++i) sims.push_back(dot_rows(t, j, q, i));
    std::sort(sims.begin(), sims.end(), std::greater<>());
    const std::size_t kk = std::min<std::size_t>(k, sims.size());
    rs[static_cast<std::size_t>(j)] = std::accumulate(sims.begin(), sims.begin() + kk, 0.0) / kk;
  }
  Mat out(nq, nt);
  for (Eigen::Index i = 0; i < nq; ++i) {
    for (Eigen::Index j = 0; j < nt; ++j) {
      out(i, j) = 2.0 * dot_rows(q, i, t, j) - rt[static_cast<std::size_t>(i)] -
                  rs[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

inline Mat rotation2(double theta) {
  Mat r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

// max over 2-D rotations (and reflections when `reflections`) on a grid of
// step `step` of sum_i <a_i Q, b_i>, i.e. trace(Q^T A^T B).
inline double grid_max_alignment(const Mat& a, const Mat& b, double step, bool reflections) {
  const Mat m = a.transpose() * b;
  Mat flip = Mat::Identity(2, 2);
  flip(1, 1) = -1.0;
  double best = -1e300;
  const double two_pi = 2.0 * std::acos(-1.0);
  for (double theta = 0.0; theta < two_pi; theta += step) {
    const Mat q = rotation2(theta);
    best = std::max(best, (q.transpose() * m).trace());
    if (reflections) {
      const Mat qf = q * flip;
      best = std::max(best, (qf.transpose() * m).trace());
    }
  }
  return best;
}

// Inverse square root of A^T A through a symmetric eigendecomposition.
inline Mat inverse_sqrt_gram(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(a.transpose() * a);
  const Eigen::VectorXd inv = eig.eigenvalues().cwiseSqrt().cwiseInverse();
  return eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}

// Profiles and mutual nearest neighbours with plain loops.
inline Mat brute_force_profiles(const Mat& x, std::size_t m) {
  const auto n = static_cast<Eigen::Index>(m);
  Mat out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<double> row;
    for (Eigen::Index j = 0; j < n; ++j) row.push_back(std::sqrt(std::max(0.0, dot_rows(x, i, x, j))));
    std::sort(row.begin(), row.end(), std::greater<>());
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = row[static_cast<std::size_t>(j)];
  }
  return out;
}

inline std::vector<std::pair<std::size_t, std::size_t>> brute_force_mutual_nn(const Mat& a,
                                                                              const Mat& b) {
  const Mat an = unit_rows(a);
  const Mat bn = unit_rows(b);
  std::vector<Eigen::Index> fwd(static_cast<std::size_t>(an.rows())),
      bwd(static_cast<std::size_t>(bn.rows()));
  for (Eigen::Index i = 0; i < an.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < bn.rows(); ++j) {
      if (dot_rows(an, i, bn, j) > dot_rows(an, i, bn, best)) best = j;
    }
    fwd[static_cast<std::size_t>(i)] = best;
  }
  for (Eigen::Index j = 0; j < bn.rows(); ++j) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < an.rows(); ++i) {
      if (dot_rows(an, i, bn, j) > dot_rows(an, best, bn, j)) best = i;
    }
    bwd[static_cast<std::size_t>(j)] = best;
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (Eigen::Index i = 0; i < an.rows(); ++i) {
    const auto j = fwd[static_cast<std::size_t>(i)];
    if (bwd[static_cast<std::size_t>(j)] == i) {
      out.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return out;
}

}  // namespace clwe::testing
