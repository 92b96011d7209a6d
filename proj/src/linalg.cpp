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

#include "clwe/linalg.hpp"

#include <cmath>

namespace clwe {

Svd svd(const Matrix& a, SvdKind kind) {
  const unsigned options = kind == SvdKind::kThin
                               ? (Eigen::ComputeThinU | Eigen::ComputeThinV)
                               : (Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::JacobiSVD<Matrix> solver(a, options);
  Svd out{solver.matrixU(), solver.singularValues(), solver.matrixV()};

  const Eigen::Index rank = out.s.size();
  for (Eigen::Index j = 0; j < out.u.cols(); ++j) {
    Eigen::Index arg = 0;
    out.u.col(j).cwiseAbs().maxCoeff(&arg);
    if (out.u(arg, j) < 0.0) {
      out.u.col(j) *= -1.0;
      // Columns past the rank have no partner in V for a thin decomposition
      // of a wide matrix; V columns past the rank are fixed separately below.
      if (j < out.v.cols() && j < rank) out.v.col(j) *= -1.0;
    }
  }
  for (Eigen::Index j = rank; j < out.v.cols(); ++j) {
    Eigen::Index arg = 0;
    out.v.col(j).cwiseAbs().maxCoeff(&arg);
    if (out.v(arg, j) < 0.0) out.v.col(j) *= -1.0;
  }
  return out;
}

std::size_t normalize_rows(Matrix& m) {
  std::size_t zeros = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double norm = m.row(i).norm();
    if (norm > 0.0) {
      m.row(i) /= norm;
    } else {
      ++zeros;
    }
  }
  return zeros;
}

void center_columns(Matrix& m) {
  if (m.rows() == 0) return;
  const Eigen::RowVectorXd mean = m.colwise().mean();
  m.rowwise() -= mean;
}

double orthogonality_error(const Matrix& w) {
  const Matrix gram = w.transpose() * w;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace clwe
