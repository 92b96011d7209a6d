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

#pragma once

#include <cstddef>
#include <optional>

#include "clwe/dictionary.hpp"
#include "clwe/embedding_io.hpp"
#include "clwe/linalg.hpp"

namespace clwe {

/// Relative floor applied to singular values before inversion.
inline constexpr double kDefaultWhiteningEpsilon = 1e-9;

/// ZCA whitening operator T = V diag(1/max(s_i, eps * s_max)) V^T for
/// A = U diag(s) V^T. After whitening, (A T)^T (A T) = I for full-rank A.
struct WhiteningTransform {
  Matrix matrix;
  Matrix inverse;
  double regularizer = kDefaultWhiteningEpsilon;
  // Singular values raised to the regularization floor; non-zero when the
  // input does not span every dimension (e.g. fewer rows than columns).
  std::size_t clamped = 0;
};

WhiteningTransform whitening_transform(const Matrix& a,
                                       double epsilon = kDefaultWhiteningEpsilon);

enum class ProjectionMode { kOrthogonal, kFull };

/// Linear maps taking both spaces into one shared space.
///
/// For kOrthogonal, w_x = U and w_z = V. For kFull, w_x = U S^1/2 and
/// w_z = V S^1/2, wrapped between the whitening and de-whitening matrices.
/// source_map / target_map hold the composed d x d maps.
struct ProjectionModel {
  ProjectionMode mode = ProjectionMode::kOrthogonal;
  Matrix w_x;
  Matrix w_z;
  Matrix source_map;
  Matrix target_map;
  std::optional<WhiteningTransform> whitening_x;
  std::optional<WhiteningTransform> whitening_z;
  std::optional<Matrix> dewhiten_x;
  std::optional<Matrix> dewhiten_z;
  std::optional<Vector> singular_values;

  /// False when a whitening step had to regularize a rank-deficient input;
  /// such a map collapses some directions.
  bool full_rank() const {
    return (!whitening_x || whitening_x->clamped == 0) && (!whitening_z || whitening_z->clamped == 0);
  }

  Matrix map_source(const Matrix& x) const { return x * source_map; }
  Matrix map_target(const Matrix& z) const { return z * target_map; }
};

// S1: unit length, per-dimension centering, unit length again. Rows that are
// zero at a normalization stage stay zero; their count is added to
// *zero_rows when given.
Matrix s1_normalize(const Matrix& x, std::size_t* zero_rows = nullptr);
EmbeddingSpace s1_normalize(const EmbeddingSpace& space, std::size_t* zero_rows = nullptr);

// Unit length only (the partial S1 used by the orthogonal baselines).
Matrix length_normalize(const Matrix& x, std::size_t* zero_rows = nullptr);
EmbeddingSpace length_normalize(const EmbeddingSpace& space, std::size_t* zero_rows = nullptr);

/// Rows of `m` selected by `indices`, in order.
Matrix gather_rows(const Matrix& m, const std::vector<std::size_t>& indices);

/// Orthogonal Procrustes: SVD of X_D^T Z_D; W_x = U, W_z = V.
ProjectionModel solve_orthogonal(const Matrix& x, const Matrix& z, const Dictionary& dict);

/// Whitening, orthogonal mapping, symmetric re-weighting and de-whitening
/// for one dictionary. Whitening is estimated on the dictionary rows.
ProjectionModel full_projection_step(const Matrix& x, const Matrix& z, const Dictionary& dict,
                                     double epsilon = kDefaultWhiteningEpsilon);

}  // namespace clwe
