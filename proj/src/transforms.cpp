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

#include "clwe/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "clwe/error.hpp"

namespace clwe {
namespace {

void check_dictionary(const Matrix& x, const Matrix& z, const Dictionary& dict) {
  if (dict.empty()) throw Error(ErrorCode::kInvalidArgument, "projection: dictionary is empty");
  if (x.cols() != z.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "projection: source and target dimensions differ");
  }
  for (const auto& p : dict.pairs()) {
    if (p.src >= static_cast<std::size_t>(x.rows()) ||
        p.tgt >= static_cast<std::size_t>(z.rows())) {
      throw Error(ErrorCode::kInvalidArgument, "projection: dictionary index out of range");
    }
  }
}

void report_zero_rows(std::size_t count, std::size_t* sink) {
  if (sink) *sink += count;
  if (count > 0) warn(std::to_string(count) + " zero row(s) left unnormalized");
}

}  // namespace

Matrix length_normalize(const Matrix& x, std::size_t* zero_rows) {
  Matrix out = x;
  report_zero_rows(normalize_rows(out), zero_rows);
  return out;
}

EmbeddingSpace length_normalize(const EmbeddingSpace& space, std::size_t* zero_rows) {
  return space.with_vectors(length_normalize(space.vectors(), zero_rows));
}

Matrix s1_normalize(const Matrix& x, std::size_t* zero_rows) {
  Matrix out = x;
  std::size_t zeros = normalize_rows(out);
  center_columns(out);
  zeros += normalize_rows(out);
  report_zero_rows(zeros, zero_rows);
  return out;
}

EmbeddingSpace s1_normalize(const EmbeddingSpace& space, std::size_t* zero_rows) {
  return space.with_vectors(s1_normalize(space.vectors(), zero_rows));
}

Matrix gather_rows(const Matrix& m, const std::vector<std::size_t>& indices) {
  Matrix out(static_cast<Eigen::Index>(indices.size()), m.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(indices[i]));
  }
  return out;
}

WhiteningTransform whitening_transform(const Matrix& a, double epsilon) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "whitening: empty matrix");
  }
  if (!(epsilon > 0.0)) throw Error(ErrorCode::kInvalidArgument, "whitening: epsilon must be > 0");

  // Only V and the singular values are needed; full V keeps the operator
  // d x d and invertible when n < d. T is invariant to the signs of V's
  // columns, so no sign normalization is required.
  const Eigen::JacobiSVD<Matrix> dec(a, Eigen::ComputeFullV);
  const Eigen::Index d = a.cols();
  Vector s = Vector::Zero(d);
  s.head(dec.singularValues().size()) = dec.singularValues();
  const double top = s.size() > 0 ? s.maxCoeff() : 0.0;
  const double floor = top > 0.0 ? epsilon * top : epsilon;
  const Vector clamped = s.cwiseMax(floor);

  WhiteningTransform t;
  t.regularizer = epsilon;
  t.clamped = static_cast<std::size_t>((s.array() < floor).count());
  const Matrix& v = dec.matrixV();
  t.matrix = v * clamped.cwiseInverse().asDiagonal() * v.transpose();
  t.inverse = v * clamped.asDiagonal() * v.transpose();
  return t;
}

ProjectionModel solve_orthogonal(const Matrix& x, const Matrix& z, const Dictionary& dict) {
  check_dictionary(x, z, dict);
  const Matrix cross = gather_rows(x, dict.src_indices()).transpose() *
                       gather_rows(z, dict.tgt_indices());
  const Svd dec = svd(cross, SvdKind::kFull);

  ProjectionModel model;
  model.mode = ProjectionMode::kOrthogonal;
  model.w_x = dec.u;
  model.w_z = dec.v;
  model.source_map = dec.u;
  model.target_map = dec.v;
  model.singular_values = dec.s;
  return model;
}

ProjectionModel full_projection_step(const Matrix& x, const Matrix& z, const Dictionary& dict,
                                     double epsilon) {
  check_dictionary(x, z, dict);
  const Matrix xd = gather_rows(x, dict.src_indices());
  const Matrix zd = gather_rows(z, dict.tgt_indices());

  WhiteningTransform wx = whitening_transform(xd, epsilon);
  WhiteningTransform wz = whitening_transform(zd, epsilon);

  const Matrix cross = (xd * wx.matrix).transpose() * (zd * wz.matrix);
  const Svd dec = svd(cross, SvdKind::kFull);
  const Vector root = dec.s.cwiseMax(0.0).cwiseSqrt();

  ProjectionModel model;
  model.mode = ProjectionMode::kFull;
  model.w_x = dec.u * root.asDiagonal();
  model.w_z = dec.v * root.asDiagonal();
  Matrix dewhiten_x = dec.u.transpose() * wx.inverse * dec.u;
  Matrix dewhiten_z = dec.v.transpose() * wz.inverse * dec.v;
  model.source_map = wx.matrix * model.w_x * dewhiten_x;
  model.target_map = wz.matrix * model.w_z * dewhiten_z;
  model.whitening_x = std::move(wx);
  model.whitening_z = std::move(wz);
  model.dewhiten_x = std::move(dewhiten_x);
  model.dewhiten_z = std::move(dewhiten_z);
  model.singular_values = dec.s;
  return model;
}

}  // namespace clwe
