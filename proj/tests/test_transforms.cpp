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

#include <cmath>
#include <vector>

#include "doctest.h"

#include "clwe/error.hpp"
#include "clwe/transforms.hpp"
#include "oracles.hpp"

using clwe::Dictionary;
using clwe::IndexPair;
using clwe::Matrix;
using clwe::testing::random_gaussian;
using clwe::testing::random_rotation;

namespace {

Dictionary identity_dictionary(std::size_t n) {
  std::vector<IndexPair> pairs;
  for (std::size_t i = 0; i < n; ++i) pairs.push_back({i, i});
  return Dictionary(n, n, pairs);
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix gram(const Matrix& a) { return a.transpose() * a; }

}  // namespace

TEST_CASE("s1 on the hand-computed two-row example") {
  Matrix x(2, 2);
  x << 3, 0, 0, 4;
  const Matrix out = clwe::s1_normalize(x);
  const double h = std::sqrt(2.0) / 2.0;
  Matrix expected(2, 2);
  expected << h, -h, -h, h;
  CHECK(max_abs(out - expected) < 1e-12);
}

TEST_CASE("s1 rows have unit norm and positive scaling cancels") {
  const Matrix x = random_gaussian(60, 7, 1);
  const Matrix out = clwe::s1_normalize(x);
  for (Eigen::Index i = 0; i < out.rows(); ++i) CHECK(std::abs(out.row(i).norm() - 1.0) < 1e-9);
  for (double c : {0.001, 3.0, 250.0}) {
    CHECK(max_abs(clwe::s1_normalize(Matrix(c * x)) - out) < 1e-12);
  }
}

TEST_CASE("s1 on a single row reports the zero row") {
  Matrix x(1, 2);
  x << 1, 1;
  std::size_t zeros = 0;
  const Matrix out = clwe::s1_normalize(x, &zeros);
  CHECK(zeros == 1);
  CHECK(out.isZero());
}

TEST_CASE("s1 is idempotent when its output is already centred") {
  // Rows come in +/- pairs, so every stage keeps the column mean at zero.
  const Matrix half = random_gaussian(20, 5, 4);
  Matrix x(40, 5);
  x << half, -half;
  const Matrix once = clwe::s1_normalize(x);
  CHECK(max_abs(clwe::s1_normalize(once) - once) < 1e-9);
}

TEST_CASE("a second s1 pass moves rows by at most twice the residual mean") {
  // On general data the renormalisation leaves a small column mean behind, so
  // a second pass is not an exact no-op; its effect is bounded by that mean.
  const Matrix once = clwe::s1_normalize(random_gaussian(200, 10, 5));
  const double residual = once.colwise().mean().norm();
  const Matrix twice = clwe::s1_normalize(once);
  for (Eigen::Index i = 0; i < once.rows(); ++i) {
    CHECK((twice.row(i) - once.row(i)).norm() <= 2.0 * residual / (1.0 - residual) + 1e-12);
  }
}

TEST_CASE("length_normalize only rescales rows") {
  const Matrix x = random_gaussian(10, 4, 2);
  const Matrix out = clwe::length_normalize(x);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    CHECK(max_abs(out.row(i) * x.row(i).norm() - x.row(i)) < 1e-12);
  }
}

TEST_CASE("whitening gives identity second moments") {
  SUBCASE("covariance diag(4, 1)") {
    Matrix a = random_gaussian(5000, 2, 8);
    a.col(0) *= 2.0;
    const auto t = clwe::whitening_transform(a);
    CHECK(max_abs(gram(a * t.matrix) - Matrix::Identity(2, 2)) < 1e-6);
  }
  SUBCASE("random 50 x 3") {
    const Matrix a = random_gaussian(50, 3, 9);
    const auto t = clwe::whitening_transform(a);
    CHECK(max_abs(gram(a * t.matrix) - Matrix::Identity(3, 3)) < 1e-8);
  }
  SUBCASE("already white input gives T = I") {
    Eigen::HouseholderQR<Matrix> qr(random_gaussian(30, 4, 10));
    const Matrix a = Matrix(qr.householderQ()).leftCols(4);
    const auto t = clwe::whitening_transform(a);
    CHECK(max_abs(t.matrix - Matrix::Identity(4, 4)) < 1e-9);
  }
}

TEST_CASE("whitening matches the inverse square root of the Gram matrix") {
  const Matrix a = random_gaussian(40, 5, 12);
  const auto t = clwe::whitening_transform(a);
  CHECK(max_abs(t.matrix - clwe::testing::inverse_sqrt_gram(a)) < 1e-9);
  CHECK(max_abs(t.matrix * t.inverse - Matrix::Identity(5, 5)) < 1e-9);
  CHECK(max_abs(t.matrix - t.matrix.transpose()) < 1e-12);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(t.matrix);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("whitening a rank-deficient matrix stays finite and positive definite") {
  const Matrix a = random_gaussian(3, 6, 13);  // rank 3 < d
  const auto t = clwe::whitening_transform(a);
  CHECK(t.matrix.allFinite());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(t.matrix);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);
  // Inside the row space the operator still whitens.
  const Matrix w = a * t.matrix;
  CHECK(max_abs(w * w.transpose() - Matrix::Identity(3, 3)) < 1e-6);
}

TEST_CASE("solve_orthogonal returns orthogonal factors that align a rotated copy") {
  const Matrix x = clwe::testing::unit_rows(random_gaussian(100, 10, 14));
  const Matrix z = x * random_rotation(10, 15);
  const auto model = clwe::solve_orthogonal(x, z, identity_dictionary(100));
  CHECK(model.mode == clwe::ProjectionMode::kOrthogonal);
  CHECK(clwe::orthogonality_error(model.w_x) < 1e-9);
  CHECK(clwe::orthogonality_error(model.w_z) < 1e-9);
  CHECK(max_abs(model.map_source(x) - model.map_target(z)) < 1e-6);
}

TEST_CASE("solve_orthogonal recovers a 90 degree rotation") {
  Matrix x(2, 2);
  x << 1, 0, 0, 1;
  const Matrix r = clwe::testing::rotation2(std::acos(-1.0) / 2.0);
  const Matrix z = x * r;
  const auto model = clwe::solve_orthogonal(x, z, identity_dictionary(2));
  // The map from source to target coordinates is W_x W_z^T.
  const Matrix relative = model.w_x * model.w_z.transpose();
  CHECK(max_abs(relative - r) < 1e-9);
  CHECK(std::abs(std::atan2(relative(1, 0), relative(0, 0)) - std::acos(-1.0) / 2.0) < 1e-9);
}

TEST_CASE("Procrustes solution beats every rotation on a 1e-3 rad grid") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix x = random_gaussian(6, 2, 100 + seed);
    const Matrix z = random_gaussian(6, 2, 200 + seed);
    const auto model = clwe::solve_orthogonal(x, z, identity_dictionary(6));
    const double objective = (model.map_source(x).array() * model.map_target(z).array()).sum();
    CHECK(objective >= clwe::testing::grid_max_alignment(x, z, 1e-3, false) - 1e-4);
  }
}

TEST_CASE("errors on empty or out-of-range dictionaries") {
  const Matrix x = random_gaussian(4, 2, 1);
  const Dictionary empty(4, 4, {});
  CHECK_THROWS_AS(clwe::solve_orthogonal(x, x, empty), clwe::Error);
  CHECK_THROWS_AS(clwe::full_projection_step(x, x, empty), clwe::Error);
  const Dictionary too_big(10, 10, {{9, 0}});
  CHECK_THROWS_AS(clwe::solve_orthogonal(x, x, too_big), clwe::Error);
}

TEST_CASE("full step with X = Z maps both sides identically") {
  const Matrix x = clwe::s1_normalize(random_gaussian(50, 6, 16));
  const auto model = clwe::full_projection_step(x, x, identity_dictionary(50));
  CHECK(model.mode == clwe::ProjectionMode::kFull);
  CHECK(max_abs(model.map_source(x) - model.map_target(x)) < 1e-12);
}

TEST_CASE("full step on a rotated copy aligns every row") {
  const Matrix x = clwe::s1_normalize(random_gaussian(100, 10, 17));
  const Matrix z = x * random_rotation(10, 18);
  const auto model = clwe::full_projection_step(x, z, identity_dictionary(100));
  const Matrix xm = model.map_source(x);
  const Matrix zm = model.map_target(z);
  CHECK(max_abs(xm - zm) < 1e-6);
  // Nearest neighbour of every mapped source row is its own counterpart.
  const Matrix sims = clwe::testing::unit_rows(xm) * clwe::testing::unit_rows(zm).transpose();
  for (Eigen::Index i = 0; i < sims.rows(); ++i) {
    Eigen::Index arg = 0;
    sims.row(i).maxCoeff(&arg);
    CHECK(arg == i);
  }
}

TEST_CASE("full step factors compose as documented") {
  const Matrix x = clwe::s1_normalize(random_gaussian(80, 5, 19));
  const Matrix z = clwe::s1_normalize(random_gaussian(80, 5, 20));
  const auto m = clwe::full_projection_step(x, z, identity_dictionary(80));
  REQUIRE(m.singular_values);
  const auto& s = *m.singular_values;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    CHECK(s(i) >= 0.0);
    if (i > 0) CHECK(s(i) <= s(i - 1));
  }
  CHECK(max_abs(m.source_map - m.whitening_x->matrix * m.w_x * *m.dewhiten_x) < 1e-12);
  CHECK(max_abs(m.target_map - m.whitening_z->matrix * m.w_z * *m.dewhiten_z) < 1e-12);
  // W_x = U S^1/2 with orthogonal U.
  const Matrix u = m.w_x * s.cwiseSqrt().cwiseInverse().asDiagonal();
  CHECK(clwe::orthogonality_error(u) < 1e-9);
}

TEST_CASE("full step singular value sum matches a rotation/reflection grid on 2-D toys") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix x = random_gaussian(2, 2, 300 + seed);
    const Matrix z = random_gaussian(2, 2, 400 + seed);
    const auto model = clwe::full_projection_step(x, z, identity_dictionary(2));
    // Independent route: whiten via eigendecomposition, then grid search.
    const Matrix xw = x * clwe::testing::inverse_sqrt_gram(x);
    const Matrix zw = z * clwe::testing::inverse_sqrt_gram(z);
    const double grid = clwe::testing::grid_max_alignment(xw, zw, 1e-3, true);
    CHECK(std::abs(model.singular_values->sum() - grid) < 1e-4);
  }
}

TEST_CASE("without whitening and re-weighting the full step reduces to Procrustes") {
  // With S^0 and T = I the composed maps are U and V exactly; check the
  // orthogonal solver induces the same neighbour graph as the SVD factors of
  // the full step's cross-covariance on pre-whitened data.
  const Matrix x0 = clwe::s1_normalize(random_gaussian(60, 4, 21));
  const Matrix z0 = clwe::s1_normalize(random_gaussian(60, 4, 22));
  const Matrix x = x0 * clwe::whitening_transform(x0).matrix;
  const Matrix z = z0 * clwe::whitening_transform(z0).matrix;
  const auto d = identity_dictionary(60);
  const auto full = clwe::full_projection_step(x, z, d);
  const auto orth = clwe::solve_orthogonal(x, z, d);
  // Whitening already-white input is the identity, so the only difference
  // left is the symmetric S^1/2 weighting; U and V coincide.
  const Eigen::VectorXd root = full.singular_values->cwiseSqrt();
  CHECK(max_abs(full.w_x - orth.w_x * root.asDiagonal()) < 1e-8);
  CHECK(max_abs(full.w_z - orth.w_z * root.asDiagonal()) < 1e-8);
}

TEST_CASE("swapping source and target transposes the cross-space scores") {
  const Matrix x = clwe::s1_normalize(random_gaussian(70, 5, 23));
  const Matrix z = clwe::s1_normalize(random_gaussian(90, 5, 24));
  std::vector<IndexPair> pairs;
  for (std::size_t i = 0; i < 40; ++i) pairs.push_back({i, (i * 7) % 90});
  const Dictionary d(70, 90, pairs);
  const auto fwd = clwe::full_projection_step(x, z, d);
  const auto bwd = clwe::full_projection_step(z, x, d.transposed());
  const Matrix p = fwd.map_source(x) * fwd.map_target(z).transpose();
  const Matrix q = bwd.map_source(z) * bwd.map_target(x).transpose();
  CHECK(max_abs(p - q.transpose()) < 1e-8);
}

TEST_CASE("whitening reports how many singular values were regularized") {
  CHECK(clwe::whitening_transform(random_gaussian(50, 6, 31)).clamped == 0);
  CHECK(clwe::whitening_transform(random_gaussian(4, 10, 32)).clamped == 6);
  Matrix dup = random_gaussian(20, 3, 33);
  dup.col(2) = dup.col(0);
  CHECK(clwe::whitening_transform(dup).clamped == 1);
}
