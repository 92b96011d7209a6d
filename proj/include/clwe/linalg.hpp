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
#include <cstdint>

#include <Eigen/Dense>

namespace clwe {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Singular value decomposition A = U * diag(s) * V^T with s non-increasing.
// Each column of U has its largest-magnitude entry made non-negative (the
// matching column of V is flipped with it) so results do not depend on the
// backend's sign convention.
struct Svd {
  Matrix u;
  Vector s;
  Matrix v;
};

enum class SvdKind { kThin, kFull };

Svd svd(const Matrix& a, SvdKind kind = SvdKind::kThin);

// Scales every row to unit Euclidean norm. Zero rows are left untouched;
// returns how many there were.
std::size_t normalize_rows(Matrix& m);

// Subtracts the column mean from every entry.
void center_columns(Matrix& m);

// Maximum absolute entry of W^T W - I.
double orthogonality_error(const Matrix& w);

// Stateless 64-bit mixer (splitmix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) derived from the top 53 bits.
constexpr double unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace clwe
