// Copyright 2026 The symclone authors
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

#include "symclone/capacity.hpp"

#include <doctest.h>

#include <cmath>

namespace symclone {
namespace {

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.004) == doctest::Approx(0.0376259).epsilon(1e-5));
  CHECK_THROWS_AS(binary_entropy(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(binary_entropy(1.1), std::invalid_argument);
}

TEST_CASE("capacity bound frozen values") {
  const CapacityReport a = capacity_bounds(2, 100, 1, 3);
  // min(0.08, 0.12) scaled by log2(e), the valid base-2 linearisation.
  CHECK(a.transpose_bound_linear ==
        doctest::Approx(0.08 * std::log2(std::exp(1.0))).epsilon(1e-14));
  CHECK(a.transpose_bound_log ==
        doctest::Approx(std::log2(1.08)).epsilon(1e-14));

  const CapacityReport b = capacity_bounds(2, 1000, 1, 2);
  REQUIRE(b.continuity_defined);
  CHECK(*b.continuity_bound ==
        doctest::Approx(0.032 + 4.0 * binary_entropy(0.004)).epsilon(1e-12));
}

TEST_CASE("continuity bound is omitted and flagged outside its domain") {
  const CapacityReport r = capacity_bounds(2, 3, 2, 2);  // 2kd/M = 8/3 > 1
  CHECK_FALSE(r.continuity_defined);
  CHECK_FALSE(r.continuity_bound.has_value());
  CHECK(r.min_bound == doctest::Approx(r.transpose_bound_log));
}

TEST_CASE("linearised transpose bound dominates the log form") {
  for (int d = 2; d <= 4; ++d) {
    for (int M = 2; M <= 40; M += 3) {
      for (int k = 1; k <= 3; ++k) {
        const CapacityReport r = capacity_bounds(d, M, k, d);
        CHECK(r.transpose_bound_linear >= r.transpose_bound_log - 1e-14);
      }
    }
  }
}

TEST_CASE("min_bound is nonincreasing in M") {
  double prev = 1e300;
  for (int M = 2; M <= 60; ++M) {
    const CapacityReport r = capacity_bounds(2, M, 1, 2);
    CHECK(r.min_bound <= prev + 1e-14);
    prev = r.min_bound;
  }
}

TEST_CASE("transpose diamond of the identity qubit channel is one") {
  const double v = transpose_diamond(trace_channel(2, 1, 1));
  CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("measure-and-prepare channels keep transpose norm one") {
  const double v = transpose_diamond(umeasprep_channel(2, 2, 1));
  CHECK(std::abs(v) < 1e-4);
}

TEST_CASE("identity-broadcast restrictions satisfy the transpose bound") {
  for (int M = 2; M <= 5; ++M) {
    const double v = transpose_diamond(trace_channel(2, M, 1));
    const CapacityReport r =
        capacity_bounds(2, M, 1, static_cast<std::int64_t>(sym_dim(2, M)));
    CHECK(v <= std::log2(1.0 + 8.0 / M) + 1e-3);
    CHECK(v <= r.transpose_bound_log + 1e-3);
  }
}

TEST_CASE("transpose-diamond value is basis independent") {
  // Transposition in a rotated orthonormal basis composes an extra unitary
  // channel, which cannot change the diamond norm.
  Rng rng(51);
  const SymChannel e_k = trace_channel(2, 3, 1);
  const Matrix b = random_unitary(e_k.in_dim(), rng);
  const Matrix w = b * b.transpose();

  // Choi of the unitary channel rho -> W rho W^dag on the input space.
  const Eigen::Index n = e_k.in_dim();
  Matrix choi_w = Matrix::Zero(n * n, n * n);
  for (Eigen::Index y = 0; y < n; ++y) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index yp = 0; yp < n; ++yp) {
        for (Eigen::Index j = 0; j < n; ++j) {
          choi_w(y * n + i, yp * n + j) = w(y, i) * std::conj(w(yp, j));
        }
      }
    }
  }

  const Matrix pt =
      partial_transpose_input(e_k.choi, e_k.out_dim(), e_k.in_dim());
  const Matrix rotated = compose_choi(pt, e_k.out_dim(), n, choi_w, n);
  const DiamondResult plain =
      diamond_norm(HermitianMap(n, e_k.out_dim(), pt));
  const DiamondResult conj =
      diamond_norm(HermitianMap(n, e_k.out_dim(), rotated));
  CHECK(plain.upper == doctest::Approx(conj.upper).epsilon(2e-5));
}

}  // namespace
}  // namespace symclone
