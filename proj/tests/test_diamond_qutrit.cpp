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
//
// Qutrit diamond-distance sweep. Slower than the rest of the suite: the
// largest instance factors a ~4000^2 Schur complement per interior-point
// step. Instances with Choi side beyond ~64 (d=3, k=1 M=6 and k=2 M>=4)
// are reachable through the CLI but are not part of the routine suite.

#include "symclone/diamond.hpp"

#include <doctest.h>

namespace symclone {
namespace {

void check_sandwich(int d, int M, int k) {
  const DiamondResult r = diamond_distance(umeasprep_channel(d, M, k),
                                           trace_channel(d, M, k));
  const ProbabilityVector p = ps_distribution(d, M, k);
  const double chain = 2.0 * (1.0 - rational_to_double(p.entries[k]));
  const auto bounds = analytic_bounds(d, M, k);
  CHECK(r.upper <= chain + 1e-6);
  CHECK(chain <= rational_to_double(bounds.bound_estimation_1) + 1e-12);
  CHECK(r.upper <= *bounds.bound_estimation_2_exact + 1e-6);
  CHECK(r.lower >= 0.0);
  CHECK(r.lower <= r.upper + 1e-9);
  CHECK(r.upper - r.lower <= 1e-3);
  CHECK(r.sdp.certified_gap <= 1e-6);
}

TEST_CASE("qutrit estimation distances, k = 1") {
  for (int M = 1; M <= 5; ++M) check_sandwich(3, M, 1);
}

TEST_CASE("qutrit estimation distances, k = 2") {
  for (int M = 2; M <= 3; ++M) check_sandwich(3, M, 2);
}

}  // namespace
}  // namespace symclone
