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

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "symclone/channels.hpp"
#include "symclone/combinat.hpp"
#include "symclone/linalg.hpp"

namespace symclone {

/// A Hermitian-preserving map between (not necessarily symmetric) spaces,
/// held as its Choi matrix in output (x) input ordering. Differences of
/// channels and channels composed with transposition land here.
struct HermitianMap {
  Eigen::Index in_dim = 0;
  Eigen::Index out_dim = 0;
  Matrix choi;

  HermitianMap() = default;
  /// Throws std::invalid_argument when the Choi is not Hermitian within tol;
  /// the stored matrix is symmetrised.
  HermitianMap(Eigen::Index in, Eigen::Index out, Matrix c,
               double tol = kTolAlg);
};

HermitianMap channel_difference(const SymChannel& a, const SymChannel& b);
HermitianMap as_hermitian_map(const SymChannel& a);

/// Partial transpose on the input factor of a Choi matrix; the Choi of
/// (map ∘ transposition).
Matrix partial_transpose_input(const Matrix& choi, Eigen::Index out_dim,
                               Eigen::Index in_dim);

struct SeesawResult {
  double value = 0.0;
  Vector witness;       // unit vector on ancilla (x) input, ancilla = input
  int iterations = 0;
  bool monotone = true;  // best value never decreased across iterations
};

/// Alternating maximisation of || (I (x) Delta)(|Psi><Psi|) ||_1 over unit
/// witnesses. Starts from the maximally entangled witness plus seeded random
/// restarts; the returned value is a valid diamond-norm lower bound.
SeesawResult seesaw_lower(const HermitianMap& map, int restarts = 8,
                          int iters = 200, std::uint64_t seed = 0);

struct SdpResult {
  double value = 0.0;       // certified upper bound on the diamond norm
  double dual_value = 0.0;  // certified lower bound from a feasible dual point
  double certified_gap = 0.0;  // value - dual_value
  int iterations = 0;
};

/// Certified diamond-norm upper bound via the completely-bounded-trace-norm
/// semidefinite program, solved with a feasible-start primal-dual
/// interior-point method. The returned value comes from an exactly feasible
/// primal point and dual_value from an exactly feasible dual point; throws
/// SolverError when the certified gap cannot be brought below tol, and
/// ResourceLimitError when the Choi side exceeds max_side.
/// rho_hints seeds extra dual candidates (e.g. see-saw witness marginals).
SdpResult sdp_upper(const HermitianMap& map, double tol = 1e-6,
                    const std::vector<Matrix>& rho_hints = {},
                    Eigen::Index max_side = 128);

struct DiamondResult {
  double lower = 0.0;  // see-saw achievable value
  double upper = 0.0;  // SDP certificate
  double gap = 0.0;    // upper - lower
  Vector witness;      // witness achieving lower
  SdpResult sdp;
  SeesawResult seesaw;
};

struct DiamondOptions {
  double tol_sdp = 1e-6;
  int restarts = 8;
  int iters = 200;
  std::uint64_t seed = 0;
  /// Largest Choi side the SDP accepts; the Schur complement of a solve has
  /// (side^2 + 1) rows, so memory grows with the fourth power of the side.
  Eigen::Index sdp_max_side = 128;
};

DiamondResult diamond_norm(const HermitianMap& map,
                           const DiamondOptions& opts = {});
DiamondResult diamond_distance(const SymChannel& a, const SymChannel& b,
                               const DiamondOptions& opts = {});

struct BoundComparisonRow {
  int d = 0;
  int M = 0;
  int k = 0;
  BoundReport bounds;
  std::optional<DiamondResult> computed;  // present when exact mode is on
};

/// Per-M comparison of the computed distance between umeasprep(d, M, k) and
/// trace(d, M, k) against the analytic bounds. In exact mode the certified
/// upper value is checked against the applicable estimation bounds.
std::vector<BoundComparisonRow> bound_comparison_table(
    int d, int M_lo, int M_hi, int k, bool exact,
    const DiamondOptions& opts = {});

}  // namespace symclone
